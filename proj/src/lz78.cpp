#include "depthlab/lz78.hpp"

#include <cmath>
#include <sstream>

namespace depthlab {

Lz78State::Lz78State() : nodes_(1) {}

void Lz78State::emit(std::uint64_t pointer, char bit)
{
    const std::uint64_t i = nodes_.size();  // index of the phrase being completed
    tokens_.push_back({pointer, bit});
    if (priming_) return;
    const unsigned w = lz_pointer_width(i);
    for (unsigned s = w; s-- > 0;) code_.push_back(((pointer >> s) & 1) ? '1' : '0');
    code_.push_back(bit);
}

void Lz78State::feed(std::string_view bits)
{
    for (char c : bits) {
        const int b = c == '1';
        const auto next = nodes_[pending_].child[b];
        if (next >= 0) {
            pending_ = static_cast<std::uint64_t>(next);
            ++pending_len_;
            continue;
        }
        emit(pending_, c);
        nodes_[pending_].child[b] = static_cast<std::int64_t>(nodes_.size());
        nodes_.push_back(Node{{-1, -1}, pending_, c});
        pending_ = 0;
        pending_len_ = 0;
    }
}

void Lz78State::prime(std::string_view bits)
{
    priming_ = true;
    feed(bits);
    priming_ = false;
    pending_ = 0;
    pending_len_ = 0;
    tokens_.clear();
}

std::size_t Lz78State::finished_length() const noexcept
{
    if (!has_pending()) return code_.size();
    return code_.size() + lz_pointer_width(nodes_.size()) + 1;
}

LzToken Lz78State::pending_token() const
{
    const auto& n = nodes_.at(pending_);
    return {n.parent, n.bit};
}

BitString Lz78State::finish() const
{
    BitString out = code_;
    if (!has_pending()) return out;
    const auto t = pending_token();
    const unsigned w = lz_pointer_width(nodes_.size());
    for (unsigned s = w; s-- > 0;) out.push_back(((t.pointer >> s) & 1) ? '1' : '0');
    out.push_back(t.bit);
    return out;
}

LzParse lz_parse(std::string_view x)
{
    Lz78State st;
    st.feed(x);
    LzParse p;
    p.tokens = st.tokens();
    if (st.has_pending()) {
        p.tokens.push_back(st.pending_token());
        p.duplicate_tail = true;
    }
    return p;
}

std::vector<BitString> lz_phrases(const LzParse& p)
{
    std::vector<BitString> phrases{""};
    for (const auto& t : p.tokens) phrases.push_back(phrases.at(t.pointer) + t.bit);
    phrases.erase(phrases.begin());
    return phrases;
}

BitString lz_encode(std::string_view x)
{
    Lz78State st;
    st.feed(x);
    return st.finish();
}

BitString lz_decode(std::string_view bits)
{
    require_bits(bits, "lz78 code");
    std::vector<std::pair<std::uint64_t, char>> dict{{0, '0'}};  // (parent, bit); entry 0 is λ
    BitString out;
    std::size_t pos = 0;
    BitString phrase;
    for (std::uint64_t i = 1; pos < bits.size(); ++i) {
        const unsigned w = lz_pointer_width(i);
        if (pos + w + 1 > bits.size())
            throw SpecError("lz_decode: truncated token " + std::to_string(i) + " at bit " + std::to_string(pos));
        std::uint64_t ptr = 0;
        for (unsigned s = 0; s < w; ++s) ptr = 2 * ptr + (bits[pos + s] == '1');
        if (ptr >= i)
            throw SpecError("lz_decode: token " + std::to_string(i) + " at bit " + std::to_string(pos) +
                            " points to undefined phrase " + std::to_string(ptr));
        const char b = bits[pos + w];
        pos += w + 1;
        phrase.clear();
        for (auto p = ptr; p != 0; p = dict[p].first) phrase.push_back(dict[p].second);
        out.append(phrase.rbegin(), phrase.rend());
        out.push_back(b);
        dict.emplace_back(ptr, b);
    }
    return out;
}

LzConditional lz_conditional(std::string_view y, std::string_view x)
{
    Lz78State st;
    st.prime(x);
    st.feed(y);
    LzConditional r{st.finish(), 0};
    r.length = r.bits.size();
    return r;
}

double repeat_bound(std::size_t len_y, std::size_t n, std::size_t d)
{
    const double s = std::sqrt(2.0 * static_cast<double>(len_y + 1) * static_cast<double>(len_y * n));
    return s * std::log2(static_cast<double>(d) + s);
}

std::string lz_parse_csv(std::string_view x)
{
    const auto p = lz_parse(x);
    std::ostringstream os;
    os << "index,pointer,bit,code_bits\n";
    std::size_t total = 0;
    for (std::size_t i = 1; i <= p.tokens.size(); ++i) {
        total += lz_pointer_width(i) + 1;
        os << i << ',' << p.tokens[i - 1].pointer << ',' << p.tokens[i - 1].bit << ',' << total << '\n';
    }
    return os.str();
}

}  // namespace depthlab
