#include "depthlab/fst_codec.hpp"

#include <vector>

namespace depthlab {

namespace {

struct Component {
    BitString target_bin;  // bin(n), empty when the transition is a self-loop
    BitString emission;    // string(n')
};

/// Reads one ‡-coded word starting at `pos`: pairs (x, 0) continue, (x, 1)
/// ends. With `complemented` the roles are swapped, as in a ⋄-component.
std::optional<BitString> read_daggered(std::string_view bits, std::size_t& pos, bool complemented)
{
    const char more = complemented ? '1' : '0';
    BitString word;
    for (;;) {
        if (pos + 1 >= bits.size()) return std::nullopt;
        const char x = bits[pos];
        const char s = bits[pos + 1];
        pos += 2;
        word.push_back(complemented ? (x == '0' ? '1' : '0') : x);
        if (s != more) return word;
    }
}

}  // namespace

SigmaDescription encode_fst(const FstSpec& t)
{
    const auto m = static_cast<std::uint64_t>(t.num_states());
    BitString out = double_bits(nat_bin(t.start() + 1));
    out += "01";
    for (StateId q = 0; q < t.num_states(); ++q) {
        for (int b = 0; b < 2; ++b) {
            const auto& e = t.edge(q, b);
            if (e.next != q) {
                // least n >= 1 with n mod m == target (zero-based)
                const std::uint64_t n = e.next == 0 ? m : e.next;
                out += dagger(nat_bin(n));
            }
            out += diamond(e.out);
        }
    }
    return {out, t};
}

std::optional<FstSpec> decode_fst(std::string_view bits)
{
    if (!is_bit_string(bits)) return std::nullopt;

    // d(bin(i)) 01
    std::size_t pos = 0;
    BitString start_bin;
    for (;;) {
        if (pos + 1 >= bits.size()) return std::nullopt;
        const char a = bits[pos], b = bits[pos + 1];
        pos += 2;
        if (a == b) {
            start_bin.push_back(a);
        } else if (a == '0') {
            break;  // separator "01"
        } else {
            return std::nullopt;  // "10" is neither a doubled bit nor the separator
        }
    }
    if (start_bin.empty() || start_bin[0] != '1') return std::nullopt;

    // π: ‡-components start with 1 (bin begins with 1), ⋄-components with 0.
    std::vector<Component> comps;
    while (pos < bits.size()) {
        Component c;
        if (bits[pos] == '1') {
            auto n = read_daggered(bits, pos, false);
            if (!n) return std::nullopt;
            c.target_bin = std::move(*n);
        }
        if (pos >= bits.size() || bits[pos] != '0') return std::nullopt;
        auto e = read_daggered(bits, pos, true);
        if (!e) return std::nullopt;
        c.emission = e->substr(1);  // drop the leading 1 of bin(n')
        comps.push_back(std::move(c));
    }
    if (comps.empty() || comps.size() % 2 != 0) return std::nullopt;

    const std::uint64_t m = comps.size() / 2;
    const auto start = parse_nat(start_bin);
    if (!start || *start < 1 || *start > m) return std::nullopt;

    std::vector<FstSpec::Row> table(m);
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const auto q = static_cast<StateId>(i / 2);
        StateId target = q;
        if (!comps[i].target_bin.empty()) {
            std::uint64_t r = 0;
            for (char c : comps[i].target_bin) r = (2 * r + (c == '1')) % m;
            target = static_cast<StateId>(r);
            if (target == q) return std::nullopt;  // self-loops must use the empty ‡
        }
        table[q][i % 2] = FstEdge{target, std::move(comps[i].emission)};
    }
    return FstSpec(static_cast<StateId>(*start - 1), std::move(table));
}

std::size_t fst_size(const FstSpec& t)
{
    return encode_fst(t).bits.size();
}

}  // namespace depthlab
