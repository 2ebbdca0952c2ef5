#include "depthlab/fst.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

#include "text_util.hpp"

namespace depthlab {

FstSpec::FstSpec(StateId start, std::vector<Row> table) : start_(start), table_(std::move(table))
{
    if (table_.empty()) throw SpecError("fst: at least one state required");
    if (start_ >= table_.size()) throw SpecError("fst: start state out of range");
    for (std::size_t q = 0; q < table_.size(); ++q) {
        for (int b = 0; b < 2; ++b) {
            const auto& e = table_[q][b];
            if (e.next >= table_.size())
                throw SpecError("fst: transition (" + std::to_string(q + 1) + ", " +
                                std::to_string(b) + ") targets a missing state");
            require_bits(e.out, "fst emission");
        }
    }
}

FstSpec FstSpec::identity()
{
    return FstSpec(0, {Row{FstEdge{0, "0"}, FstEdge{0, "1"}}});
}

FstSpec FstSpec::silent()
{
    return FstSpec(0, {Row{FstEdge{0, ""}, FstEdge{0, ""}}});
}

FstSpec FstSpec::repeater(const BitString& r)
{
    return FstSpec(0, {Row{FstEdge{0, r}, FstEdge{0, r}}});
}

std::size_t FstSpec::max_emission() const noexcept
{
    std::size_t d = 0;
    for (const auto& row : table_)
        for (const auto& e : row) d = std::max(d, e.out.size());
    return d;
}

FstSpec FstSpec::with_start(StateId q) const
{
    return FstSpec(q, table_);
}

RunResult fst_run_from(const FstSpec& t, StateId q, std::string_view x)
{
    RunResult r{{}, q};
    for (char c : x) {
        const auto& e = t.edge(r.final_state, c == '1');
        r.output += e.out;
        r.final_state = e.next;
    }
    return r;
}

RunResult fst_run(const FstSpec& t, std::string_view x)
{
    return fst_run_from(t, t.start(), x);
}

std::optional<Collision> il_check(const FstSpec& t, std::size_t max_len)
{
    // Breadth-first over inputs; each frontier entry carries its image.
    struct Node {
        BitString input;
        RunResult image;
    };
    std::map<std::pair<BitString, StateId>, BitString> seen;
    std::vector<Node> frontier{{"", {"", t.start()}}};
    seen.emplace(std::make_pair(BitString{}, t.start()), BitString{});
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<Node> next;
        next.reserve(frontier.size() * 2);
        for (const auto& n : frontier) {
            for (int b = 0; b < 2; ++b) {
                const auto& e = t.edge(n.image.final_state, b);
                Node child{n.input + bit_char(b), {n.image.output + e.out, e.next}};
                auto [it, fresh] = seen.emplace(std::make_pair(child.image.output, child.image.final_state),
                                                child.input);
                if (!fresh) return Collision{it->second, child.input};
                next.push_back(std::move(child));
            }
        }
        frontier = std::move(next);
    }
    return std::nullopt;
}

FstSpec fst_compose(const FstSpec& outer, const FstSpec& inner)
{
    using Pair = std::pair<StateId, StateId>;  // (outer state, inner state)
    std::map<Pair, StateId> index;
    std::deque<Pair> queue;
    std::vector<FstSpec::Row> table;

    auto intern = [&](Pair p) {
        auto [it, fresh] = index.emplace(p, static_cast<StateId>(index.size()));
        if (fresh) queue.push_back(p);
        return it->second;
    };
    intern({outer.start(), inner.start()});
    while (!queue.empty()) {
        const Pair p = queue.front();
        queue.pop_front();
        FstSpec::Row row;
        for (int b = 0; b < 2; ++b) {
            const auto& ie = inner.edge(p.second, b);
            auto oe = fst_run_from(outer, p.first, ie.out);
            row[b] = FstEdge{intern({oe.final_state, ie.next}), std::move(oe.output)};
        }
        const auto id = index.at(p);
        if (table.size() <= id) table.resize(id + 1);
        table[id] = std::move(row);
    }
    return FstSpec(0, std::move(table));
}

FstSpec shift_start(const FstSpec& t, std::string_view w)
{
    return t.with_start(fst_run(t, w).final_state);
}

std::optional<BitString> verify_inverse_pair(const FstSpec& t, const FstSpec& tinv,
                                             std::size_t slack, std::size_t max_len)
{
    for (std::size_t len = 0; len <= max_len; ++len) {
        for (const auto& x : all_strings(len)) {
            const auto back = fst_run(tinv, fst_run(t, x).output).output;
            const auto lower = truncate(x, static_cast<std::ptrdiff_t>(len) - static_cast<std::ptrdiff_t>(slack));
            if (!is_prefix(lower, back) || !is_prefix(back, x)) return x;
        }
    }
    return std::nullopt;
}

std::string format_fst(const FstSpec& t)
{
    std::ostringstream os;
    os << "fst " << t.num_states() << ' ' << t.start() + 1 << '\n';
    for (std::size_t q = 0; q < t.num_states(); ++q)
        for (int b = 0; b < 2; ++b) {
            const auto& e = t.edge(static_cast<StateId>(q), b);
            os << q + 1 << ' ' << b << " -> " << e.next + 1 << ' ' << (e.out.empty() ? "-" : e.out) << '\n';
        }
    return os.str();
}

FstSpec parse_fst(std::string_view text)
{
    auto lines = detail::spec_lines(text);
    if (lines.empty()) throw SpecError("fst: empty spec");
    const auto& header = lines.front();
    if (header.tokens.size() != 3 || header.tokens[0] != "fst")
        throw SpecError("fst: line " + std::to_string(header.number) + ": expected header 'fst m start'");
    const auto m = detail::parse_count(header.tokens[1], header.number, "state count");
    const auto start = detail::parse_state(header.tokens[2], m, header.number);
    if (m == 0) throw SpecError("fst: state count must be positive");

    std::vector<FstSpec::Row> table(m);
    std::vector<std::array<bool, 2>> filled(m, {false, false});
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& l = lines[i];
        if (l.tokens.size() != 5 || l.tokens[2] != "->")
            throw SpecError("fst: line " + std::to_string(l.number) + ": expected 'q b -> q' emission'");
        const auto q = detail::parse_state(l.tokens[0], m, l.number);
        if (l.tokens[1] != "0" && l.tokens[1] != "1")
            throw SpecError("fst: line " + std::to_string(l.number) + ": input must be 0 or 1");
        const int b = l.tokens[1] == "1";
        if (filled[q][b])
            throw SpecError("fst: line " + std::to_string(l.number) + ": duplicate entry");
        filled[q][b] = true;
        table[q][b] = FstEdge{detail::parse_state(l.tokens[3], m, l.number),
                              detail::parse_word(l.tokens[4], l.number, "emission")};
    }
    for (std::size_t q = 0; q < m; ++q)
        for (int b = 0; b < 2; ++b)
            if (!filled[q][b])
                throw SpecError("fst: missing entry for state " + std::to_string(q + 1) + " bit " +
                                std::to_string(b));
    return FstSpec(start, std::move(table));
}

}  // namespace depthlab
