#include "depthlab/fs_complexity.hpp"

#include <deque>
#include <set>

#include "depthlab/fst_codec.hpp"

namespace depthlab {

FstUniverse enum_fsts(std::size_t k, std::size_t ceiling)
{
    if (k > ceiling)
        throw EnumerationLimit("enum_fsts: k = " + std::to_string(k) + " exceeds the ceiling of " +
                               std::to_string(ceiling) + " bits (" + std::to_string((1ull << (k + 1)) - 1) +
                               " candidate descriptions)");
    FstUniverse u;
    u.k = k;
    std::set<FstSpec> seen;
    for (std::size_t len = 0; len <= k; ++len) {
        for (const auto& w : all_strings(len)) {
            auto t = decode_fst(w);
            if (!t || !seen.insert(*t).second) continue;
            u.machines.push_back(std::move(*t));
            u.descriptions.push_back(w);
        }
    }
    return u;
}

std::optional<BitString> shortest_input(const FstSpec& t, std::string_view x)
{
    const std::size_t width = x.size() + 1;
    auto node = [width](StateId q, std::size_t j) { return static_cast<std::size_t>(q) * width + j; };
    constexpr std::size_t none = static_cast<std::size_t>(-1);

    std::vector<std::size_t> parent(t.num_states() * width, none);
    std::vector<char> via(parent.size(), 0);
    std::vector<bool> seen(parent.size(), false);
    std::deque<std::size_t> queue;

    const auto root = node(t.start(), 0);
    seen[root] = true;
    queue.push_back(root);
    std::size_t goal = none;
    if (x.empty()) goal = root;
    // Visiting 0 before 1 from a FIFO queue makes the first path found to
    // each node the lexicographically least among the shortest.
    while (goal == none && !queue.empty()) {
        const auto cur = queue.front();
        queue.pop_front();
        const auto q = static_cast<StateId>(cur / width);
        const auto j = cur % width;
        for (int b = 0; b < 2 && goal == none; ++b) {
            const auto& e = t.edge(q, b);
            if (j + e.out.size() > x.size() || x.compare(j, e.out.size(), e.out) != 0) continue;
            const auto nxt = node(e.next, j + e.out.size());
            if (seen[nxt]) continue;
            seen[nxt] = true;
            parent[nxt] = cur;
            via[nxt] = bit_char(b);
            if (j + e.out.size() == x.size()) goal = nxt;
            queue.push_back(nxt);
        }
    }
    if (goal == none) return std::nullopt;
    BitString y;
    for (auto cur = goal; cur != root; cur = parent[cur]) y.push_back(via[cur]);
    return BitString(y.rbegin(), y.rend());
}

namespace {

template <typename DescribeFn>
ComplexityResult minimize(std::string_view x, const std::vector<FstSpec>& machines, DescribeFn describe)
{
    ComplexityResult best;
    for (std::size_t i = 0; i < machines.size(); ++i) {
        auto y = shortest_input(machines[i], x);
        if (!y) continue;
        const DescLength len(y->size());
        if (len < best.value) {
            best.value = len;
            best.witness = ComplexityWitness{describe(i), std::move(*y), i};
        }
    }
    return best;
}

}  // namespace

ComplexityResult kfs_over_universe(std::string_view x, const FstUniverse& universe)
{
    return minimize(x, universe.machines, [&](std::size_t i) { return universe.descriptions[i]; });
}

ComplexityResult kfs_complexity(std::string_view x, std::size_t k, std::size_t ceiling)
{
    return kfs_over_universe(x, enum_fsts(k, ceiling));
}

ComplexityResult kfs_over_set(std::string_view x, const std::vector<FstSpec>& machines)
{
    if (machines.empty()) throw std::invalid_argument("kfs_over_set: empty machine list");
    return minimize(x, machines, [&](std::size_t i) { return encode_fst(machines[i]).bits; });
}

BitString pad_blocks(std::string_view p, std::size_t block)
{
    if (block == 0) throw std::invalid_argument("pad_blocks: block size must be positive");
    const std::size_t full = p.size() / block;
    BitString out;
    out.reserve(p.size() + full + 2 * block + 1);
    for (std::size_t i = 0; i < full; ++i) {
        out.push_back('0');
        out.append(p.substr(i * block, block));
    }
    out.push_back('1');
    out += double_bits(p.substr(full * block));
    return out;
}

BitString unpad_blocks(std::string_view padded, std::size_t block)
{
    if (block == 0) throw std::invalid_argument("unpad_blocks: block size must be positive");
    BitString out;
    std::size_t pos = 0;
    while (pos < padded.size() && padded[pos] == '0') {
        if (pos + 1 + block > padded.size()) throw SpecError("unpad_blocks: truncated block at bit " + std::to_string(pos));
        out.append(padded.substr(pos + 1, block));
        pos += 1 + block;
    }
    if (pos >= padded.size()) throw SpecError("unpad_blocks: missing 1 marker");
    ++pos;
    const auto tail = padded.substr(pos);
    if (tail.size() % 2 != 0 || tail.size() / 2 >= block)
        throw SpecError("unpad_blocks: tail of " + std::to_string(tail.size()) + " bits is not r < b doubled bits");
    for (std::size_t i = 0; i < tail.size(); i += 2) {
        if (tail[i] != tail[i + 1]) throw SpecError("unpad_blocks: bad doubling at bit " + std::to_string(pos + i));
        out.push_back(tail[i]);
    }
    return out;
}

FstSpec padded_concat_machine(const FstSpec& a, const FstSpec& b, std::size_t block)
{
    if (block == 0) throw std::invalid_argument("padded_concat_machine: block size must be positive");
    const auto na = static_cast<StateId>(a.num_states());
    const auto nb = static_cast<StateId>(b.num_states());
    const auto bl = static_cast<StateId>(block);
    // Layout: marker(a) | read(a, r) r = 1..b | tail_first(a) | tail_held(a, x) | b's states | sink
    auto marker = [&](StateId q) { return q; };
    auto read = [&](StateId q, StateId r) { return na + q * bl + (r - 1); };
    auto tail_first = [&](StateId q) { return na + na * bl + q; };
    auto tail_held = [&](StateId q, int x) { return 2 * na + na * bl + 2 * q + static_cast<StateId>(x); };
    const StateId b_base = 4 * na + na * bl;
    const StateId sink = b_base + nb;

    std::vector<FstSpec::Row> table(sink + 1);
    for (StateId q = 0; q < na; ++q) {
        table[marker(q)] = {FstEdge{read(q, bl), ""}, FstEdge{tail_first(q), ""}};
        for (StateId r = 1; r <= bl; ++r)
            for (int x = 0; x < 2; ++x) {
                const auto& e = a.edge(q, x);
                table[read(q, r)][x] = FstEdge{r == 1 ? marker(e.next) : read(e.next, r - 1), e.out};
            }
        table[tail_first(q)] = {FstEdge{tail_held(q, 0), ""}, FstEdge{tail_held(q, 1), ""}};
        for (int x = 0; x < 2; ++x) {
            const auto& e = a.edge(q, x);
            const FstEdge confirmed{tail_first(e.next), e.out};
            if (x == 0)
                table[tail_held(q, 0)] = {confirmed, FstEdge{sink, ""}};
            else
                table[tail_held(q, 1)] = {FstEdge{b_base + b.start(), ""}, confirmed};
        }
    }
    for (StateId q = 0; q < nb; ++q)
        for (int x = 0; x < 2; ++x) {
            const auto& e = b.edge(q, x);
            table[b_base + q][x] = FstEdge{b_base + e.next, e.out};
        }
    table[sink] = {FstEdge{sink, ""}, FstEdge{sink, ""}};
    return FstSpec(marker(a.start()), std::move(table));
}

}  // namespace depthlab
