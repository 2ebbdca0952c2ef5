#include "depthlab/seqgen.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

#include <json.hpp>

namespace depthlab {

std::uint64_t IntervalPartition::min(std::size_t j) const
{
    std::uint64_t m = 0;
    for (std::size_t i = 1; i < j; ++i) m += lengths.at(i - 1);
    return m;
}

std::uint64_t IntervalPartition::max(std::size_t j) const
{
    return min(j) + lengths.at(j - 1) - 1;
}

IntervalPartition intervals(GrowthMode mode, std::size_t count, std::uint64_t bit_budget, std::uint64_t growth)
{
    if (mode == GrowthMode::scaled && growth < 2) throw std::invalid_argument("intervals: growth must be >= 2");
    IntervalPartition p;
    p.mode = mode;
    p.growth = growth;
    std::uint64_t total = 0;
    std::uint64_t scaled = 1;
    for (std::size_t j = 1; j <= count; ++j) {
        std::optional<std::uint64_t> len;
        std::string size_text;
        if (mode == GrowthMode::doubling) {
            if (j == 1) {
                len = 2;
            } else if (total < 63) {
                len = std::uint64_t{1} << total;
            }
            size_text = j == 1 ? "2" : "2^" + std::to_string(total);
        } else {
            if (scaled <= std::numeric_limits<std::uint64_t>::max() / growth) {
                scaled *= growth;
                len = scaled;
            }
            size_text = std::to_string(growth) + "^" + std::to_string(j);
        }
        if (!len || *len > bit_budget - total) {
            p.truncation = "I_" + std::to_string(j) + " has " + size_text + " bits, beyond the budget of " +
                           std::to_string(bit_budget) + " bits; stopped after " + std::to_string(j - 1) +
                           " intervals";
            break;
        }
        p.lengths.push_back(*len);
        total += *len;
    }
    return p;
}

FsRandom fs_random_string(std::size_t length, std::size_t k, RandomMode mode, std::mt19937_64& rng,
                          std::size_t candidate_budget, std::size_t ceiling)
{
    FsRandom r;
    if (mode == RandomMode::surrogate) {
        r.bits = random_bits(rng, length);
        r.candidates = 1;
        return r;
    }
    const auto universe = enum_fsts(3 * k, ceiling);
    const auto threshold = length > 4 * k ? length - 4 * k : 0;
    for (std::size_t i = 0; i < candidate_budget; ++i) {
        auto bits = random_bits(rng, length);
        const auto d = kfs_over_universe(bits, universe).value;
        if (d >= DescLength(threshold)) {
            r.bits = std::move(bits);
            r.certificate = d;
            r.candidates = i + 1;
            return r;
        }
    }
    throw std::runtime_error("fs_random_string: no candidate of length " + std::to_string(length) +
                             " certified within " + std::to_string(candidate_budget) + " draws");
}

std::size_t devoted_k(std::size_t j)
{
    if (j == 0 || j % 2 == 1) return 0;
    std::size_t k = 0;
    while (j % 2 == 0) {
        j /= 2;
        ++k;
    }
    return k;
}

std::uint64_t power_ceiling(std::uint64_t n, std::uint64_t k)
{
    std::uint64_t t = 1;
    while (t < n) t *= k;
    return t;
}

bool contains_run(std::string_view x, std::size_t k)
{
    std::size_t run = 0;
    for (char c : x) {
        run = c == '1' ? run + 1 : 0;
        if (run >= k) return true;
    }
    return k == 0;
}

BitString sample_flag_free(std::size_t len, std::size_t k, std::mt19937_64& rng, bool& fallback,
                           std::size_t attempts)
{
    fallback = false;
    BitString s;
    for (std::size_t i = 0; i < attempts; ++i) {
        s = random_bits(rng, len);
        if (!contains_run(s, k)) return s;
    }
    fallback = true;
    for (std::size_t i = k - 1; i < len; i += k) s[i] = '0';
    return s;
}

std::vector<BitString> run_free_strings(std::size_t n, std::size_t k)
{
    std::vector<BitString> out;
    for (auto& s : all_strings(n))
        if (!contains_run(s, k)) out.push_back(std::move(s));
    return out;
}

BitString ZoneC::bits() const
{
    BitString out;
    for (const auto& w : x) out += w;
    out.append(flag, '1');
    for (auto it = x.rbegin(); it != x.rend(); ++it) out += reverse_bits(*it);
    return out;
}

BitString StageC::bits() const
{
    BitString out;
    for (const auto& a : palindromes) out += a;
    out.append(flag, '1');
    for (const auto& z : zones) out += z.bits();
    return out;
}

std::size_t recipe_c_flag(std::size_t n, std::size_t k, std::size_t v)
{
    if (n < k) throw std::invalid_argument("recipe_c_flag: n must be >= k");
    return 2 * k + (n - k) * (v + 2);
}

namespace {

/// Rotates the zone and orients its end pairs so that x_1 starts with 0 and
/// x_t ends with 0 (so y_t starts with 0). Returns false if no rotation works.
bool arrange_zone(std::vector<BitString>& xs)
{
    const std::size_t t = xs.size();
    if (t == 0) return true;
    auto starts0 = [](const BitString& w) { return w.front() == '0'; };
    auto ends0 = [](const BitString& w) { return w.back() == '0'; };
    for (std::size_t s = 0; s < t; ++s) {
        std::vector<BitString> rot(xs.begin() + static_cast<std::ptrdiff_t>(s), xs.end());
        rot.insert(rot.end(), xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(s));
        if (t == 1) {
            if (starts0(rot[0]) && ends0(rot[0])) {
                xs = std::move(rot);
                return true;
            }
            continue;
        }
        auto& first = rot.front();
        auto& last = rot.back();
        if (!starts0(first)) {
            if (!ends0(first)) continue;
            first = reverse_bits(first);
        }
        if (!ends0(last)) {
            if (!starts0(last)) continue;
            last = reverse_bits(last);
        }
        xs = std::move(rot);
        return true;
    }
    return false;
}

}  // namespace

StageC recipe_c_stage(std::size_t n, std::size_t k, std::size_t v)
{
    if (k < 4 || v < 1) throw std::invalid_argument("recipe C: needs k >= 4 and v >= 1");
    StageC st;
    st.n = n;
    st.flag = recipe_c_flag(n, k, v);
    std::vector<BitString> pairs;
    for (auto& w : run_free_strings(n, k)) {
        auto r = reverse_bits(w);
        if (r == w)
            st.palindromes.push_back(std::move(w));
        else if (w < r)
            pairs.push_back(std::move(w));
    }
    const std::size_t per = pairs.size() / v;
    std::size_t next = 0;
    for (std::size_t i = 1; i <= v + 1; ++i) {
        const std::size_t take = i <= v ? per : pairs.size() - next;
        ZoneC z;
        z.flag = st.flag + i;
        z.x.assign(pairs.begin() + static_cast<std::ptrdiff_t>(next),
                   pairs.begin() + static_cast<std::ptrdiff_t>(next + take));
        next += take;
        z.edges_ok = arrange_zone(z.x);
        st.zones.push_back(std::move(z));
    }
    return st;
}

std::string recipe_name(RecipeKind k)
{
    switch (k) {
    case RecipeKind::A: return "A";
    case RecipeKind::B: return "B";
    case RecipeKind::C: return "C";
    }
    return "?";
}

std::optional<RecipeKind> parse_recipe(std::string_view s)
{
    if (s == "A" || s == "a") return RecipeKind::A;
    if (s == "B" || s == "b") return RecipeKind::B;
    if (s == "C" || s == "c") return RecipeKind::C;
    return std::nullopt;
}

namespace {

class Builder {
public:
    explicit Builder(Sequence& s) : s_(s) {}

    bool full() const { return s_.recipe.max_bits != 0 && s_.bits.size() >= s_.recipe.max_bits; }

    /// Appends a block, cut at the bit cap. Returns false once the cap is hit.
    bool add(std::size_t stage, std::string kind, std::string_view bits, std::string note = {})
    {
        auto room = s_.recipe.max_bits == 0 ? bits.size()
                                            : std::min<std::uint64_t>(bits.size(), s_.recipe.max_bits - s_.bits.size());
        if (room < bits.size()) note += (note.empty() ? "" : "; ") + std::string("cut from ") + std::to_string(bits.size()) + " bits";
        s_.blocks.push_back({stage, s_.bits.size(), room, std::move(kind), std::move(note)});
        s_.bits.append(bits.substr(0, room));
        return !full();
    }

    /// Room left under the cap (or `want` without a cap).
    std::uint64_t room(std::uint64_t want) const
    {
        return s_.recipe.max_bits == 0 ? want : std::min<std::uint64_t>(want, s_.recipe.max_bits - s_.bits.size());
    }

private:
    Sequence& s_;
};

void generate_a(Sequence& s, std::mt19937_64& rng)
{
    const auto& r = s.recipe;
    if (r.max_bits == 0 && r.stages == 0 && r.growth == GrowthMode::scaled)
        throw std::invalid_argument("recipe A: set a stage cap or a bit cap");
    const std::size_t count = r.stages == 0 ? 64 : r.stages;
    const auto parts = intervals(r.growth, count, std::numeric_limits<std::uint64_t>::max(), r.g);
    Builder b(s);
    std::map<std::size_t, BitString> rk;
    std::size_t j = 1;
    for (; j <= parts.lengths.size() && !b.full(); ++j) {
        const auto len = parts.lengths[j - 1];
        const auto k = devoted_k(j);
        if (k == 0) {
            b.add(j, "random", random_bits(rng, b.room(len)));
            continue;
        }
        auto it = rk.find(k);
        std::string note;
        if (it == rk.end()) {
            // r_k has the length of I_{2^k}, the first interval devoted to k.
            // A cap inside this block means r_k is never repeated, so only
            // the part that fits is drawn.
            const auto rlen = b.room(len);
            const bool certify = 3 * k <= kDefaultEnumCeiling && rlen <= 4096;
            auto fr = fs_random_string(rlen, k, certify ? RandomMode::certified : RandomMode::surrogate, rng);
            note = certify ? "r_" + std::to_string(k) + " certified D^" + std::to_string(3 * k) + " = " +
                                 fr.certificate->str()
                           : "r_" + std::to_string(k) + " uncertified surrogate";
            it = rk.emplace(k, std::move(fr.bits)).first;
        }
        const auto& r_k = it->second;
        const auto reps = len / r_k.size();
        note += (note.empty() ? "" : "; ") + std::string("r_") + std::to_string(k) + "^" + std::to_string(reps);
        BitString block;
        const auto want = b.room(len);
        while (block.size() < want) block += r_k;
        block.resize(want);
        b.add(j, "devoted k=" + std::to_string(k), block, note);
    }
    if (parts.truncation && !b.full()) s.notices.push_back("truncated: " + *parts.truncation);
}

void generate_b(Sequence& s, std::mt19937_64& rng)
{
    const auto& r = s.recipe;
    if (r.k <= 8) throw std::invalid_argument("recipe B: k must exceed 8");
    if (r.stages == 0 && r.max_bits == 0) throw std::invalid_argument("recipe B: set a stage cap or a bit cap");
    Builder b(s);
    for (std::size_t j = 1; (r.stages == 0 || j <= r.stages) && !b.full(); ++j) {
        const auto t = power_ceiling(j, r.k);
        bool fallback = false;
        const auto rj = sample_flag_free(r.k * t, r.k, rng, fallback);
        BitString stage = rj;
        stage.append(r.k, '1');
        stage += reverse_bits(rj);
        b.add(j, "S_j", stage,
              "|R_j| = " + std::to_string(rj.size()) + (fallback ? "; forced-zero fallback" : ""));
    }
}

void generate_c(Sequence& s)
{
    const auto& r = s.recipe;
    if (r.k < 4 || r.v < 1) throw std::invalid_argument("recipe C: needs k >= 4 and v >= 1");
    if (r.stages == 0 && r.max_bits == 0) throw std::invalid_argument("recipe C: set a stage cap or a bit cap");
    Builder b(s);
    for (std::size_t n = 1; (r.stages == 0 || n <= r.stages) && !b.full(); ++n) {
        if (n < r.k) {
            BitString stage;
            for (const auto& w : all_strings(n)) stage += w;
            b.add(n, "all strings", stage);
            continue;
        }
        if (n == r.k) {
            BitString flags;
            for (std::size_t f = r.k; f <= 2 * r.k - 1; ++f) flags.append(f, '1');
            if (!b.add(0, "flags", flags)) break;
        }
        if (n > 24) throw std::invalid_argument("recipe C: stage " + std::to_string(n) + " is beyond desk scale");
        const auto st = recipe_c_stage(n, r.k, r.v);
        std::string note = std::to_string(st.palindromes.size()) + " palindromes, flag " + std::to_string(st.flag);
        for (std::size_t i = 0; i < st.zones.size(); ++i)
            if (!st.zones[i].edges_ok) note += "; zone " + std::to_string(i + 1) + " edge constraint unmet";
        b.add(n, "S_n", st.bits(), note);
    }
}

}  // namespace

Sequence generate(const SequenceRecipe& r)
{
    Sequence s;
    s.recipe = r;
    std::mt19937_64 rng(r.seed);
    switch (r.kind) {
    case RecipeKind::A: generate_a(s, rng); break;
    case RecipeKind::B: generate_b(s, rng); break;
    case RecipeKind::C: generate_c(s); break;
    }
    return s;
}

std::string manifest_json(const Sequence& s)
{
    nlohmann::ordered_json j;
    const auto& r = s.recipe;
    j["recipe"] = recipe_name(r.kind);
    j["k"] = r.k;
    j["v"] = r.v;
    j["seed"] = r.seed;
    j["growth"] = r.growth == GrowthMode::doubling ? "doubling" : "scaled";
    j["g"] = r.g;
    j["stages"] = r.stages;
    j["max_bits"] = r.max_bits;
    j["length"] = s.bits.size();
    j["sha256"] = sha256_hex(s.bits);
    auto& blocks = j["blocks"] = nlohmann::ordered_json::array();
    for (const auto& b : s.blocks) {
        nlohmann::ordered_json e;
        e["stage"] = b.stage;
        e["offset"] = b.offset;
        e["length"] = b.length;
        e["kind"] = b.kind;
        if (!b.note.empty()) e["note"] = b.note;
        blocks.push_back(std::move(e));
    }
    j["notices"] = s.notices;
    return j.dump(2) + "\n";
}

}  // namespace depthlab
