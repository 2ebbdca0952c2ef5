#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "depthlab/bits.hpp"
#include "depthlab/fs_complexity.hpp"

namespace depthlab {

enum class GrowthMode { doubling, scaled };

/// Consecutive intervals I_1, I_2, ... of the naturals. Doubling mode:
/// |I_1| = 2, |I_j| = 2^{|I_1| + ... + |I_{j-1}|}. Scaled mode: |I_j| = g^j.
struct IntervalPartition {
    GrowthMode mode = GrowthMode::scaled;
    std::uint64_t growth = 4;
    std::vector<std::uint64_t> lengths;
    /// Set when the next interval was dropped for exceeding the budget.
    std::optional<std::string> truncation;

    std::uint64_t min(std::size_t j) const;  // m_j, j one-based
    std::uint64_t max(std::size_t j) const;  // M_j
};

/// Up to `count` intervals whose total stays within `bit_budget`.
IntervalPartition intervals(GrowthMode mode, std::size_t count, std::uint64_t bit_budget,
                            std::uint64_t growth = 4);

enum class RandomMode { certified, surrogate };

struct FsRandom {
    BitString bits;
    /// D^{3k}(bits) in certified mode; nullopt means uncertified.
    std::optional<DescLength> certificate;
    std::size_t candidates = 0;
};

/// Certified mode draws seeded candidates until one has
/// D^{3k}(r) >= length - 4k; surrogate mode returns the first draw. Throws
/// EnumerationLimit if 3k exceeds the ceiling, std::runtime_error when the
/// candidate budget runs out.
FsRandom fs_random_string(std::size_t length, std::size_t k, RandomMode mode, std::mt19937_64& rng,
                          std::size_t candidate_budget = 256, std::size_t ceiling = kDefaultEnumCeiling);

/// k with j = 2^k (2t + 1), or 0 for odd j.
std::size_t devoted_k(std::size_t j);

/// Smallest power of k that is >= n.
std::uint64_t power_ceiling(std::uint64_t n, std::uint64_t k);

bool contains_run(std::string_view x, std::size_t k);

/// Uniform string of length `len` without 1^k, by rejection; after
/// `attempts` rejections the last draw gets a 0 forced at every position
/// congruent to k-1 mod k and `fallback` is set.
BitString sample_flag_free(std::size_t len, std::size_t k, std::mt19937_64& rng, bool& fallback,
                           std::size_t attempts = 1000);

/// T_n: strings of length n without 1^k, in lexicographic order.
std::vector<BitString> run_free_strings(std::size_t n, std::size_t k);

struct ZoneC {
    std::vector<BitString> x;  // y_j = reverse(x_j)
    std::size_t flag = 0;
    /// x_1 and reverse(x_t) start with 0 (vacuous for an empty zone).
    bool edges_ok = true;
    BitString bits() const;
};

struct StageC {
    std::size_t n = 0;
    std::vector<BitString> palindromes;
    std::size_t flag = 0;  // f(n)
    std::vector<ZoneC> zones;  // v + 1 zones
    BitString bits() const;
};

/// f(k) = 2k, f(n+1) = f(n) + v + 2.
std::size_t recipe_c_flag(std::size_t n, std::size_t k, std::size_t v);
/// S_n for n >= k: palindromes of T_n, the f(n) flag, then zones 1..v+1.
StageC recipe_c_stage(std::size_t n, std::size_t k, std::size_t v);

enum class RecipeKind { A, B, C };

struct SequenceRecipe {
    RecipeKind kind = RecipeKind::B;
    std::size_t k = 9;
    std::size_t v = 9;
    std::uint64_t seed = 0;
    GrowthMode growth = GrowthMode::scaled;
    std::uint64_t g = 4;
    /// Stage cap (0: no cap). Recipe C counts stages as n = 1, 2, ...
    std::size_t stages = 0;
    /// Output cap in bits (0: no cap); the last block is cut to fit.
    std::uint64_t max_bits = 0;
};

struct Block {
    std::size_t stage = 0;
    std::uint64_t offset = 0;
    std::uint64_t length = 0;
    std::string kind;
    std::string note;
};

struct Sequence {
    SequenceRecipe recipe;
    BitString bits;
    std::vector<Block> blocks;
    std::vector<std::string> notices;
};

/// Throws std::invalid_argument on bad parameters or when neither cap is set
/// for an unbounded recipe.
Sequence generate(const SequenceRecipe& r);

std::string recipe_name(RecipeKind k);
std::optional<RecipeKind> parse_recipe(std::string_view s);

/// JSON manifest: recipe fields, length, SHA-256 of the bit file, block log
/// and notices.
std::string manifest_json(const Sequence& s);

}  // namespace depthlab
