#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "depthlab/bits.hpp"
#include "depthlab/fst.hpp"

namespace depthlab {

/// A description length that may be infinite (no machine produces the target).
class DescLength {
public:
    constexpr DescLength() = default;  // infinite
    constexpr explicit DescLength(std::size_t v) : value_(v) {}
    static constexpr DescLength infinite() { return {}; }

    constexpr bool finite() const noexcept { return value_.has_value(); }
    /// Throws std::bad_optional_access when infinite.
    constexpr std::size_t value() const { return value_.value(); }
    std::string str() const { return finite() ? std::to_string(*value_) : "inf"; }

    /// Every finite length is below infinity.
    constexpr std::strong_ordering operator<=>(const DescLength& o) const noexcept
    {
        if (finite() && o.finite()) return *value_ <=> *o.value_;
        return o.finite() <=> finite();
    }
    constexpr bool operator==(const DescLength&) const noexcept = default;

private:
    std::optional<std::size_t> value_;
};

/// Raised when an enumeration would exceed the configured ceiling.
class EnumerationLimit : public std::length_error {
public:
    using std::length_error::length_error;
};

inline constexpr std::size_t kDefaultEnumCeiling = 14;

/// FST^{<=k}: every distinct machine with a σ-description of at most k bits,
/// ordered by its least description (shorter first, then lexicographic).
struct FstUniverse {
    std::size_t k = 0;
    std::vector<FstSpec> machines;
    std::vector<BitString> descriptions;  // least description of machines[i]
};

FstUniverse enum_fsts(std::size_t k, std::size_t ceiling = kDefaultEnumCeiling);

struct ComplexityWitness {
    BitString description;
    BitString input;
    std::size_t machine_index = 0;
};

struct ComplexityResult {
    DescLength value;
    std::optional<ComplexityWitness> witness;
};

/// Shortest y with t(y) = x, lexicographically least among the shortest;
/// nullopt if none. Breadth-first search over (state, matched prefix length).
std::optional<BitString> shortest_input(const FstSpec& t, std::string_view x);

/// D^k(x) over enum_fsts(k). Ties go to the machine with the least
/// description, then to the lexicographically least input.
ComplexityResult kfs_complexity(std::string_view x, std::size_t k,
                                std::size_t ceiling = kDefaultEnumCeiling);
ComplexityResult kfs_over_universe(std::string_view x, const FstUniverse& universe);
/// Same minimum restricted to an explicit machine list; ties go to the
/// earliest machine. The witness description is the canonical encoding.
ComplexityResult kfs_over_set(std::string_view x, const std::vector<FstSpec>& machines);

/// Block padding: 0·(b bits) for each full block, then 1, then the r < b
/// leftover bits doubled.
BitString pad_blocks(std::string_view p, std::size_t block);
/// Inverse of pad_blocks; throws SpecError on malformed input.
BitString unpad_blocks(std::string_view padded, std::size_t block);

/// Machine that on input pad_blocks(p, block) · 10 · q outputs a(p) · b(q):
/// it runs `a` through the padded blocks, holds each doubled tail bit until
/// its twin confirms it, and hands over to `b` after the 10 separator.
FstSpec padded_concat_machine(const FstSpec& a, const FstSpec& b, std::size_t block);

}  // namespace depthlab
