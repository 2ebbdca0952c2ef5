#pragma once

#include <optional>
#include <string_view>

#include "depthlab/bits.hpp"
#include "depthlab/fst.hpp"

namespace depthlab {

/// A candidate description and, when it lies in the domain of σ, the
/// transducer it denotes.
struct SigmaDescription {
    BitString bits;
    std::optional<FstSpec> decoded;
};

/// Canonical σ-description: double(bin(start)) · 01 · π, where π lists for
/// every (state, bit) a ‡-component naming the target (empty for a
/// self-loop, else dagger(bin(n)) with the least n >= 1 such that
/// 1 + (n mod m) is the one-based target) followed by the emission coded as
/// diamond(string(n')).
SigmaDescription encode_fst(const FstSpec& t);

/// σ. Returns nullopt when `bits` is not a description: bad doubling of the
/// start pointer, missing 01 separator, truncated or odd-length π, start
/// pointer out of range, or a nonempty ‡-component that resolves to a
/// self-loop.
std::optional<FstSpec> decode_fst(std::string_view bits);

/// Length of the canonical description (an upper bound on |T|_σ).
std::size_t fst_size(const FstSpec& t);

}  // namespace depthlab
