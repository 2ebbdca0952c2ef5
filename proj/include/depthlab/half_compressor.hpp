#pragma once

#include <cstddef>

#include "depthlab/pdc.hpp"

namespace depthlab {

/// State numbering of the half compressor, for tests and decoders.
struct HalfCompressorLayout {
    std::size_t k = 0, v = 0, m = 0;

    StateId count(std::size_t i) const { return static_cast<StateId>(i); }  // s_0..s_m
    StateId q0() const { return static_cast<StateId>(m + 1); }
    StateId flag1(std::size_t i) const { return static_cast<StateId>(m + 1 + i); }      // f1_1..f1_k
    StateId flag0(std::size_t i) const { return static_cast<StateId>(m + 1 + k + i); }  // f0_1..f0_k
    StateId pop(std::size_t i) const { return static_cast<StateId>(m + 2 + 2 * k + i); }  // F_0..F_k
    StateId check(std::size_t i) const { return static_cast<StateId>(m + 2 + 3 * k + i); }  // c_1..c_{v+1}
    StateId error() const { return static_cast<StateId>(m + 3 * k + v + 4); }
    std::size_t num_states() const { return m + 3 * k + v + 5; }
    /// 1-based index i when q is a check state c_i, else 0.
    std::size_t check_index(StateId q) const
    {
        return q >= check(1) && q <= check(v + 1) ? q - check(1) + 1 : 0;
    }
};

/// True when v = k^a for some a >= 1.
bool is_power_of(std::size_t v, std::size_t k);

/// The ILPDC C′ on inputs R 1^k R⁻¹ ...: copies m bits, pushes and copies
/// input while looking for a k-aligned 1^k flag, pops the flag, then matches
/// the input against the stack and emits one 0 per v matched bits. A mismatch
/// at c_i emits 1^{3m+i} 0 b and the machine copies input from then on.
/// Requires k > 8, v a power of k, m >= 0; throws std::invalid_argument.
PdcSpec build_half_compressor(std::size_t k, std::size_t v, std::size_t m);

}  // namespace depthlab
