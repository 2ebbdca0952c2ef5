#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "depthlab/bits.hpp"

namespace depthlab {

/// Zero-based state index. Text formats print states one-based.
using StateId = std::uint32_t;

struct FstEdge {
    StateId next = 0;
    BitString out;

    auto operator<=>(const FstEdge&) const = default;
};

/// Deterministic finite-state transducer over {0,1}: states 0..m-1, a start
/// state, and a total table (state, input bit) -> (next state, emission).
class FstSpec {
public:
    using Row = std::array<FstEdge, 2>;

    /// Throws SpecError if the table is empty, a target is out of range or an
    /// emission is not a bit string.
    FstSpec(StateId start, std::vector<Row> table);

    /// One state, emits its input.
    static FstSpec identity();
    /// One state, emits λ on both bits.
    static FstSpec silent();
    /// One state, emits r on every input bit.
    static FstSpec repeater(const BitString& r);

    std::size_t num_states() const noexcept { return table_.size(); }
    StateId start() const noexcept { return start_; }
    const FstEdge& edge(StateId q, int bit) const { return table_[q][bit]; }
    const std::vector<Row>& table() const noexcept { return table_; }
    std::size_t max_emission() const noexcept;

    FstSpec with_start(StateId q) const;

    auto operator<=>(const FstSpec&) const = default;

private:
    StateId start_;
    std::vector<Row> table_;
};

struct RunResult {
    BitString output;
    StateId final_state = 0;

    bool operator==(const RunResult&) const = default;
};

/// (T(x), δ̂(x)).
RunResult fst_run(const FstSpec& t, std::string_view x);
/// Same run started from an arbitrary state.
RunResult fst_run_from(const FstSpec& t, StateId q, std::string_view x);

using Collision = std::pair<BitString, BitString>;

/// Bounded information-losslessness check. Enumerates inputs of length
/// <= max_len in shortlex order and returns the first pair (earlier, later)
/// with the same (output, final state), or nullopt if none collide.
std::optional<Collision> il_check(const FstSpec& t, std::size_t max_len);

/// Machine computing x -> outer(inner(x)); only reachable state pairs are
/// kept, numbered in breadth-first order from the start pair.
FstSpec fst_compose(const FstSpec& outer, const FstSpec& inner);

/// T with its start moved to δ̂(w), so T(wy) = T(w) · shift_start(T, w)(y).
FstSpec shift_start(const FstSpec& t, std::string_view w);

/// Checks x↾(|x|-slack) ⊑ tinv(t(x)) ⊑ x for every |x| <= max_len. Returns
/// the first failing x in shortlex order.
std::optional<BitString> verify_inverse_pair(const FstSpec& t, const FstSpec& tinv,
                                             std::size_t slack, std::size_t max_len);

/// Text form: "fst m start" then one "q b -> q' emission" line per entry
/// (states one-based, "-" for an empty emission), in state then bit order.
std::string format_fst(const FstSpec& t);
/// Parses the text form; entries may appear in any order but must cover the
/// table exactly once. Blank lines and lines starting with '#' are skipped.
FstSpec parse_fst(std::string_view text);

}  // namespace depthlab
