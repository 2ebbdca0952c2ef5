#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "depthlab/bits.hpp"
#include "depthlab/fs_complexity.hpp"
#include "depthlab/fst.hpp"

namespace depthlab {

// Stack symbols are the characters '0', '1' and 'z' (the bottom marker z0).
// Stack strings are written top first and end in 'z'.
inline constexpr char kBottom = 'z';

enum class StackKind { binary, unary };

/// Input column of a pushdown move: a bit or a λ-move.
enum class PdcInput : int { zero = 0, one = 1, lambda = 2 };

inline PdcInput input_of_bit(int b) { return b ? PdcInput::one : PdcInput::zero; }

struct PdcMove {
    StateId next = 0;
    std::string push;  // replaces the top symbol; empty pops it
    BitString out;

    auto operator<=>(const PdcMove&) const = default;
};

/// Bounded pushdown compressor. The transition map is partial; an absent
/// entry is ⊥. Well-formedness is checked by pdc_validate, not on
/// construction, so that malformed specs can be loaded and reported.
class PdcSpec {
public:
    PdcSpec(std::size_t num_states, StateId start, StackKind kind, std::size_t lambda_budget);

    /// One state that emits its input and leaves the stack alone.
    static PdcSpec identity(StackKind kind = StackKind::binary);
    /// One state that emits nothing.
    static PdcSpec silent(StackKind kind = StackKind::binary);

    void set(StateId q, PdcInput in, char top, PdcMove move);
    void clear(StateId q, PdcInput in, char top);
    const std::optional<PdcMove>& move(StateId q, PdcInput in, char top) const;

    std::size_t num_states() const noexcept { return table_.size(); }
    StateId start() const noexcept { return start_; }
    StackKind kind() const noexcept { return kind_; }
    std::size_t lambda_budget() const noexcept { return lambda_budget_; }
    /// "01z" for binary stacks, "0z" for unary ones.
    std::string_view alphabet() const noexcept { return kind_ == StackKind::binary ? "01z" : "0z"; }

    bool operator==(const PdcSpec&) const = default;

private:
    static std::size_t slot(PdcInput in, char top);

    StateId start_;
    StackKind kind_;
    std::size_t lambda_budget_;
    std::vector<std::array<std::optional<PdcMove>, 9>> table_;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const noexcept { return violations.empty(); }
};

/// Checks ranges, determinism (no (state, top) with both λ- and bit-moves),
/// bottom-marker preservation, empty λ-emissions, the unary alphabet and the
/// λ-budget. The budget check takes the longest λ-path in the graph over
/// (state, top) pairs, where a popping move may expose any symbol; a cycle is
/// an unbounded succession.
ValidationReport pdc_validate(const PdcSpec& c);

/// Longest λ-path of the same graph counted in popping moves only; nullopt if
/// the graph has a cycle.
std::optional<std::size_t> max_lambda_pops(const PdcSpec& c);

/// Raised when a bit move is ⊥ in the current configuration.
class StuckError : public std::runtime_error {
public:
    StuckError(std::size_t position, StateId state, char top);
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

struct PdcRun {
    BitString output;
    StateId final_state = 0;
    std::string final_stack;  // top first, ends in 'z'
};

/// Step-by-step execution with a private stack. Every bit move is followed
/// by the λ-closure; construction applies the initial closure.
class PdcRunner {
public:
    explicit PdcRunner(const PdcSpec& c);
    /// Starts from an arbitrary configuration (stack written top first).
    PdcRunner(const PdcSpec& c, StateId q, std::string_view stack);

    /// Reads one bit and returns its emission, or nullopt when stuck. A stuck
    /// runner must not be stepped again.
    std::optional<std::string_view> step(int bit);

    StateId state() const noexcept { return state_; }
    std::string stack() const;
    /// Number of symbols above z0.
    std::size_t height() const noexcept { return stack_.size() - 1; }
    char top() const noexcept { return stack_.back(); }

private:
    void apply(const PdcMove& m);
    void close();

    const PdcSpec* spec_;
    StateId state_;
    std::string stack_;  // bottom first
};

/// C(x) with final state and stack. Throws StuckError.
PdcRun pdc_run(const PdcSpec& c, std::string_view x);
PdcRun pdc_run_from(const PdcSpec& c, StateId q, std::string_view stack, std::string_view x);

/// Bounded IL check over |x| <= max_len; inputs on which C is stuck are
/// outside its domain and skipped.
std::optional<Collision> pdc_il_check(const PdcSpec& c, std::size_t max_len);

inline constexpr std::size_t kDefaultComposeCeiling = std::size_t{1} << 18;

/// N with N(x) = C(T(x)). Each state of N is (C state, T state, buffer) where
/// the buffer holds up to B = d(1 + P) popped stack symbols (d the longest
/// emission of T, P = max_lambda_pops(C)), enough for one simulated step of C
/// on an emission of T. Only reachable states are built. Unary C gives a
/// unary N. Throws EnumerationLimit past `ceiling` states and SpecError if C
/// does not validate.
PdcSpec compose_pdc_fst(const PdcSpec& c, const FstSpec& t,
                        std::size_t ceiling = kDefaultComposeCeiling);

/// Header "pdc m start binary|unary c", then "q in top -> q' push emission"
/// lines with in in {0,1,-}, top in {0,1,z}, "-" for an empty push or
/// emission. States are one-based.
std::string format_pdc(const PdcSpec& c);
PdcSpec parse_pdc(std::string_view text);

}  // namespace depthlab
