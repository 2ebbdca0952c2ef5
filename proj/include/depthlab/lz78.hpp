#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "depthlab/bits.hpp"

namespace depthlab {

/// Phrase i = phrase[pointer] · bit, with pointer < i (phrase 0 is λ).
struct LzToken {
    std::uint64_t pointer = 0;
    char bit = '0';

    bool operator==(const LzToken&) const = default;
};

struct LzParse {
    std::vector<LzToken> tokens;
    /// The last token repeats an earlier phrase (input ended mid-phrase).
    bool duplicate_tail = false;
};

/// Width of token i's pointer: ceil(log2 i) bits, zero for i = 1.
inline unsigned lz_pointer_width(std::uint64_t i) { return ceil_log2(i); }

/// Incremental LZ78 coder (the dictionary trie, phrase count and code length).
/// Feeding bits one at a time yields the same code as encoding at once.
class Lz78State {
public:
    Lz78State();

    /// Consumes bits, appending completed tokens to the code.
    void feed(std::string_view bits);
    /// Parses `bits` into the dictionary without emitting, then abandons any
    /// partial phrase.
    void prime(std::string_view bits);

    /// Complete phrases in the dictionary, λ excluded.
    std::size_t phrase_count() const noexcept { return nodes_.size() - 1; }
    /// Bits emitted for complete tokens so far.
    std::size_t code_length() const noexcept { return code_.size(); }
    /// Length the code would have if the input ended here.
    std::size_t finished_length() const noexcept;
    bool has_pending() const noexcept { return pending_len_ != 0; }
    /// Code of the tokens emitted since construction or the last prime.
    const BitString& code() const noexcept { return code_; }
    /// code() plus the duplicate-tail token for a pending phrase.
    BitString finish() const;

    const std::vector<LzToken>& tokens() const noexcept { return tokens_; }
    /// (parent, last bit) of the partial phrase; meaningful when has_pending().
    LzToken pending_token() const;

private:
    void emit(std::uint64_t pointer, char bit);

    struct Node {
        std::array<std::int64_t, 2> child{-1, -1};
        std::uint64_t parent = 0;
        char bit = '0';
    };
    std::vector<Node> nodes_;
    std::uint64_t pending_ = 0;     // trie node of the partial phrase
    std::size_t pending_len_ = 0;   // its length
    BitString code_;
    bool priming_ = false;
    std::vector<LzToken> tokens_;
};

/// Greedy parse into distinct phrases; a trailing partial phrase becomes a
/// duplicate token.
LzParse lz_parse(std::string_view x);
/// Phrase strings of a parse, in order.
std::vector<BitString> lz_phrases(const LzParse& p);

/// Σ (ceil(log2 i) + 1) bits: each pointer in its fixed width, then the bit.
BitString lz_encode(std::string_view x);
/// Inverse of lz_encode. Throws SpecError naming the bit position on a
/// truncated stream or a pointer to a phrase not yet defined.
BitString lz_decode(std::string_view bits);

struct LzConditional {
    BitString bits;
    std::size_t length = 0;
};

/// LZ78 code of y after the dictionary has parsed x (x's code discarded,
/// x's partial last phrase abandoned).
LzConditional lz_conditional(std::string_view y, std::string_view x);

/// sqrt(2(|y|+1)|y^n|) · log2(d + sqrt(2(|y|+1)|y^n|)).
double repeat_bound(std::size_t len_y, std::size_t n, std::size_t d);

/// "index,pointer,bit,code_bits" rows with the cumulative code length.
std::string lz_parse_csv(std::string_view x);

}  // namespace depthlab
