#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace depthlab {

/// A finite binary string, stored as ASCII '0'/'1'. The empty string is λ.
using BitString = std::string;

/// Thrown for malformed specs, descriptions and encoded streams.
class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

bool is_bit_string(std::string_view s) noexcept;

/// Throws SpecError naming `what` unless `s` is over {0,1}.
void require_bits(std::string_view s, std::string_view what);

inline int bit_at(std::string_view s, std::size_t i) { return s[i] == '1' ? 1 : 0; }
inline char bit_char(int b) { return b ? '1' : '0'; }

/// floor(log2 n) for n >= 1.
unsigned floor_log2(std::uint64_t n);
/// ceil(log2 n) for n >= 1; ceil_log2(1) == 0.
unsigned ceil_log2(std::uint64_t n);

/// Standard binary representation, leading bit 1. Rejects n == 0.
BitString nat_bin(std::uint64_t n);
/// nat_bin(n) with its leading 1 removed; |nat_string(n)| == floor(log2 n).
BitString nat_string(std::uint64_t n);
/// Parses a '0'/'1' string as an unsigned integer; nullopt on overflow.
std::optional<std::uint64_t> parse_nat(std::string_view bits);

/// x1 0 x2 0 ... x_l 1. Rejects the empty string.
BitString dagger(std::string_view x);
/// Bitwise complement of dagger(1x).
BitString diamond(std::string_view x);
/// Every bit written twice.
BitString double_bits(std::string_view x);
BitString reverse_bits(std::string_view x);
BitString complement_bits(std::string_view x);

/// x ⊑ y.
bool is_prefix(std::string_view x, std::string_view y) noexcept;
/// x↾n, where a negative n gives λ and n > |x| gives x.
std::string_view truncate(std::string_view x, std::ptrdiff_t n) noexcept;

/// Self-delimiting tuple code: every part but the last is written as
/// 1^{ceil(log n)} 0 bin(n) x with n = |x|; the last part is written raw.
/// Non-final parts must be nonempty.
BitString tuple_encode(const std::vector<BitString>& parts);
/// Inverse of tuple_encode for a known part count; nullopt on malformed input.
std::optional<std::vector<BitString>> tuple_decode(std::string_view bits, std::size_t count);

/// n pseudorandom bits from the generator's raw 64-bit output (portable across
/// standard libraries, unlike the distribution templates).
BitString random_bits(std::mt19937_64& rng, std::size_t n);

/// Every string of length n in lexicographic order.
std::vector<BitString> all_strings(std::size_t n);

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view data);

}  // namespace depthlab
