#include "depthlab/bits.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <bit>

namespace depthlab {

bool is_bit_string(std::string_view s) noexcept
{
    return std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

void require_bits(std::string_view s, std::string_view what)
{
    if (!is_bit_string(s))
        throw SpecError(std::string(what) + ": expected a string over {0,1}");
}

unsigned floor_log2(std::uint64_t n)
{
    if (n == 0) throw std::invalid_argument("floor_log2(0)");
    return 63u - static_cast<unsigned>(std::countl_zero(n));
}

unsigned ceil_log2(std::uint64_t n)
{
    if (n == 0) throw std::invalid_argument("ceil_log2(0)");
    return n == 1 ? 0u : floor_log2(n - 1) + 1u;
}

BitString nat_bin(std::uint64_t n)
{
    if (n == 0) throw std::invalid_argument("nat_bin: n must be positive");
    BitString out;
    for (int i = static_cast<int>(floor_log2(n)); i >= 0; --i)
        out.push_back(bit_char(static_cast<int>((n >> i) & 1u)));
    return out;
}

BitString nat_string(std::uint64_t n)
{
    return nat_bin(n).substr(1);
}

std::optional<std::uint64_t> parse_nat(std::string_view bits)
{
    std::uint64_t v = 0;
    for (char c : bits) {
        if (v >> 63) return std::nullopt;
        v = (v << 1) | (c == '1' ? 1u : 0u);
    }
    return v;
}

BitString dagger(std::string_view x)
{
    if (x.empty()) throw std::invalid_argument("dagger: empty string");
    BitString out;
    out.reserve(2 * x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out.push_back(x[i]);
        out.push_back(i + 1 == x.size() ? '1' : '0');
    }
    return out;
}

BitString diamond(std::string_view x)
{
    BitString one_x = "1";
    one_x.append(x);
    return complement_bits(dagger(one_x));
}

BitString double_bits(std::string_view x)
{
    BitString out;
    out.reserve(2 * x.size());
    for (char c : x) {
        out.push_back(c);
        out.push_back(c);
    }
    return out;
}

BitString reverse_bits(std::string_view x)
{
    return BitString(x.rbegin(), x.rend());
}

BitString complement_bits(std::string_view x)
{
    BitString out(x);
    for (char& c : out) c = (c == '0') ? '1' : '0';
    return out;
}

bool is_prefix(std::string_view x, std::string_view y) noexcept
{
    return x.size() <= y.size() && y.substr(0, x.size()) == x;
}

std::string_view truncate(std::string_view x, std::ptrdiff_t n) noexcept
{
    if (n <= 0) return {};
    return x.substr(0, std::min<std::size_t>(static_cast<std::size_t>(n), x.size()));
}

BitString tuple_encode(const std::vector<BitString>& parts)
{
    if (parts.empty()) throw std::invalid_argument("tuple_encode: no parts");
    BitString out;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        const auto n = parts[i].size();
        if (n == 0) throw std::invalid_argument("tuple_encode: empty non-final part");
        out.append(ceil_log2(n), '1');
        out.push_back('0');
        out += nat_bin(n);
        out += parts[i];
    }
    out += parts.back();
    return out;
}

std::optional<std::vector<BitString>> tuple_decode(std::string_view bits, std::size_t count)
{
    if (count == 0) return std::nullopt;
    std::vector<BitString> parts;
    std::size_t pos = 0;
    for (std::size_t i = 0; i + 1 < count; ++i) {
        unsigned ones = 0;
        while (pos < bits.size() && bits[pos] == '1') {
            ++ones;
            ++pos;
        }
        if (pos >= bits.size() || ones > 62) return std::nullopt;
        ++pos;  // the 0 terminator
        // bin(n) has ceil(log n) bits unless n is a power of two, in which
        // case it is 1 0^{ceil(log n)}.
        std::uint64_t n = 0;
        if (ones == 0) {
            if (pos >= bits.size() || bits[pos] != '1') return std::nullopt;
            n = 1;
            pos += 1;
        } else {
            if (pos + ones > bits.size()) return std::nullopt;
            auto head = bits.substr(pos, ones);
            if (head[0] != '1') return std::nullopt;
            pos += ones;
            n = *parse_nat(head);
            if (n == (std::uint64_t{1} << (ones - 1))) {
                if (pos >= bits.size() || bits[pos] != '0') return std::nullopt;
                ++pos;
                n <<= 1;
            }
        }
        if (pos + n > bits.size()) return std::nullopt;
        parts.emplace_back(bits.substr(pos, n));
        pos += n;
    }
    parts.emplace_back(bits.substr(pos));
    return parts;
}

BitString random_bits(std::mt19937_64& rng, std::size_t n)
{
    BitString out;
    out.reserve(n);
    while (out.size() < n) {
        std::uint64_t word = rng();
        for (int i = 0; i < 64 && out.size() < n; ++i) {
            out.push_back(bit_char(static_cast<int>(word & 1u)));
            word >>= 1;
        }
    }
    return out;
}

std::vector<BitString> all_strings(std::size_t n)
{
    if (n >= 31) throw std::length_error("all_strings: length too large");
    std::vector<BitString> out;
    out.reserve(std::size_t{1} << n);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
        BitString s(n, '0');
        for (std::size_t i = 0; i < n; ++i)
            if ((v >> (n - 1 - i)) & 1u) s[i] = '1';
        out.push_back(std::move(s));
    }
    return out;
}

std::string sha256_hex(std::string_view data)
{
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

}  // namespace depthlab
