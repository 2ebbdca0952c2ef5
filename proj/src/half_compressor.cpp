#include "depthlab/half_compressor.hpp"

#include <stdexcept>
#include <string>

namespace depthlab {

bool is_power_of(std::size_t v, std::size_t k)
{
    if (k < 2 || v < k) return false;
    while (v % k == 0) v /= k;
    return v == 1;
}

PdcSpec build_half_compressor(std::size_t k, std::size_t v, std::size_t m)
{
    if (k <= 8) throw std::invalid_argument("half compressor: k must exceed 8 (got " + std::to_string(k) + ")");
    if (!is_power_of(v, k))
        throw std::invalid_argument("half compressor: v = " + std::to_string(v) + " is not a power of k = " +
                                    std::to_string(k));
    const HalfCompressorLayout L{k, v, m};
    // Longest λ-chain: f1_k -> F_0 -> ... -> F_k -> c_1.
    PdcSpec c(L.num_states(), L.count(0), StackKind::binary, k + 2);
    const std::string tops = "01z";
    auto bit = [](int b) { return BitString(1, bit_char(b)); };
    auto keep = [](char top) { return std::string(1, top); };
    auto push = [&](int b, char top) { return bit(b) + top; };

    for (char y : tops) {
        for (std::size_t i = 0; i < m; ++i)
            for (int x = 0; x < 2; ++x) c.set(L.count(i), input_of_bit(x), y, {L.count(i + 1), keep(y), bit(x)});
        c.set(L.count(m), PdcInput::lambda, y, {L.q0(), keep(y), ""});

        for (int x = 0; x < 2; ++x)
            c.set(L.q0(), input_of_bit(x), y, {x ? L.flag1(1) : L.flag0(1), push(x, y), bit(x)});
        for (std::size_t i = 1; i < k; ++i)
            for (int x = 0; x < 2; ++x) {
                c.set(L.flag0(i), input_of_bit(x), y, {L.flag0(i + 1), push(x, y), bit(x)});
                c.set(L.flag1(i), input_of_bit(x), y, {x ? L.flag1(i + 1) : L.flag0(i + 1), push(x, y), bit(x)});
            }
        c.set(L.flag0(k), PdcInput::lambda, y, {L.q0(), keep(y), ""});
        c.set(L.flag1(k), PdcInput::lambda, y, {L.pop(0), keep(y), ""});

        for (std::size_t i = 0; i < k; ++i)
            c.set(L.pop(i), PdcInput::lambda, y, {L.pop(i + 1), y == kBottom ? keep(y) : "", ""});
        c.set(L.pop(k), PdcInput::lambda, y, {L.check(1), keep(y), ""});

        for (std::size_t i = 1; i <= v; ++i)
            for (int x = 0; x < 2; ++x) {
                PdcMove mv;
                if (y == kBottom)
                    mv = {x ? L.flag1(1) : L.flag0(1), push(x, y), bit(x)};
                else if (bit_char(x) == y)
                    mv = {L.check(i + 1), "", i == v ? "0" : ""};
                else
                    mv = {L.error(), keep(y), std::string(3 * m + i, '1') + "0" + bit(x)};
                c.set(L.check(i), input_of_bit(x), y, std::move(mv));
            }
        c.set(L.check(v + 1), PdcInput::lambda, y, {L.check(1), keep(y), ""});

        for (int x = 0; x < 2; ++x) c.set(L.error(), input_of_bit(x), y, {L.error(), keep(y), bit(x)});
    }
    return c;
}

}  // namespace depthlab
