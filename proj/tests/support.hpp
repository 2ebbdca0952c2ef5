#pragma once

// Generators and brute-force oracles shared by the unit and acceptance tests.
// The oracles deliberately avoid the library's search code.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "depthlab/bits.hpp"
#include "depthlab/fst.hpp"
#include "depthlab/pdc.hpp"

namespace testkit {

using depthlab::BitString;
using depthlab::FstEdge;
using depthlab::FstSpec;
using depthlab::PdcInput;
using depthlab::PdcMove;
using depthlab::PdcSpec;
using depthlab::StackKind;
using depthlab::StateId;

inline std::size_t below(std::mt19937_64& rng, std::size_t n)
{
    return static_cast<std::size_t>(rng() % n);
}

inline BitString bits(std::mt19937_64& rng, std::size_t n)
{
    BitString s;
    for (std::size_t i = 0; i < n; ++i) s.push_back((rng() & 1) ? '1' : '0');
    return s;
}

/// Every string of length <= n, shortlex.
inline std::vector<BitString> upto(std::size_t n)
{
    std::vector<BitString> out{""};
    for (std::size_t len = 1; len <= n; ++len)
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
            BitString s(len, '0');
            for (std::size_t i = 0; i < len; ++i)
                if ((v >> (len - 1 - i)) & 1) s[i] = '1';
            out.push_back(s);
        }
    return out;
}

inline FstSpec random_fst(std::mt19937_64& rng, std::size_t m, std::size_t max_emit)
{
    std::vector<FstSpec::Row> table(m);
    for (auto& row : table)
        for (auto& e : row) e = FstEdge{static_cast<StateId>(below(rng, m)), bits(rng, below(rng, max_emit + 1))};
    return FstSpec(static_cast<StateId>(below(rng, m)), std::move(table));
}

/// Plain per-character simulation of an FST.
inline BitString naive_fst(const FstSpec& t, const BitString& x)
{
    StateId q = t.start();
    BitString out;
    for (char c : x) {
        const auto& row = t.table()[q];
        const auto& e = c == '0' ? row[0] : row[1];
        out += e.out;
        q = e.next;
    }
    return out;
}

/// min |y| over |y| <= max_len with some machine producing x, by enumeration.
inline std::optional<std::size_t> brute_min_input(const std::vector<FstSpec>& machines, const BitString& x,
                                                  std::size_t max_len)
{
    const auto inputs = upto(max_len);
    for (const auto& y : inputs)
        for (const auto& t : machines)
            if (naive_fst(t, y) == x) return y.size();
    return std::nullopt;
}

/// Random PDC whose λ-moves only go to higher-numbered states, so λ-chains are
/// acyclic and at most m - 1 long. Bit moves are total unless `partial`.
inline PdcSpec random_pdc(std::mt19937_64& rng, std::size_t m, StackKind kind, bool partial = false)
{
    PdcSpec c(m, static_cast<StateId>(below(rng, m)), kind, m);
    const std::string symbols = kind == StackKind::binary ? "01" : "0";
    auto push_for = [&](char top) {
        std::string w;
        const auto len = below(rng, 3);
        for (std::size_t i = 0; i < len; ++i) w.push_back(symbols[below(rng, symbols.size())]);
        if (top == depthlab::kBottom) w.push_back(depthlab::kBottom);
        return w;
    };
    for (StateId q = 0; q < m; ++q)
        for (char top : std::string(symbols) + depthlab::kBottom) {
            if (q + 1 < m && below(rng, 4) == 0) {
                const auto to = static_cast<StateId>(q + 1 + below(rng, m - q - 1));
                c.set(q, PdcInput::lambda, top, PdcMove{to, push_for(top), ""});
                continue;
            }
            for (int b = 0; b < 2; ++b) {
                if (partial && below(rng, 8) == 0) continue;
                c.set(q, depthlab::input_of_bit(b), top,
                      PdcMove{static_cast<StateId>(below(rng, m)), push_for(top), bits(rng, below(rng, 3))});
            }
        }
    return c;
}

/// Independent PDC interpreter over a top-first stack string. nullopt when
/// stuck.
inline std::optional<std::pair<BitString, StateId>> naive_pdc(const PdcSpec& c, StateId q, std::string stack,
                                                              const BitString& x)
{
    auto closure = [&]() {
        while (const auto& m = c.move(q, PdcInput::lambda, stack[0])) {
            stack = m->push + stack.substr(1);
            q = m->next;
        }
    };
    closure();
    BitString out;
    for (char b : x) {
        const auto& m = c.move(q, b == '1' ? PdcInput::one : PdcInput::zero, stack[0]);
        if (!m) return std::nullopt;
        stack = m->push + stack.substr(1);
        q = m->next;
        out += m->out;
        closure();
    }
    return std::make_pair(out, q);
}

}  // namespace testkit
