#pragma once

// Line/token helpers shared by the FST and PDC text parsers.

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "depthlab/bits.hpp"
#include "depthlab/fst.hpp"

namespace depthlab::detail {

struct SpecLine {
    std::size_t number = 0;
    std::vector<std::string> tokens;
};

inline std::vector<SpecLine> spec_lines(std::string_view text)
{
    std::vector<SpecLine> out;
    std::size_t number = 0;
    while (!text.empty()) {
        ++number;
        const auto eol = text.find('\n');
        auto line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        SpecLine sl{number, {}};
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
            std::size_t j = i;
            while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
            if (j > i) sl.tokens.emplace_back(line.substr(i, j - i));
            i = j;
        }
        if (sl.tokens.empty() || sl.tokens.front().starts_with("#")) continue;
        out.push_back(std::move(sl));
    }
    return out;
}

inline std::size_t parse_count(const std::string& tok, std::size_t line, const char* what)
{
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size())
        throw SpecError("line " + std::to_string(line) + ": bad " + what + " '" + tok + "'");
    return v;
}

/// One-based state token to zero-based id.
inline StateId parse_state(const std::string& tok, std::size_t m, std::size_t line)
{
    const auto v = parse_count(tok, line, "state");
    if (v < 1 || v > m)
        throw SpecError("line " + std::to_string(line) + ": state " + tok + " out of range 1.." +
                        std::to_string(m));
    return static_cast<StateId>(v - 1);
}

/// "-" is the empty word; anything else must be over {0,1}.
inline BitString parse_word(const std::string& tok, std::size_t line, const char* what)
{
    if (tok == "-") return {};
    if (!is_bit_string(tok))
        throw SpecError("line " + std::to_string(line) + ": bad " + what + " '" + tok + "'");
    return tok;
}

}  // namespace depthlab::detail
