#include <catch2/catch_amalgamated.hpp>

#include "depthlab/lz78.hpp"
#include "support.hpp"

using namespace depthlab;

namespace {

/// Dictionary-as-map LZ78 coder; the first `primed` bits only build the
/// dictionary.
BitString naive_lz(const BitString& x, std::size_t primed = 0)
{
    std::map<BitString, std::uint64_t> dict{{"", 0}};
    BitString out, cur;
    auto put = [&](std::uint64_t ptr, char b) {
        unsigned w = 0;
        while ((std::uint64_t{1} << w) < dict.size()) ++w;
        for (unsigned s = w; s-- > 0;) out.push_back(((ptr >> s) & 1) ? '1' : '0');
        out.push_back(b);
    };
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i == primed) cur.clear();
        cur.push_back(x[i]);
        if (dict.count(cur)) continue;
        if (i >= primed) put(dict.at(cur.substr(0, cur.size() - 1)), cur.back());
        const auto idx = dict.size();
        dict.emplace(cur, idx);
        cur.clear();
    }
    if (x.size() == primed) cur.clear();
    if (!cur.empty()) put(dict.at(cur.substr(0, cur.size() - 1)), cur.back());
    return out;
}

void check_parse_structure(const BitString& x)
{
    const auto p = lz_parse(x);
    const auto phrases = lz_phrases(p);
    BitString joined;
    for (const auto& s : phrases) joined += s;
    REQUIRE(joined == x);
    std::set<BitString> seen{""};
    for (std::size_t i = 0; i < phrases.size(); ++i) {
        const auto& s = phrases[i];
        REQUIRE(p.tokens[i].pointer <= i);
        REQUIRE(seen.count(s.substr(0, s.size() - 1)) == 1);
        const bool fresh = seen.insert(s).second;
        if (i + 1 < phrases.size() || !p.duplicate_tail)
            REQUIRE(fresh);
        else
            REQUIRE_FALSE(fresh);
    }
}

BitString power(const BitString& y, std::size_t n)
{
    BitString out;
    for (std::size_t i = 0; i < n; ++i) out += y;
    return out;
}

}  // namespace

TEST_CASE("parse examples")
{
    const auto p = lz_parse("010110");
    CHECK(lz_phrases(p) == std::vector<BitString>{"0", "1", "01", "10"});
    CHECK(p.tokens == std::vector<LzToken>{{0, '0'}, {0, '1'}, {1, '1'}, {2, '0'}});
    CHECK_FALSE(p.duplicate_tail);
    CHECK(lz_parse("").tokens.empty());
    const auto d = lz_parse("00");
    CHECK(lz_phrases(d) == std::vector<BitString>{"0", "0"});
    CHECK(d.duplicate_tail);
}

TEST_CASE("code lengths")
{
    CHECK(lz_encode("0") == "0");
    CHECK(lz_encode("") == "");
    CHECK(lz_encode("010110") == "0" "01" "011" "100");
    CHECK(lz_encode("010110").size() == 9);
    CHECK(lz_pointer_width(1) == 0);
    CHECK(lz_pointer_width(2) == 1);
    CHECK(lz_pointer_width(5) == 3);
    for (const auto& x : testkit::upto(10)) {
        const auto n = lz_parse(x).tokens.size();
        std::size_t expect = 0;
        for (std::size_t i = 1; i <= n; ++i) expect += lz_pointer_width(i) + 1;
        REQUIRE(lz_encode(x).size() == expect);
    }
}

TEST_CASE("exhaustive roundtrip up to 14 bits")
{
    for (std::size_t len = 0; len <= 14; ++len)
        for (const auto& x : all_strings(len)) {
            const auto code = lz_encode(x);
            REQUIRE(code == naive_lz(x));
            REQUIRE(lz_decode(code) == x);
            if (len <= 10) check_parse_structure(x);
        }
}

TEST_CASE("random roundtrips")
{
    std::mt19937_64 rng(1234);
    for (int i = 0; i < 100; ++i) {
        const auto x = testkit::bits(rng, 1 + testkit::below(rng, 3000));
        const auto code = lz_encode(x);
        REQUIRE(lz_decode(code) == x);
        REQUIRE(code == naive_lz(x));
        check_parse_structure(x);
    }
}

TEST_CASE("decode errors name positions")
{
    CHECK_THROWS_AS(lz_decode("0" "0"), SpecError);  // token 2 needs 2 bits
    CHECK(lz_decode("0" "11") == "001");
    CHECK(lz_decode("0" "10") == "000");
    CHECK(lz_decode(lz_encode("00")) == "00");
    CHECK_THROWS_AS(lz_decode("0" "10" "110"), SpecError);  // pointer 3 at token 3
    CHECK_THROWS_AS(lz_decode("2"), SpecError);
    try {
        lz_decode("0" "10" "1");
        FAIL("expected SpecError");
    } catch (const SpecError& e) {
        CHECK(std::string(e.what()).find("bit 3") != std::string::npos);
    }
}

TEST_CASE("conditional coding")
{
    for (const auto& y : testkit::upto(6)) REQUIRE(lz_conditional(y, "").bits == lz_encode(y));
    CHECK(lz_conditional("0", "0").bits == "00");
    CHECK(lz_conditional("0", "0").length == 2);
    // "01" parses as 0|1, so y's first token is the third, with a two-bit pointer.
    CHECK(lz_conditional("01", "01").bits == "011");

    std::mt19937_64 rng(19);
    for (int i = 0; i < 300; ++i) {
        const auto x = testkit::bits(rng, testkit::below(rng, 60));
        const auto y = testkit::bits(rng, testkit::below(rng, 60));
        const auto c = lz_conditional(y, x);
        REQUIRE(c.length == c.bits.size());
        REQUIRE(c.bits == naive_lz(x + y, x.size()));
        Lz78State st;
        st.feed(x);
        if (!st.has_pending()) {
            REQUIRE(lz_encode(x + y) == lz_encode(x) + c.bits);
            REQUIRE(c.length == lz_encode(x + y).size() - lz_encode(x).size());
        }
    }
}

TEST_CASE("incremental feeding matches one-shot encoding")
{
    std::mt19937_64 rng(8);
    for (int i = 0; i < 50; ++i) {
        const auto x = testkit::bits(rng, testkit::below(rng, 500));
        Lz78State st;
        std::size_t pos = 0;
        while (pos < x.size()) {
            const auto step = 1 + testkit::below(rng, 7);
            st.feed(std::string_view(x).substr(pos, step));
            pos += step;
            REQUIRE(st.finished_length() == lz_encode(x.substr(0, std::min(pos, x.size()))).size());
        }
        REQUIRE(st.finish() == lz_encode(x));
        REQUIRE(st.code_length() <= st.finished_length());
    }
}

TEST_CASE("repeat bound")
{
    CHECK(repeat_bound(1, 1, 0) == Catch::Approx(2.0));
    for (std::size_t y = 1; y <= 5; ++y)
        for (std::size_t n = 1; n <= 5; ++n)
            for (std::size_t d = 0; d <= 5; ++d) {
                const auto b = repeat_bound(y, n, d);
                REQUIRE(repeat_bound(y + 1, n, d) >= b);
                REQUIRE(repeat_bound(y, n + 1, d) >= b);
                REQUIRE(repeat_bound(y, n, d + 1) >= b);
            }
    std::mt19937_64 rng(55);
    for (int i = 0; i < 200; ++i) {
        const auto x = testkit::bits(rng, testkit::below(rng, 65));
        const auto y = testkit::bits(rng, 1 + testkit::below(rng, 8));
        const auto n = 1 + testkit::below(rng, 64);
        Lz78State st;
        st.prime(x);
        const auto d = st.phrase_count();
        REQUIRE(static_cast<double>(lz_conditional(power(y, n), x).length) <= repeat_bound(y.size(), n, d));
    }
}

TEST_CASE("parse table csv")
{
    CHECK(lz_parse_csv("010110") == "index,pointer,bit,code_bits\n1,0,0,1\n2,0,1,3\n3,1,1,6\n4,2,0,9\n");
    CHECK(lz_parse_csv("") == "index,pointer,bit,code_bits\n");
}
