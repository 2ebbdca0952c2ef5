// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Usage: acceptance [path-to-depthlab-cli]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <unistd.h>

#include "depthlab/fs_complexity.hpp"
#include "depthlab/fst_codec.hpp"
#include "depthlab/half_compressor.hpp"
#include "depthlab/lz78.hpp"
#include "depthlab/profile.hpp"
#include "depthlab/seqgen.hpp"
#include "support.hpp"

using namespace depthlab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why)
    {
        if (pass) detail = why;
        pass = false;
    }
};

BitString power(const BitString& y, std::size_t n)
{
    BitString out;
    for (std::size_t i = 0; i < n; ++i) out += y;
    return out;
}

std::optional<PdcRun> try_run(const PdcSpec& c, std::string_view x)
{
    try {
        return pdc_run(c, x);
    } catch (const StuckError&) {
        return std::nullopt;
    }
}

bool parse_ok(const BitString& x)
{
    const auto p = lz_parse(x);
    const auto phrases = lz_phrases(p);
    BitString joined;
    std::set<BitString> seen{""};
    for (std::size_t i = 0; i < phrases.size(); ++i) {
        const auto& s = phrases[i];
        joined += s;
        if (s.empty() || !seen.count(s.substr(0, s.size() - 1))) return false;
        const bool fresh = seen.insert(s).second;
        const bool last = i + 1 == phrases.size();
        if (fresh == (last && p.duplicate_tail)) return false;
    }
    return joined == x;
}

Outcome lz_correctness()
{
    Outcome o;
    const auto t0 = Clock::now();
    std::size_t count = 0;
    for (std::size_t len = 0; len <= 14; ++len)
        for (const auto& x : all_strings(len)) {
            ++count;
            if (lz_decode(lz_encode(x)) != x) o.fail("roundtrip " + x);
            if (!parse_ok(x)) o.fail("parse " + x);
        }
    std::mt19937_64 rng(1001);
    for (int i = 0; i < 1000; ++i) {
        const auto x = testkit::bits(rng, 10000);
        if (lz_decode(lz_encode(x)) != x) o.fail("random roundtrip " + std::to_string(i));
        if (!parse_ok(x)) o.fail("random parse " + std::to_string(i));
    }
    const auto secs = seconds_since(t0);
    if (secs >= 60) o.fail("runtime " + format_fixed(secs, 1) + "s");
    if (o.pass) o.detail = std::to_string(count) + " exhaustive + 1000 random, " + format_fixed(secs, 1) + "s";
    return o;
}

Outcome repeat_lemma()
{
    Outcome o;
    std::mt19937_64 rng(2002);
    double worst = 0;
    for (int i = 0; i < 200; ++i) {
        const auto x = testkit::bits(rng, testkit::below(rng, 65));
        const auto y = testkit::bits(rng, 1 + testkit::below(rng, 8));
        const auto n = 1 + testkit::below(rng, 64);
        Lz78State st;
        st.prime(x);
        const auto bound = repeat_bound(y.size(), n, st.phrase_count());
        const auto got = static_cast<double>(lz_conditional(power(y, n), x).length);
        worst = std::max(worst, got / bound);
        if (got > bound) o.fail("violation at triple " + std::to_string(i));
    }
    if (o.pass) o.detail = "200 triples, max measured/bound " + format_fixed(worst, 3);
    return o;
}

std::vector<FstSpec> all_small_fsts(std::size_t m)
{
    const auto words = testkit::upto(2);
    std::size_t total = m;
    for (std::size_t i = 0; i < 2 * m; ++i) total *= m * words.size();
    std::vector<FstSpec> out;
    for (std::size_t code = 0; code < total; ++code) {
        auto c = code;
        const auto start = static_cast<StateId>(c % m);
        c /= m;
        std::vector<FstSpec::Row> table(m);
        for (auto& row : table)
            for (auto& e : row) {
                e.next = static_cast<StateId>(c % m);
                c /= m;
                e.out = words[c % words.size()];
                c /= words.size();
            }
        out.emplace_back(start, std::move(table));
    }
    return out;
}

Outcome codec_roundtrip()
{
    Outcome o;
    std::size_t exhaustive = 0, flips = 0, flipped_valid = 0;
    for (std::size_t m = 1; m <= 2; ++m)
        for (const auto& t : all_small_fsts(m)) {
            ++exhaustive;
            if (decode_fst(encode_fst(t).bits) != t) o.fail("exhaustive roundtrip");
        }
    std::mt19937_64 rng(3003);
    for (int i = 0; i < 500; ++i) {
        const auto t = testkit::random_fst(rng, 1 + testkit::below(rng, 5), 4);
        const auto bits = encode_fst(t).bits;
        if (decode_fst(bits) != t) o.fail("random roundtrip " + std::to_string(i));
        for (std::size_t j = 0; j < bits.size(); ++j) {
            auto f = bits;
            f[j] = f[j] == '0' ? '1' : '0';
            ++flips;
            if (const auto d = decode_fst(f)) {
                ++flipped_valid;
                if (decode_fst(encode_fst(*d).bits) != d) o.fail("flip decodes to a machine that does not re-encode");
            }
        }
    }
    if (o.pass)
        o.detail = std::to_string(exhaustive) + " exhaustive, 500 random, " + std::to_string(flips) + " flips (" +
                   std::to_string(flipped_valid) + " decode)";
    return o;
}

std::optional<std::size_t> brute_one(const FstSpec& t, const BitString& x, const std::vector<BitString>& inputs)
{
    for (const auto& y : inputs)
        if (testkit::naive_fst(t, y) == x) return y.size();
    return std::nullopt;
}

Outcome kfs_oracle()
{
    Outcome o;
    const auto t0 = Clock::now();
    const auto u = enum_fsts(12);
    const auto inputs = testkit::upto(6);
    const auto targets = testkit::upto(5);
    for (const auto& x : targets) {
        std::optional<std::size_t> best;
        for (const auto& t : u.machines) {
            const auto b = brute_one(t, x, inputs);
            const auto s = shortest_input(t, x);
            if (b) {
                if (!s || s->size() != *b || testkit::naive_fst(t, *s) != x) o.fail("shortest_input on " + x);
                if (!best || *b < *best) best = b;
            } else if (s && s->size() <= 6) {
                o.fail("shortest_input finds an input brute force missed on " + x);
            }
        }
        const auto d = kfs_over_universe(x, u).value;
        if (best ? d != DescLength(*best) : (d.finite() && d.value() <= 6)) o.fail("D^12(" + x + ")");
    }

    std::size_t finite = 0, cases = 0;
    for (const auto& x : testkit::upto(3))
        for (const auto& y : testkit::upto(3))
            for (const auto& z : testkit::upto(3))
                for (std::size_t n = 0; n <= 2; ++n) {
                    ++cases;
                    const auto lhs = kfs_complexity(x + power(y, n) + z, 4).value;
                    if (!lhs.finite()) continue;
                    ++finite;
                    const auto dx = kfs_over_universe(x, u).value;
                    const auto dy = kfs_over_universe(y, u).value;
                    const auto dz = kfs_over_universe(z, u).value;
                    if (!dx.finite() || !dy.finite() || !dz.finite() ||
                        lhs.value() < dx.value() + n * dy.value() + dz.value())
                        o.fail("lower bound on a finite case");
                }
    const auto secs = seconds_since(t0);
    if (secs >= 600) o.fail("runtime " + format_fixed(secs, 1) + "s");
    if (o.pass)
        o.detail = std::to_string(u.machines.size()) + " machines x " + std::to_string(targets.size()) +
                   " targets; lower bound: " + std::to_string(finite) + " finite of " + std::to_string(cases) +
                   " cases (FST^{<=4} is empty); " + format_fixed(secs, 1) + "s";
    return o;
}

Outcome composition()
{
    Outcome o;
    std::mt19937_64 rng(5005);
    std::vector<std::pair<PdcSpec, FstSpec>> pairs;
    pairs.emplace_back(build_half_compressor(9, 9, 0), FstSpec::identity());
    pairs.emplace_back(PdcSpec::identity(StackKind::unary), FstSpec::repeater("10"));
    while (pairs.size() < 20) {
        const auto kind = pairs.size() % 3 == 0 ? StackKind::unary : StackKind::binary;
        pairs.emplace_back(testkit::random_pdc(rng, 1 + testkit::below(rng, 3), kind, pairs.size() % 4 == 0),
                           testkit::random_fst(rng, 1 + testkit::below(rng, 3), 2));
    }
    std::size_t unary = 0, runs = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& [c, t] = pairs[i];
        if (c.kind() == StackKind::unary) ++unary;
        const auto n = compose_pdc_fst(c, t);
        if (!pdc_validate(n).ok()) o.fail("pair " + std::to_string(i) + " does not validate");
        for (const auto& x : testkit::upto(8)) {
            ++runs;
            const auto want = testkit::naive_pdc(c, c.start(), "z", testkit::naive_fst(t, x));
            const auto got = try_run(n, x);
            if (got.has_value() != want.has_value() || (got && got->output != want->first))
                o.fail("pair " + std::to_string(i) + " on " + x);
        }
    }
    if (o.pass) o.detail = "20 pairs (" + std::to_string(unary) + " unary), " + std::to_string(runs) + " runs";
    return o;
}

Outcome half_compressor()
{
    Outcome o;
    const HalfCompressorLayout layout{9, 9, 0};
    const auto c = build_half_compressor(9, 9, 0);
    if (!pdc_validate(c).ok()) o.fail("does not validate");
    if (pdc_il_check(c, 12)) o.fail("il collision at L = 12");

    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        SequenceRecipe r;
        r.seed = seed;
        r.max_bits = 30000;
        const auto s = generate(r).bits;
        const auto run = try_run(c, s);
        if (!run) o.fail("stuck on seed " + std::to_string(seed));
        else if (run->final_state == layout.error()) o.fail("error state on seed " + std::to_string(seed));
    }

    SequenceRecipe r;
    r.seed = 6;
    r.stages = 40;
    const auto seq = generate(r);
    const auto& s = seq.bits;
    std::vector<std::uint64_t> flag_ends;
    for (const auto& b : seq.blocks) {
        const auto end = b.offset + (b.length - 9) / 2 + 9;
        if (end >= 10000) flag_ends.push_back(end);
    }
    const double bound = 0.5 + 1.0 / 9 + 0.05;
    double worst = 0;
    const auto half = make_compressor("half-compressor(9,9,0)");
    const auto hm = half->measure(s, flag_ends);
    const auto im = make_compressor("identity-pdc")->measure(s, flag_ends);
    for (std::size_t i = 0; i < flag_ends.size(); ++i) {
        if (!hm[i].ok()) o.fail("half compressor stuck before n = " + std::to_string(flag_ends[i]));
        const auto n = static_cast<double>(flag_ends[i]);
        worst = std::max(worst, static_cast<double>(hm[i].bits) / n);
        if (static_cast<double>(hm[i].bits) / n > bound) o.fail("ratio above bound at n = " + std::to_string(flag_ends[i]));
        if (im[i].bits != flag_ends[i]) o.fail("identity ratio is not 1");
    }

    const auto grid = parse_grid("10000:" + std::to_string(s.size() / 1000 * 1000) + ":1000");
    const auto p = depth_profile(s, *make_compressor("identity-pdc"), *half, grid);
    const auto tail = p.tail();
    if (!tail) o.fail("no finite tail rows");
    else if (tail->min < 0.35) o.fail("tail gap/n min " + format_fixed(tail->min));
    if (o.pass)
        o.detail = std::to_string(flag_ends.size()) + " flag prefixes, max ratio " + format_fixed(worst, 4) + " <= " +
                   format_fixed(bound, 4) + "; tail gap/n in [" + format_fixed(tail->min, 4) + ", " +
                   format_fixed(tail->max, 4) + "] >= 0.35";
    return o;
}

Outcome recipe_c_vs_lz()
{
    Outcome o;
    SequenceRecipe r;
    r.kind = RecipeKind::C;
    r.k = 6;
    r.v = 2;
    r.max_bits = 100000;
    const auto s = generate(r).bits;
    const auto rows = ratio_rows(s, *make_compressor("lz78"), parse_grid("10000:100000:5000"));
    double lo = 2;
    for (const auto& row : rows) {
        lo = std::min(lo, row.ratio());
        if (row.ratio() < 0.6) o.fail("ratio " + format_fixed(row.ratio(), 4) + " at n = " + std::to_string(row.n));
    }
    if (o.pass) o.detail = std::to_string(rows.size()) + " grid points, min ratio " + format_fixed(lo, 4) + " >= 0.6";
    return o;
}

Outcome fs_randomness()
{
    Outcome o;
    std::mt19937_64 rng(8008);
    const auto r = fs_random_string(16, 2, RandomMode::certified, rng);
    if (r.bits.size() != 16) o.fail("length");
    if (!r.certificate || *r.certificate < DescLength(8)) o.fail("certificate below 8");
    const auto u6 = enum_fsts(6);
    if (const auto b = testkit::brute_min_input(u6.machines, r.bits, 7)) o.fail("brute force finds input of length " + std::to_string(*b));

    const auto u12 = enum_fsts(12);
    const auto d12 = testkit::brute_min_input(u12.machines, r.bits, 7);

    const auto tr = FstSpec::repeater(r.bits);
    for (std::size_t t = 1; t <= 8; ++t)
        if (kfs_over_set(power(r.bits, t), {tr}).value != DescLength(t)) o.fail("D_{T_r}(r^" + std::to_string(t) + ")");
    if (o.pass)
        o.detail = "r=" + r.bits + " D^6=" + r.certificate->str() + " (FST^{<=6} has " +
                   std::to_string(u6.machines.size()) + " machines); brute D^12(r) " +
                   (d12 ? "= " + std::to_string(*d12) : std::string("> 7")) + "; D_{T_r}(r^t)=t for t<=8";
    return o;
}

Outcome height_irrelevance()
{
    Outcome o;
    std::mt19937_64 rng(9009);
    std::size_t checks = 0;
    for (int i = 0; i < 50; ++i) {
        const auto c = testkit::random_pdc(rng, 1 + testkit::below(rng, 4), StackKind::unary);
        std::set<StateId> reachable;
        for (const auto& w : testkit::upto(8))
            if (const auto run = try_run(c, w)) reachable.insert(run->final_state);
        for (StateId q : reachable)
            for (const auto& x : testkit::upto(8)) {
                const auto h = (c.lambda_budget() + 1) * x.size();
                std::optional<BitString> a, b;
                try {
                    a = pdc_run_from(c, q, std::string(h, '0') + "z", x).output;
                } catch (const StuckError&) {
                }
                try {
                    b = pdc_run_from(c, q, std::string(h + 7, '0') + "z", x).output;
                } catch (const StuckError&) {
                }
                ++checks;
                if (a != b) o.fail("spec " + std::to_string(i) + " state " + std::to_string(q) + " on " + x);
            }
    }
    if (o.pass) o.detail = "50 unary specs, " + std::to_string(checks) + " (state, suffix) checks";
    return o;
}

std::string file_hash(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return sha256_hex(ss.str());
}

Outcome determinism(const char* cli)
{
    Outcome o;
    std::vector<SequenceRecipe> recipes(3);
    recipes[0].kind = RecipeKind::A;
    recipes[0].stages = 5;
    recipes[1].kind = RecipeKind::B;
    recipes[1].max_bits = 20000;
    recipes[2].kind = RecipeKind::C;
    recipes[2].k = 6;
    recipes[2].v = 2;
    recipes[2].max_bits = 20000;
    for (auto& r : recipes) {
        r.seed = 17;
        const auto a = generate(r), b = generate(r);
        if (sha256_hex(a.bits) != sha256_hex(b.bits) || manifest_json(a) != manifest_json(b))
            o.fail("recipe " + recipe_name(r.kind) + " differs");
        const auto len = a.bits.size();
        const auto grid = parse_grid(std::to_string(len / 10) + ":" + std::to_string(len) + ":" + std::to_string(len / 10));
        const auto pa = profile_csv(depth_profile(a.bits, *make_compressor("identity-pdc"), *make_compressor("lz78"), grid));
        const auto pb = profile_csv(depth_profile(b.bits, *make_compressor("identity-pdc"), *make_compressor("lz78"), grid));
        if (sha256_hex(pa) != sha256_hex(pb)) o.fail("profile on recipe " + recipe_name(r.kind) + " differs");
    }
    std::string cli_note = "CLI not given";
    if (cli) {
        const auto dir = std::filesystem::temp_directory_path() / ("depthlab-acceptance-" + std::to_string(::getpid()));
        std::filesystem::create_directories(dir);
        std::vector<std::string> hashes[2];
        for (int run = 0; run < 2; ++run) {
            const auto d = dir / std::to_string(run);
            std::filesystem::create_directories(d);
            const std::string q = "\"" + std::string(cli) + "\"";
            const std::string cmds[] = {
                q + " generate --recipe B --seed 17 --bits 20000 --out " + (d / "b.bits").string(),
                q + " generate --recipe C --k 6 --v 2 --seed 17 --bits 20000 --out " + (d / "c.bits").string(),
                q + " profile --in " + (d / "b.bits").string() +
                    " --weak identity-pdc --strong half-compressor --grid 2000:20000:2000 --out " +
                    (d / "b.csv").string(),
            };
            for (const auto& cmd : cmds)
                if (std::system((cmd + " > /dev/null").c_str()) != 0) o.fail("CLI command failed: " + cmd);
            for (const char* f : {"b.bits", "b.bits.manifest.json", "c.bits", "c.bits.manifest.json", "b.csv"})
                hashes[run].push_back(std::filesystem::exists(d / f) ? file_hash(d / f) : "missing");
        }
        std::filesystem::remove_all(dir);
        if (hashes[0] != hashes[1]) o.fail("CLI outputs differ between runs");
        for (const auto& h : hashes[0])
            if (h == "missing") o.fail("CLI output file missing");
        cli_note = "CLI files identical across 2 runs";
    }
    if (o.pass) o.detail = "recipes A/B/C and profiles hash-identical; " + cli_note;
    return o;
}

}  // namespace

int main(int argc, char** argv)
{
    const char* cli = argc > 1 ? argv[1] : nullptr;
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1 lz78 roundtrip and parse structure", lz_correctness},
        {"2 repeat bound", repeat_lemma},
        {"3 sigma codec roundtrip and bit flips", codec_roundtrip},
        {"4 D^k oracle and lower bound at k=4", kfs_oracle},
        {"5 pdc-fst composition", composition},
        {"6 half compressor on recipe B", half_compressor},
        {"7 recipe C vs lz78", recipe_c_vs_lz},
        {"8 fs-random certification", fs_randomness},
        {"9 unary stack height irrelevance", height_irrelevance},
        {"10 determinism", [cli] { return determinism(cli); }},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << ": " << o.detail << " (" << format_fixed(seconds_since(t0), 1)
                  << "s)" << std::endl;
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << std::endl;
    return failed ? 1 : 0;
}
