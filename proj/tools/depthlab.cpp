// depthlab: generate the constructed sequences and measure compression
// gaps between pairs of compressors on their prefixes.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "depthlab/bits.hpp"
#include "depthlab/fs_complexity.hpp"
#include "depthlab/fst.hpp"
#include "depthlab/fst_codec.hpp"
#include "depthlab/half_compressor.hpp"
#include "depthlab/lz78.hpp"
#include "depthlab/pdc.hpp"
#include "depthlab/profile.hpp"
#include "depthlab/seqgen.hpp"

using namespace depthlab;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInvalid = 2, kStuck = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& data)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << data)) throw UsageError("cannot write " + path);
}

/// Bit file contents with surrounding whitespace removed.
BitString load_bits(const std::string& path)
{
    auto s = read_file(path);
    s.erase(0, s.find_first_not_of(" \t\r\n"));
    s.erase(s.find_last_not_of(" \t\r\n") + 1);
    require_bits(s, path);
    return s;
}

void emit(const std::string& out, const std::string& data)
{
    if (out.empty() || out == "-")
        std::cout << data;
    else
        write_file(out, data);
}

struct RecipeOpts {
    std::string recipe = "B";
    std::size_t k = 9;
    std::size_t v = 9;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string growth = "scaled";
    std::uint64_t g = 4;
    std::size_t stages = 0;
    std::uint64_t bits = 0;

    void add(CLI::App* app)
    {
        app->add_option("--recipe", recipe, "sequence recipe A, B or C")->capture_default_str();
        app->add_option("--k", k, "flag / run length k")->capture_default_str();
        app->add_option("--v", v, "check period v (B) or zone count v (C)")->capture_default_str();
        app->add_option("--seed", seed, "RNG seed (default: $DEPTHLAB_SEED, else 0)")
            ->each([this](const std::string&) { seed_given = true; });
        app->add_option("--growth", growth, "recipe A interval growth: doubling or scaled")->capture_default_str();
        app->add_option("--g", g, "recipe A scaled growth factor")->capture_default_str();
        app->add_option("--stages", stages, "stage cap (0: none)")->capture_default_str();
        app->add_option("--bits", bits, "bit cap (0: none)")->capture_default_str();
    }

    SequenceRecipe build() const
    {
        SequenceRecipe r;
        const auto kind = parse_recipe(recipe);
        if (!kind) throw UsageError("unknown recipe '" + recipe + "'");
        r.kind = *kind;
        r.k = k;
        r.v = v;
        r.seed = seed;
        if (!seed_given)
            if (const char* env = std::getenv("DEPTHLAB_SEED")) {
                try {
                    r.seed = std::stoull(env);
                } catch (const std::exception&) {
                    throw UsageError(std::string("DEPTHLAB_SEED is not a number: ") + env);
                }
            }
        if (growth == "doubling")
            r.growth = GrowthMode::doubling;
        else if (growth == "scaled")
            r.growth = GrowthMode::scaled;
        else
            throw UsageError("growth must be doubling or scaled");
        r.g = g;
        r.stages = stages;
        r.max_bits = bits;
        return r;
    }
};

/// Bits from --in, --x, or a recipe.
struct InputOpts {
    std::string in;
    std::string x;
    bool have_x = false;

    void add(CLI::App* app)
    {
        app->add_option("--in", in, "input bit file");
        app->add_option("--x", x, "input bits given literally")->each([this](const std::string&) { have_x = true; });
    }

    BitString load(const RecipeOpts* recipe) const
    {
        if (have_x) {
            require_bits(x, "--x");
            return x;
        }
        if (!in.empty()) return load_bits(in);
        if (recipe) return generate(recipe->build()).bits;
        throw UsageError("no input: give --in FILE or --x BITS");
    }
};

FstSpec load_fst(const std::string& what)
{
    if (what == "identity-fst") return FstSpec::identity();
    return parse_fst(read_file(what));
}

PdcSpec load_pdc(const std::string& what)
{
    if (what == "identity-pdc") return PdcSpec::identity();
    if (what.rfind("half-compressor", 0) == 0) {
        std::size_t k = 9, v = 9, m = 0;
        if (what != "half-compressor" &&
            std::sscanf(what.c_str(), "half-compressor(%zu,%zu,%zu)", &k, &v, &m) != 3)
            throw UsageError("expected half-compressor(k,v,m)");
        return build_half_compressor(k, v, m);
    }
    auto c = parse_pdc(read_file(what));
    const auto report = pdc_validate(c);
    if (!report.ok()) {
        std::string msg = what + " does not validate:";
        for (const auto& v : report.violations) msg += "\n  " + v;
        throw SpecError(msg);
    }
    return c;
}

/// A bare "half-compressor" takes k and v from the recipe options and m from --m.
std::string resolve_compressor(const std::string& name, const RecipeOpts& r, std::size_t m)
{
    if (name != "half-compressor") return name;
    return "half-compressor(" + std::to_string(r.k) + "," + std::to_string(r.v) + "," + std::to_string(m) + ")";
}

void check_format(const std::string& format)
{
    if (format != "csv") throw UsageError("only --format csv is supported");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"compression-depth laboratory"};
    app.require_subcommand(1);

    RecipeOpts gen_recipe;
    std::string gen_out;
    auto* gen = app.add_subcommand("generate", "write a recipe's bit stream and its manifest");
    gen_recipe.add(gen);
    gen->add_option("--out", gen_out, "bit file (manifest goes to FILE.manifest.json); stdout if omitted");

    RecipeOpts prof_recipe;
    InputOpts prof_in;
    std::string weak, strong, grid_text, prof_out, prof_format = "csv";
    std::size_t prof_m = 0;
    double tail = 0.5;
    auto* prof = app.add_subcommand("profile", "depth profile of two compressors over a prefix grid");
    prof_recipe.add(prof);
    prof_in.add(prof);
    prof->add_option("--weak", weak, "weak compressor")->required();
    prof->add_option("--strong", strong, "strong compressor")->required();
    prof->add_option("--m", prof_m, "skip-prefix length m for a bare half-compressor")->capture_default_str();
    prof->add_option("--grid", grid_text, "prefix grid a:b:step or a:b:xF")->required();
    prof->add_option("--tail", tail, "fraction of the grid range used for the tail summary")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    prof->add_option("--out", prof_out, "output CSV (stdout if omitted)");
    prof->add_option("--format", prof_format, "output format")->capture_default_str();

    RecipeOpts ratio_recipe;
    InputOpts ratio_in;
    std::string ratio_c, ratio_grid, ratio_out, ratio_format = "csv";
    std::size_t ratio_m = 0;
    double ratio_tail = 0.5;
    auto* ratio = app.add_subcommand("ratio", "compression ratio |C(S|n)|/n over a prefix grid");
    ratio_recipe.add(ratio);
    ratio_in.add(ratio);
    ratio->add_option("--compressor,--strong", ratio_c, "compressor")->required();
    ratio->add_option("--m", ratio_m, "skip-prefix length m for a bare half-compressor")->capture_default_str();
    ratio->add_option("--grid", ratio_grid, "prefix grid a:b:step or a:b:xF")->required();
    ratio->add_option("--tail", ratio_tail, "tail fraction")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    ratio->add_option("--out", ratio_out, "output CSV (stdout if omitted)");
    ratio->add_option("--format", ratio_format, "output format")->capture_default_str();

    InputOpts lz_in;
    bool lz_decode_flag = false, lz_table = false;
    std::string lz_out;
    auto* lz = app.add_subcommand("lz", "LZ78 encode, decode, or print the parse table");
    lz_in.add(lz);
    lz->add_flag("--decode", lz_decode_flag, "decode instead of encode");
    lz->add_flag("--table", lz_table, "print the parse as CSV (index,pointer,bit,code_bits)");
    lz->add_option("--out", lz_out, "output file (stdout if omitted)");

    std::string fst_path;
    InputOpts fst_in;
    auto* fst_run_cmd = app.add_subcommand("fst-run", "run a transducer");
    fst_run_cmd->add_option("spec", fst_path, "FST spec file or identity-fst")->required();
    fst_in.add(fst_run_cmd);

    std::string pdc_path;
    InputOpts pdc_in;
    auto* pdc_run_cmd = app.add_subcommand("pdc-run", "validate and run a pushdown compressor");
    pdc_run_cmd->add_option("spec", pdc_path, "PDC spec file, identity-pdc or half-compressor(k,v,m)")->required();
    pdc_in.add(pdc_run_cmd);

    std::string enc_path;
    auto* enc = app.add_subcommand("encode-fst", "print the canonical binary description of an FST");
    enc->add_option("spec", enc_path, "FST spec file or identity-fst")->required();

    std::string dec_bits;
    auto* dec = app.add_subcommand("decode-fst", "decode a binary description (exit 2 if it is not one)");
    dec->add_option("bits", dec_bits, "description bits")->required();

    InputOpts kfs_in;
    std::size_t kfs_k = 12;
    auto* kfs = app.add_subcommand("kfs", "k-finite-state complexity D^k(x) with a witness");
    kfs_in.add(kfs);
    kfs->add_option("--k", kfs_k, "description bound in bits")->capture_default_str();

    std::string comp_pdc, comp_fst, comp_out;
    std::size_t comp_ceiling = kDefaultComposeCeiling;
    auto* comp = app.add_subcommand("compose", "build N with N(x) = C(T(x))");
    comp->add_option("pdc", comp_pdc, "PDC spec file, identity-pdc or half-compressor(k,v,m)")->required();
    comp->add_option("fst", comp_fst, "FST spec file or identity-fst")->required();
    comp->add_option("--ceiling", comp_ceiling, "state ceiling")->capture_default_str();
    comp->add_option("--out", comp_out, "output spec (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (gen->parsed()) {
            const auto seq = generate(gen_recipe.build());
            for (const auto& n : seq.notices) std::cerr << "notice: " << n << '\n';
            if (gen_out.empty() || gen_out == "-") {
                std::cout << seq.bits << '\n';
            } else {
                write_file(gen_out, seq.bits);
                write_file(gen_out + ".manifest.json", manifest_json(seq));
            }
        } else if (prof->parsed()) {
            check_format(prof_format);
            const auto s = prof_in.load(&prof_recipe);
            const auto w = make_compressor(resolve_compressor(weak, prof_recipe, prof_m));
            const auto st = make_compressor(resolve_compressor(strong, prof_recipe, prof_m));
            const auto p = depth_profile(s, *w, *st, parse_grid(grid_text));
            emit(prof_out, profile_csv(p, tail));
        } else if (ratio->parsed()) {
            check_format(ratio_format);
            const auto s = ratio_in.load(&ratio_recipe);
            const auto c = make_compressor(resolve_compressor(ratio_c, ratio_recipe, ratio_m));
            emit(ratio_out, ratio_csv(ratio_rows(s, *c, parse_grid(ratio_grid)), c->label(), ratio_tail));
        } else if (lz->parsed()) {
            const auto s = lz_in.load(nullptr);
            if (lz_table)
                emit(lz_out, lz_parse_csv(s));
            else
                emit(lz_out, (lz_decode_flag ? lz_decode(s) : lz_encode(s)) + "\n");
        } else if (fst_run_cmd->parsed()) {
            const auto t = load_fst(fst_path);
            const auto r = fst_run(t, fst_in.load(nullptr));
            std::cout << (r.output.empty() ? "-" : r.output) << ' ' << r.final_state + 1 << '\n';
        } else if (pdc_run_cmd->parsed()) {
            const auto c = load_pdc(pdc_path);
            const auto r = pdc_run(c, pdc_in.load(nullptr));
            std::cout << (r.output.empty() ? "-" : r.output) << ' ' << r.final_state + 1 << ' ' << r.final_stack << '\n';
        } else if (enc->parsed()) {
            std::cout << encode_fst(load_fst(enc_path)).bits << '\n';
        } else if (dec->parsed()) {
            const auto t = decode_fst(dec_bits);
            if (!t) {
                std::cerr << "not a description\n";
                return kInvalid;
            }
            std::cout << format_fst(*t);
        } else if (kfs->parsed()) {
            const auto x = kfs_in.load(nullptr);
            const auto r = kfs_complexity(x, kfs_k);
            std::cout << "D^" << kfs_k << " = " << r.value.str() << '\n';
            if (r.witness)
                std::cout << "machine " << r.witness->description << "\ninput " << (r.witness->input.empty() ? "-" : r.witness->input) << '\n';
        } else if (comp->parsed()) {
            const auto n = compose_pdc_fst(load_pdc(comp_pdc), load_fst(comp_fst), comp_ceiling);
            emit(comp_out, format_pdc(n));
        }
    } catch (const StuckError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kStuck;
    } catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kOk;
}
