#include "depthlab/profile.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "depthlab/fs_complexity.hpp"
#include "depthlab/fst.hpp"
#include "depthlab/half_compressor.hpp"
#include "depthlab/lz78.hpp"
#include "depthlab/pdc.hpp"

namespace depthlab {

namespace {

std::optional<std::uint64_t> to_u64(std::string_view s)
{
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t i = 0;
    for (;;) {
        const auto j = s.find(sep, i);
        out.emplace_back(s.substr(i, j == std::string_view::npos ? std::string_view::npos : j - i));
        if (j == std::string_view::npos) return out;
        i = j + 1;
    }
}

}  // namespace

std::string format_fixed(double x, int decimals)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
    return buf;
}

std::vector<std::uint64_t> Grid::points() const
{
    std::vector<std::uint64_t> out;
    if (factor > 1) {
        double x = static_cast<double>(start);
        while (x <= static_cast<double>(stop) + 1e-9) {
            const auto n = static_cast<std::uint64_t>(std::llround(x));
            if (out.empty() || n > out.back()) out.push_back(n);
            x *= factor;
        }
    } else {
        for (auto n = start; n <= stop; n += step) {
            out.push_back(n);
            if (stop - n < step) break;
        }
    }
    return out;
}

std::string Grid::str() const
{
    if (factor > 1) {
        std::ostringstream os;
        os << start << ':' << stop << ":x" << factor;
        return os.str();
    }
    return std::to_string(start) + ":" + std::to_string(stop) + ":" + std::to_string(step);
}

Grid parse_grid(std::string_view text)
{
    const auto parts = split(text, ':');
    auto bad = [&](const std::string& why) {
        return std::invalid_argument("grid '" + std::string(text) + "': " + why + " (expected a:b:step or a:b:xF)");
    };
    if (parts.size() != 3) throw bad("three fields required");
    Grid g;
    const auto a = to_u64(parts[0]);
    const auto b = to_u64(parts[1]);
    if (!a || !b) throw bad("bounds must be nonnegative integers");
    g.start = *a;
    g.stop = *b;
    if (g.start == 0) throw bad("prefix lengths start at 1");
    if (g.stop < g.start) throw bad("empty range");
    if (!parts[2].empty() && parts[2][0] == 'x') {
        try {
            std::size_t used = 0;
            g.factor = std::stod(parts[2].substr(1), &used);
            if (used != parts[2].size() - 1) throw bad("bad factor");
        } catch (const std::logic_error&) {
            throw bad("bad factor");
        }
        if (!(g.factor > 1)) throw bad("geometric factor must exceed 1");
    } else {
        const auto s = to_u64(parts[2]);
        if (!s || *s == 0) throw bad("step must be a positive integer");
        g.step = *s;
    }
    return g;
}

std::string Measurement::str() const
{
    switch (status) {
    case Status::ok: return std::to_string(bits);
    case Status::stuck: return "stuck@" + std::to_string(stuck_at);
    case Status::infinite: return "inf";
    }
    return "?";
}

namespace {

void check_grid(std::string_view s, const std::vector<std::uint64_t>& grid)
{
    if (!grid.empty() && grid.back() > s.size())
        throw std::invalid_argument("grid reaches n = " + std::to_string(grid.back()) + " but the input has " +
                                    std::to_string(s.size()) + " bits");
}

class FstCompressor : public Compressor {
public:
    FstCompressor(FstSpec t, std::string label) : t_(std::move(t)), label_(std::move(label)) {}
    std::string label() const override { return label_; }
    std::vector<Measurement> measure(std::string_view s, const std::vector<std::uint64_t>& grid) const override
    {
        check_grid(s, grid);
        std::vector<Measurement> out;
        StateId q = t_.start();
        std::uint64_t bits = 0, pos = 0;
        for (auto n : grid) {
            for (; pos < n; ++pos) {
                const auto& e = t_.edge(q, s[pos] == '1');
                bits += e.out.size();
                q = e.next;
            }
            out.push_back({Measurement::Status::ok, bits, 0});
        }
        return out;
    }

private:
    FstSpec t_;
    std::string label_;
};

class PdcCompressor : public Compressor {
public:
    PdcCompressor(PdcSpec c, std::string label) : c_(std::move(c)), label_(std::move(label)) {}
    std::string label() const override { return label_; }
    std::vector<Measurement> measure(std::string_view s, const std::vector<std::uint64_t>& grid) const override
    {
        check_grid(s, grid);
        std::vector<Measurement> out;
        PdcRunner r(c_);
        std::uint64_t bits = 0, pos = 0;
        std::optional<std::uint64_t> stuck;
        for (auto n : grid) {
            for (; !stuck && pos < n; ++pos) {
                const auto e = r.step(s[pos] == '1');
                if (!e) {
                    stuck = pos;
                    break;
                }
                bits += e->size();
            }
            if (stuck && *stuck < n)
                out.push_back({Measurement::Status::stuck, 0, *stuck});
            else
                out.push_back({Measurement::Status::ok, bits, 0});
        }
        return out;
    }

private:
    PdcSpec c_;
    std::string label_;
};

class LzCompressor : public Compressor {
public:
    std::string label() const override { return "lz78"; }
    std::vector<Measurement> measure(std::string_view s, const std::vector<std::uint64_t>& grid) const override
    {
        check_grid(s, grid);
        std::vector<Measurement> out;
        Lz78State st;
        std::uint64_t pos = 0;
        for (auto n : grid) {
            st.feed(s.substr(pos, n - pos));
            pos = n;
            out.push_back({Measurement::Status::ok, st.finished_length(), 0});
        }
        return out;
    }
};

class KfsCompressor : public Compressor {
public:
    explicit KfsCompressor(std::size_t k) : k_(k), universe_(enum_fsts(k)) {}
    std::string label() const override { return "fs-complexity(" + std::to_string(k_) + ")"; }
    std::vector<Measurement> measure(std::string_view s, const std::vector<std::uint64_t>& grid) const override
    {
        check_grid(s, grid);
        std::vector<Measurement> out;
        for (auto n : grid) {
            const auto r = kfs_over_universe(s.substr(0, n), universe_);
            if (r.value.finite())
                out.push_back({Measurement::Status::ok, r.value.value(), 0});
            else
                out.push_back({Measurement::Status::infinite, 0, 0});
        }
        return out;
    }

private:
    std::size_t k_;
    FstUniverse universe_;
};

/// "name(a,b,...)" -> name and arguments.
std::pair<std::string, std::vector<std::string>> call_syntax(const std::string& text)
{
    const auto open = text.find('(');
    if (open == std::string::npos || text.back() != ')') return {text, {}};
    auto args = split(std::string_view(text).substr(open + 1, text.size() - open - 2), ',');
    for (auto& a : args) {
        a.erase(0, a.find_first_not_of(' '));
        a.erase(a.find_last_not_of(' ') + 1);
    }
    return {text.substr(0, open), args};
}

std::size_t arg_count(const std::vector<std::string>& args, std::size_t i, const std::string& what)
{
    const auto v = to_u64(args.at(i));
    if (!v) throw std::invalid_argument(what + ": argument '" + args[i] + "' is not a count");
    return static_cast<std::size_t>(*v);
}

}  // namespace

std::unique_ptr<Compressor> make_compressor(const std::string& name)
{
    const auto [base, args] = call_syntax(name);
    if (base == "identity-fst" && args.empty()) return std::make_unique<FstCompressor>(FstSpec::identity(), name);
    if (base == "identity-pdc" && args.empty()) return std::make_unique<PdcCompressor>(PdcSpec::identity(), name);
    if (base == "lz78" && args.empty()) return std::make_unique<LzCompressor>();
    if (base == "half-compressor") {
        std::size_t k = 9, v = 9, m = 0;
        if (args.size() == 3) {
            k = arg_count(args, 0, base);
            v = arg_count(args, 1, base);
            m = arg_count(args, 2, base);
        } else if (!args.empty()) {
            throw std::invalid_argument("half-compressor takes (k,v,m)");
        }
        const auto label = "half-compressor(" + std::to_string(k) + "," + std::to_string(v) + "," + std::to_string(m) + ")";
        return std::make_unique<PdcCompressor>(build_half_compressor(k, v, m), label);
    }
    if (base == "repeater" && args.size() == 1) {
        require_bits(args[0], "repeater word");
        return std::make_unique<FstCompressor>(FstSpec::repeater(args[0]), name);
    }
    if (base == "fs-complexity" && args.size() == 1) return std::make_unique<KfsCompressor>(arg_count(args, 0, base));

    std::ifstream in(name);
    if (!in) throw std::invalid_argument("unknown compressor '" + name + "' (not a builtin name or a readable file)");
    std::stringstream buf;
    buf << in.rdbuf();
    const auto text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (text.compare(first == std::string::npos ? 0 : first, 3, "fst") == 0)
        return std::make_unique<FstCompressor>(parse_fst(text), name);
    if (text.compare(first == std::string::npos ? 0 : first, 3, "pdc") == 0) {
        auto c = parse_pdc(text);
        const auto report = pdc_validate(c);
        if (!report.ok()) throw SpecError(name + ": " + report.violations.front());
        return std::make_unique<PdcCompressor>(std::move(c), name);
    }
    throw SpecError(name + ": not an fst or pdc spec");
}

std::optional<TailSummary> tail_summary(const std::vector<std::uint64_t>& n, const std::vector<std::optional<double>>& values,
                                        double fraction)
{
    if (n.empty()) return std::nullopt;
    const auto lo = *std::min_element(n.begin(), n.end());
    const auto hi = *std::max_element(n.begin(), n.end());
    const double cut = static_cast<double>(lo) + (1.0 - fraction) * static_cast<double>(hi - lo);
    TailSummary t;
    t.from_n = static_cast<std::uint64_t>(std::ceil(cut - 1e-9));
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (static_cast<double>(n[i]) < cut - 1e-9 || !values[i]) continue;
        const double v = *values[i];
        t.min = t.rows == 0 ? v : std::min(t.min, v);
        t.max = t.rows == 0 ? v : std::max(t.max, v);
        ++t.rows;
    }
    if (t.rows == 0) return std::nullopt;
    return t;
}

std::optional<TailSummary> DepthProfile::tail(double fraction) const
{
    std::vector<std::uint64_t> n;
    std::vector<std::optional<double>> v;
    for (const auto& r : rows) {
        n.push_back(r.n);
        v.push_back(r.finite() ? std::optional<double>(r.gap_over_n()) : std::nullopt);
    }
    return tail_summary(n, v, fraction);
}

DepthProfile depth_profile(std::string_view s, const Compressor& weak, const Compressor& strong, const Grid& grid)
{
    const auto pts = grid.points();
    const auto w = weak.measure(s, pts);
    const auto st = strong.measure(s, pts);
    DepthProfile p{weak.label(), strong.label(), grid.str(), {}};
    for (std::size_t i = 0; i < pts.size(); ++i) p.rows.push_back({pts[i], w[i], st[i]});
    return p;
}

std::string profile_csv(const DepthProfile& p, double tail_fraction)
{
    std::ostringstream os;
    os << "n,weak_bits,strong_bits,gap,gap_over_n\n";
    for (const auto& r : p.rows) {
        os << r.n << ',' << r.weak.str() << ',' << r.strong.str() << ',';
        if (r.finite()) os << r.gap() << ',' << format_fixed(r.gap_over_n());
        else os << ',';
        os << '\n';
    }
    os << "# weak=" << p.weak_label << " strong=" << p.strong_label << " grid=" << p.grid << '\n';
    if (const auto t = p.tail(tail_fraction))
        os << "# tail n>=" << t->from_n << " rows=" << t->rows << " gap_over_n min=" << format_fixed(t->min)
           << " max=" << format_fixed(t->max) << '\n';
    else
        os << "# tail: no finite rows\n";
    return os.str();
}

namespace {

Measurement parse_measurement(const std::string& f, std::size_t line)
{
    if (f == "inf") return {Measurement::Status::infinite, 0, 0};
    if (f.rfind("stuck@", 0) == 0) {
        const auto p = to_u64(std::string_view(f).substr(6));
        if (p) return {Measurement::Status::stuck, 0, *p};
    } else if (const auto v = to_u64(f)) {
        return {Measurement::Status::ok, *v, 0};
    }
    throw SpecError("profile line " + std::to_string(line) + ": bad length field '" + f + "'");
}

}  // namespace

DepthProfile load_profile_csv(std::string_view text)
{
    DepthProfile p;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t number = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto w = line.find("weak="), s = line.find(" strong="), g = line.find(" grid=");
            if (w != std::string::npos && s != std::string::npos && g != std::string::npos) {
                p.weak_label = line.substr(w + 5, s - w - 5);
                p.strong_label = line.substr(s + 8, g - s - 8);
                p.grid = line.substr(g + 6);
            }
            continue;
        }
        if (!header) {
            if (line != "n,weak_bits,strong_bits,gap,gap_over_n")
                throw SpecError("profile line " + std::to_string(number) + ": unexpected header");
            header = true;
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 5) throw SpecError("profile line " + std::to_string(number) + ": expected 5 fields");
        const auto n = to_u64(f[0]);
        if (!n) throw SpecError("profile line " + std::to_string(number) + ": bad n");
        ProfileRow r{*n, parse_measurement(f[1], number), parse_measurement(f[2], number)};
        if (!p.rows.empty() && r.n <= p.rows.back().n)
            throw SpecError("profile line " + std::to_string(number) + ": rows not sorted by n");
        if (r.finite()) {
            if (f[3] != std::to_string(r.gap()) || f[4] != format_fixed(r.gap_over_n()))
                throw SpecError("profile line " + std::to_string(number) + ": gap columns disagree with " +
                                std::to_string(r.weak.bits) + " - " + std::to_string(r.strong.bits));
        } else if (!f[3].empty() || !f[4].empty()) {
            throw SpecError("profile line " + std::to_string(number) + ": gap given for a flagged row");
        }
        p.rows.push_back(r);
    }
    if (!header) throw SpecError("profile: missing header");
    return p;
}

std::vector<RatioRow> ratio_rows(std::string_view s, const Compressor& c, const Grid& grid)
{
    const auto pts = grid.points();
    const auto m = c.measure(s, pts);
    std::vector<RatioRow> out;
    for (std::size_t i = 0; i < pts.size(); ++i) out.push_back({pts[i], m[i]});
    return out;
}

std::string ratio_csv(const std::vector<RatioRow>& rows, const std::string& label, double tail_fraction)
{
    std::ostringstream os;
    os << "n,bits,ratio\n";
    std::vector<std::uint64_t> n;
    std::vector<std::optional<double>> v;
    for (const auto& r : rows) {
        os << r.n << ',' << r.m.str() << ',' << (r.m.ok() ? format_fixed(r.ratio()) : "") << '\n';
        n.push_back(r.n);
        v.push_back(r.m.ok() ? std::optional<double>(r.ratio()) : std::nullopt);
    }
    os << "# compressor=" << label << '\n';
    if (const auto t = tail_summary(n, v, tail_fraction))
        os << "# tail n>=" << t->from_n << " rows=" << t->rows << " ratio min=" << format_fixed(t->min)
           << " max=" << format_fixed(t->max) << '\n';
    else
        os << "# tail: no finite rows\n";
    return os.str();
}

}  // namespace depthlab
