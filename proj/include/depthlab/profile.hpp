#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "depthlab/bits.hpp"

namespace depthlab {

/// Prefix lengths "a:b:step" (arithmetic) or "a:b:xF" (geometric, factor F).
struct Grid {
    std::uint64_t start = 1;
    std::uint64_t stop = 1;
    std::uint64_t step = 1;
    double factor = 0;  // > 1 for a geometric grid

    /// Ascending, duplicate-free, always containing start; stop is included
    /// when the progression hits it.
    std::vector<std::uint64_t> points() const;
    std::string str() const;
};

/// Throws std::invalid_argument on malformed text or an empty grid.
Grid parse_grid(std::string_view text);

/// Output length of one compressor on one prefix.
struct Measurement {
    enum class Status { ok, stuck, infinite };
    Status status = Status::ok;
    std::uint64_t bits = 0;
    std::uint64_t stuck_at = 0;  // input position, when stuck

    bool ok() const noexcept { return status == Status::ok; }
    std::string str() const;
};

class Compressor {
public:
    virtual ~Compressor() = default;
    virtual std::string label() const = 0;
    /// Output lengths on s↾n for each n in the ascending `grid` (n <= |s|).
    virtual std::vector<Measurement> measure(std::string_view s, const std::vector<std::uint64_t>& grid) const = 0;
};

/// identity-fst, identity-pdc, lz78, half-compressor(k,v,m), repeater(r),
/// fs-complexity(k), or a path to an FST or PDC text spec. Throws SpecError
/// for invalid specs and std::invalid_argument for unknown names.
std::unique_ptr<Compressor> make_compressor(const std::string& name);

struct TailSummary {
    std::uint64_t from_n = 0;
    std::size_t rows = 0;  // finite rows in the tail
    double min = 0;
    double max = 0;
};

/// Tail = rows with n >= n_min + (1 - fraction)(n_max - n_min), so a finer
/// grid over the same range only adds rows and can only widen [min, max].
std::optional<TailSummary> tail_summary(const std::vector<std::uint64_t>& n, const std::vector<std::optional<double>>& values,
                                        double fraction);

struct ProfileRow {
    std::uint64_t n = 0;
    Measurement weak, strong;

    bool finite() const noexcept { return weak.ok() && strong.ok(); }
    std::int64_t gap() const { return static_cast<std::int64_t>(weak.bits) - static_cast<std::int64_t>(strong.bits); }
    double gap_over_n() const { return n == 0 ? 0.0 : static_cast<double>(gap()) / static_cast<double>(n); }
};

struct DepthProfile {
    std::string weak_label, strong_label, grid;
    std::vector<ProfileRow> rows;

    std::optional<TailSummary> tail(double fraction = 0.5) const;
};

DepthProfile depth_profile(std::string_view s, const Compressor& weak, const Compressor& strong, const Grid& grid);

/// Header "n,weak_bits,strong_bits,gap,gap_over_n"; 6-decimal floats;
/// "stuck@p" / "inf" in a length column with empty gap fields; trailing
/// "#" lines with the labels and the tail bracket.
std::string profile_csv(const DepthProfile& p, double tail_fraction = 0.5);
/// Parses profile_csv output, re-checking every gap and gap/n. Throws
/// SpecError on a malformed file or an arithmetic mismatch.
DepthProfile load_profile_csv(std::string_view text);

struct RatioRow {
    std::uint64_t n = 0;
    Measurement m;
    double ratio() const { return n == 0 ? 0.0 : static_cast<double>(m.bits) / static_cast<double>(n); }
};

std::vector<RatioRow> ratio_rows(std::string_view s, const Compressor& c, const Grid& grid);
/// "n,bits,ratio" rows and a trailing tail min/max line (liminf/limsup proxies).
std::string ratio_csv(const std::vector<RatioRow>& rows, const std::string& label, double tail_fraction = 0.5);

std::string format_fixed(double x, int decimals = 6);

}  // namespace depthlab
