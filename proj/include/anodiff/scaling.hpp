#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace anodiff::scaling {

/// One mean-square-displacement sample: time, value, standard error of the
/// mean, and the ensemble size behind it.
struct MsdRecord {
    double t;
    double msd;
    double sem;
    std::uint64_t n;
};

struct MsdSeries {
    std::vector<MsdRecord> records;
};

/// Validates strictly increasing positive times, nonnegative msd/sem and
/// positive sample counts. Throws std::domain_error.
void validate(const MsdSeries& series);

enum class Regime { subdiffusive, normal, superdiffusive };
const char* to_string(Regime r);

/// Effective sublinear exponent 1 - log log(1/eps) / log(1/eps); requires
/// eps in (0, 1/e] and satisfies eps^s = eps * log(1/eps) identically.
double sublinear_exponent(double epsilon);

/// The sublinear scale eps * log(1/eps); tends to 0 with eps and exceeds
/// eps itself below 1/e.
double sublinear_scale(double epsilon);

/// MSD exponent for spatial/temporal dimensions in (0, 1]: s_space/s_time.
double msd_exponent(double s_space, double s_time);

/// subdiffusive if s_space < s_time, superdiffusive if s_space > s_time,
/// normal when equal to within 1e-12.
Regime classify_regime(double s_space, double s_time);

struct FitWindow {
    double t_min;
    double t_max;
};

struct FitResult {
    double exponent;
    double prefactor;
    double goodness;  ///< coefficient of determination in log-log space
    std::size_t n_points;
};

/// Log-log least squares of msd against t. Records with nonpositive msd
/// are skipped; at least 5 usable records must remain in the window. The
/// default window is the last decade [t_max/10, t_max] of the series.
/// With inverse_variance_weights, points are weighted by (msd/sem)^2 and
/// every windowed record needs sem > 0.
FitResult fit_power_law(const MsdSeries& series, std::optional<FitWindow> window = std::nullopt,
                        bool inverse_variance_weights = false);

struct TlogComparison {
    /// max over the grid of |t^s~(t) - t log(1/t)| / (t log(1/t)); an
    /// algebraic identity, so this is pure rounding noise.
    double max_identity_deviation;
    /// same deviation with the fixed exponent s instead of s~(t);
    /// reported for inspection, not required to be small.
    double max_fixed_s_deviation;
};

/// Compares t^s against t log(1/t) over a grid in (0, 1/e].
TlogComparison compare_tlog_vs_power(double s, std::span<const double> t_grid);

}  // namespace anodiff::scaling
