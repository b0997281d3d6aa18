#include "anodiff/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "anodiff/detail/linefit.hpp"

namespace anodiff::scaling {

void validate(const MsdSeries& series) {
    double prev = 0.0;
    for (const MsdRecord& r : series.records) {
        if (!(r.t > prev)) throw std::domain_error("msd times must be positive and strictly increasing");
        if (!(r.msd >= 0.0)) throw std::domain_error("msd values must be nonnegative");
        if (!(r.sem >= 0.0)) throw std::domain_error("msd standard errors must be nonnegative");
        if (r.n == 0) throw std::domain_error("msd sample counts must be positive");
        prev = r.t;
    }
}

const char* to_string(Regime r) {
    switch (r) {
        case Regime::subdiffusive: return "subdiffusive";
        case Regime::normal: return "normal";
        case Regime::superdiffusive: return "superdiffusive";
    }
    return "unknown";
}

namespace {
// 1/e is the boundary where log log(1/eps) changes sign.
bool below_inverse_e(double epsilon) {
    return epsilon > 0.0 && epsilon <= std::exp(-1.0);
}
}  // namespace

double sublinear_exponent(double epsilon) {
    if (!below_inverse_e(epsilon)) {
        throw std::domain_error("epsilon must lie in (0, 1/e]");
    }
    const double l1 = -std::log(epsilon);
    return 1.0 - std::log(l1) / l1;
}

double sublinear_scale(double epsilon) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
        throw std::domain_error("epsilon must lie in (0, 1)");
    }
    return epsilon * -std::log(epsilon);
}

double msd_exponent(double s_space, double s_time) {
    if (!(s_space > 0.0) || !(s_space <= 1.0) || !(s_time > 0.0) || !(s_time <= 1.0)) {
        throw std::domain_error("dimensions must lie in (0, 1]");
    }
    return s_space / s_time;
}

Regime classify_regime(double s_space, double s_time) {
    msd_exponent(s_space, s_time);  // shared precondition
    if (std::abs(s_space - s_time) <= 1e-12) return Regime::normal;
    return s_space < s_time ? Regime::subdiffusive : Regime::superdiffusive;
}

FitResult fit_power_law(const MsdSeries& series, std::optional<FitWindow> window,
                        bool inverse_variance_weights) {
    validate(series);
    if (series.records.empty()) throw std::domain_error("empty msd series");

    FitWindow w{};
    if (window) {
        w = *window;
        if (!(w.t_min < w.t_max)) throw std::domain_error("fit window is empty");
    } else {
        const double t_max = series.records.back().t;
        w = FitWindow{t_max / 10.0, t_max};  // late-time asymptotics
    }

    std::vector<double> lx, ly, lw;
    for (const MsdRecord& r : series.records) {
        if (r.t < w.t_min || r.t > w.t_max) continue;
        if (!(r.msd > 0.0)) continue;
        if (inverse_variance_weights) {
            if (!(r.sem > 0.0)) {
                throw std::domain_error("inverse-variance weighting needs positive stderr");
            }
            const double rel = r.sem / r.msd;  // delta method on log(msd)
            lw.push_back(1.0 / (rel * rel));
        }
        lx.push_back(std::log(r.t));
        ly.push_back(std::log(r.msd));
    }
    if (lx.size() < 5) {
        throw std::domain_error("fewer than 5 positive msd records in the fit window");
    }

    const detail::LineFit f = detail::fit_line(lx, ly, lw);
    return FitResult{f.slope, std::exp(f.intercept), f.r2, lx.size()};
}

TlogComparison compare_tlog_vs_power(double s, std::span<const double> t_grid) {
    if (!(s > 0.0) || !(s < 1.0)) throw std::domain_error("s must lie in (0, 1)");
    if (t_grid.empty()) throw std::domain_error("empty grid");

    TlogComparison out{0.0, 0.0};
    for (double t : t_grid) {
        if (!below_inverse_e(t)) throw std::domain_error("grid values must lie in (0, 1/e]");
        const double reference = sublinear_scale(t);
        const double identity = std::abs(std::pow(t, sublinear_exponent(t)) - reference) / reference;
        const double fixed_s = std::abs(std::pow(t, s) - reference) / reference;
        out.max_identity_deviation = std::max(out.max_identity_deviation, identity);
        out.max_fixed_s_deviation = std::max(out.max_fixed_s_deviation, fixed_s);
    }
    return out;
}

}  // namespace anodiff::scaling
