#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

namespace anodiff::detail {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Ordinary (or weighted, when w is nonempty) least squares of y on x.
inline LineFit fit_line(std::span<const double> x, std::span<const double> y,
                        std::span<const double> w = {}) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw std::domain_error("fit_line needs >= 2 matched points");
    if (!w.empty() && w.size() != n) throw std::domain_error("weight vector size mismatch");

    double sw = 0.0, sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double wi = w.empty() ? 1.0 : w[i];
        sw += wi;
        sx += wi * x[i];
        sy += wi * y[i];
    }
    const double mx = sx / sw;
    const double my = sy / sw;

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double wi = w.empty() ? 1.0 : w[i];
        sxx += wi * (x[i] - mx) * (x[i] - mx);
        sxy += wi * (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw std::domain_error("fit_line abscissae are degenerate");

    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;

    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double wi = w.empty() ? 1.0 : w[i];
        const double e = y[i] - (f.intercept + f.slope * x[i]);
        ss_res += wi * e * e;
        ss_tot += wi * (y[i] - my) * (y[i] - my);
    }
    f.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

}  // namespace anodiff::detail
