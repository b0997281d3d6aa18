#include "anodiff/ultrametric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace anodiff::um {

ScaleContext make_scale(double epsilon) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
        throw std::domain_error("scale epsilon must lie in (0, 1)");
    }
    return ScaleContext{epsilon};
}

Infinitesimal Infinitesimal::numeric(double value) {
    if (!(value >= 0.0)) throw std::domain_error("numeric infinitesimal must be nonnegative");
    return Infinitesimal(true, value);
}

Infinitesimal Infinitesimal::exponent(double delta) {
    if (!(delta > 0.0)) throw std::domain_error("exponent-form delta must be positive");
    return Infinitesimal(false, delta);
}

double Infinitesimal::value() const {
    if (!numeric_) throw std::domain_error("infinitesimal is not in numeric form");
    return v_;
}

double Infinitesimal::delta() const {
    if (numeric_) throw std::domain_error("infinitesimal is not in exponent form");
    return v_;
}

double valuation(const ScaleContext& ctx, const Infinitesimal& x) {
    if (!(ctx.epsilon > 0.0) || !(ctx.epsilon < 1.0)) {
        throw std::domain_error("scale epsilon must lie in (0, 1)");
    }
    if (!x.is_numeric()) return x.delta();
    const double t = x.value();
    if (t == 0.0) return 0.0;  // the hard zero, by convention
    if (!(t < ctx.epsilon)) {
        throw std::domain_error("value is not a relative infinitesimal at this scale");
    }
    // log(eps/t) / log(1/eps) == log(t)/log(eps) - 1
    return std::log(t) / std::log(ctx.epsilon) - 1.0;
}

Infinitesimal add_exponent_form(const Infinitesimal& a, const Infinitesimal& b) {
    if (a.is_numeric() || b.is_numeric()) {
        throw std::domain_error("add_exponent_form requires both operands in exponent form");
    }
    return Infinitesimal::exponent(std::min(a.delta(), b.delta()));
}

TriangleReport strong_triangle_check(const ScaleContext& ctx, const Infinitesimal& a,
                                     const Infinitesimal& b) {
    if (!a.is_numeric() || !b.is_numeric()) {
        throw std::domain_error("strong_triangle_check requires numeric infinitesimals");
    }
    const double sum = a.value() + b.value();
    if (!(sum < ctx.epsilon)) {
        throw std::domain_error("|a + b| must stay below the scale epsilon");
    }
    const double va = valuation(ctx, a);
    const double vb = valuation(ctx, b);
    const double vs = valuation(ctx, Infinitesimal::numeric(sum));

    TriangleReport r;
    r.sum_valuation = vs;
    r.max_valuation = std::max(va, vb);
    r.allowed_slack = std::log(2.0) / -std::log(ctx.epsilon);
    r.holds = vs <= r.max_valuation + r.allowed_slack;
    r.slack_used = std::max(0.0, std::min(va, vb) - vs);
    return r;
}

double inversion_partner(double t, const ScaleContext& ctx, double c) {
    if (!(c > 0.0)) throw std::domain_error("proportionality constant must be positive");
    if (!(t > ctx.epsilon)) {
        throw std::domain_error("inversion requires t > epsilon");
    }
    return c * ctx.epsilon * ctx.epsilon / t;
}

double cantor_function(const cantor::IfsParams& params, double x, int depth) {
    if (!(params.eps0 > 0.0) || !(params.beta > 0.0) || !(params.beta < 0.5)) {
        throw std::domain_error("invalid IFS parameters");
    }
    if (depth < 1 || depth > kMaxCantorDepth) {
        throw std::domain_error("cantor_function depth out of range");
    }
    if (!(x >= 0.0) || !(x <= params.eps0)) {
        throw std::domain_error("x must lie in [0, eps0]");
    }
    if (x == params.eps0) return 1.0;

    double lo = 0.0;
    double w = params.eps0;
    double value = 0.0;
    double half = 0.5;
    for (int i = 0; i < depth; ++i) {
        const double cw = params.beta * w;
        const double gap_lo = lo + cw;
        const double gap_hi = lo + w - cw;
        if (x <= gap_lo) {
            w = cw;
        } else if (x >= gap_hi) {
            lo = gap_hi;
            w = cw;
            value += half;
        } else {
            return value + half;  // constant on the whole gap
        }
        half *= 0.5;
    }
    return value;
}

double gap_valuation(int m, std::uint64_t i, double s) {
    if (m < 1 || m > 62) throw std::domain_error("resolution level m out of range");
    if (i < 1 || i >= (std::uint64_t{1} << m)) {
        throw std::domain_error("gap index must lie in [1, 2^m - 1]");
    }
    if (!(s > 0.0)) throw std::domain_error("dimension s must be positive");

    static const double kMiddleThirdDim = std::log(2.0) / std::log(3.0);
    if (s == kMiddleThirdDim) {
        // 3^(-m s) == 2^-m algebraically; the reduced form keeps it exact.
        return std::ldexp(static_cast<double>(i), -m);
    }
    return static_cast<double>(i) * std::pow(3.0, -static_cast<double>(m) * s);
}

double deformed_variable(double t, double v) {
    if (!(t > 0.0) || !(t < 1.0)) throw std::domain_error("t must lie in (0, 1)");
    if (!(v >= 0.0)) throw std::domain_error("valuation v must be nonnegative");
    return std::pow(t, 1.0 - v);
}

double valuation_ode_residual(double k, double x0, std::span<const double> x_samples) {
    if (!(k > 0.0)) throw std::domain_error("k must be positive");
    if (!(x0 > 0.0)) throw std::domain_error("x0 must be positive");

    constexpr double h = 1e-4;
    double max_residual = 0.0;
    for (double x : x_samples) {
        const double r = std::log(x / x0);
        if (!(r > 1.0)) {
            throw std::domain_error("sample must satisfy log(x/x0) > 1");
        }
        const double xi = std::log(r);
        const auto v = [k](double z) { return 1.0 / (k * std::exp(z)); };
        const double fd = (v(xi + h) - v(xi - h)) / (2.0 * h);
        max_residual = std::max(max_residual, std::abs(fd + v(xi)));
    }
    return max_residual;
}

double jump_increment(double epsilon, double s) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
        throw std::domain_error("epsilon must lie in (0, 1)");
    }
    if (s == 0.0) {
        throw std::domain_error(
            "s = 0 is an essential singularity: the gap structure collapses to a point");
    }
    if (!(s > 0.0) || !(s <= 1.0)) throw std::domain_error("s must lie in (0, 1]");
    return 1.0 + std::pow(epsilon, 1.0 / s);
}

}  // namespace anodiff::um
