#pragma once

#include <cmath>
#include <span>

#include "anodiff/cantor.hpp"

namespace anodiff::um {

/// Resolution scale of a computation; valuations are taken relative to it.
struct ScaleContext {
    double epsilon;
};

/// Validates 0 < epsilon < 1 (so log(1/epsilon) > 0).
ScaleContext make_scale(double epsilon);

/// A relative infinitesimal, in one of two representations:
///  - numeric: a value t with 0 <= t < epsilon at the context scale;
///  - exponent form: delta > 0 standing for epsilon^(1+delta) in the
///    epsilon -> 0 limit, where the ultrametric axioms become exact.
class Infinitesimal {
  public:
    static Infinitesimal numeric(double value);
    static Infinitesimal exponent(double delta);

    bool is_numeric() const { return numeric_; }
    double value() const;  ///< numeric form only
    double delta() const;  ///< exponent form only

  private:
    Infinitesimal(bool numeric, double v) : numeric_(numeric), v_(v) {}
    bool numeric_;
    double v_;
};

/// Scale-invariant absolute value: log(eps/|t|) / log(1/eps) for numeric
/// infinitesimals, delta for exponent form, and 0 for the hard zero.
/// A numeric value with |t| >= eps is not an infinitesimal at this scale.
double valuation(const ScaleContext& ctx, const Infinitesimal& x);

/// Exponent-form sum: eps^(1+a) + eps^(1+b) ~ eps^(1+min(a,b)) as eps -> 0.
Infinitesimal add_exponent_form(const Infinitesimal& a, const Infinitesimal& b);

/// Outcome of a finite-scale check of the strong triangle inequality.
/// slack_used reports how far the sum's valuation falls below the
/// ultrametric ideal min(v(a), v(b)); it is bounded by allowed_slack =
/// log 2 / log(1/eps) and shrinks as eps decreases.
struct TriangleReport {
    bool holds;
    double sum_valuation;
    double max_valuation;
    double allowed_slack;
    double slack_used;
};

/// Checks v(a+b) <= max(v(a), v(b)) + log 2/log(1/eps) for numeric a, b
/// with a + b still below the scale.
TriangleReport strong_triangle_check(const ScaleContext& ctx, const Infinitesimal& a,
                                     const Infinitesimal& b);

/// Inversion rule partner of t > eps: returns c * eps^2 / t, which lies
/// below eps whenever c <= 1.
double inversion_partner(double t, const ScaleContext& ctx, double c = 1.0);

/// Truncation depth cap for cantor_function.
inline constexpr int kMaxCantorDepth = 64;

/// Devil's-staircase value for the two-map family: constant on every gap,
/// nondecreasing, with phi(0) = 0 and phi(eps0) = 1. On points that stay
/// inside retained intervals the binary value is truncated after `depth`
/// levels (error at most 2^-depth).
double cantor_function(const cantor::IfsParams& params, double x, int depth = 48);

/// Gap valuation i * 3^(-m s) for the gap with cumulative index i at
/// resolution level m. For the middle-third dimension s = log 2/log 3 the
/// value reduces algebraically to i * 2^-m and is computed through that
/// form so the identity holds bit-exactly.
double gap_valuation(int m, std::uint64_t i, double s);

/// Deformed variable T(t) = t^(1-v) for t in (0,1), v >= 0; equals t
/// exactly when v = 0.
double deformed_variable(double t, double v);

/// Max central-difference residual |dv/dxi + v| of v(x) = 1/(k log(x/x0))
/// in the doubly logarithmic variable xi = log log(x/x0), step 1e-4.
/// Every sample must satisfy log(x/x0) > 1.
double valuation_ode_residual(double k, double x0, std::span<const double> x_samples);

/// Scale-invariant jump increment 1 + eps^(1/s). s = 1 recovers the
/// ordinary linear increment; s = 0 is an essential singularity.
double jump_increment(double epsilon, double s);

}  // namespace anodiff::um
