#include "anodiff/diffusion.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "anodiff/detail/integrate.hpp"

using namespace anodiff::diffusion;

namespace {

const double kPi = std::acos(-1.0);

// Independent scalar route for the stretched propagator, entirely in logs.
double propagator_log_route(double x, double t, const PropagatorParams& p) {
    const double log_u2 = 2.0 * p.alpha * std::log(std::abs(x));
    const double log_ratio = log_u2 - p.beta * std::log(t);
    return p.A * std::exp(-0.5 * p.beta * std::log(t) -
                          p.lambda * std::exp((1.0 + p.nu) * log_ratio));
}

// Closed-form normalization oracle: integral of exp(-lambda |y|^(2(1+nu)))
// is 2 Gamma(1 + 1/p) lambda^(-1/p) with p = 2 (1 + nu).
double normalize_oracle(const PropagatorParams& p) {
    const double q = 2.0 * (1.0 + p.nu);
    return std::pow(p.lambda, 1.0 / q) / (2.0 * std::tgamma(1.0 + 1.0 / q) * p.A);
}

// Closed-form second-moment slope oracle.
double msd_slope_oracle(const PropagatorParams& p) {
    const double q = 2.0 * (1.0 + p.nu);
    return std::pow(p.lambda, -2.0 / q) * std::tgamma(3.0 / q) / std::tgamma(1.0 / q);
}

}  // namespace

TEST_CASE("gaussian_propagator") {
    CHECK(gaussian_propagator(0.0, 1.0, 1.0) == 1.0);
    CHECK(gaussian_propagator(2.0, 1.0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK_THROWS_AS(gaussian_propagator(0.0, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(gaussian_propagator(0.0, -1.0, 1.0), std::domain_error);

    SUBCASE("quadrature oracle: integrates to A sqrt(4 pi t) / sqrt(t)") {
        for (double t : {0.5, 1.0, 2.0}) {
            const double integral = anodiff::detail::integrate(
                [t](double x) { return gaussian_propagator(x, t, 1.0); }, -40.0 * std::sqrt(t),
                40.0 * std::sqrt(t), 1e-12);
            CHECK(integral == doctest::Approx(std::sqrt(4.0 * kPi)).epsilon(1e-10));
        }
    }
}

TEST_CASE("ode_reduction_residual") {
    const std::vector<double> samples{0.0, 0.1, 1.0, 10.0};
    CHECK(ode_reduction_residual(samples) < 1e-8);

    // the 1/4-rate exponential misses dw/du = -w by a factor 4; the
    // residual is order one and only reported
    const double off = ode_reduction_residual(std::vector<double>{0.1, 1.0}, 0.25);
    CHECK(off > 0.1);
    CHECK_THROWS_AS(ode_reduction_residual(std::vector<double>{-1.0}), std::domain_error);
}

TEST_CASE("stretched_propagator") {
    SUBCASE("reduces to the gaussian for alpha = beta = 1, nu = 0, lambda = 1/4") {
        const auto p = make_propagator_params(1.0, 0.25, 1.0, 1.0, 0.0);
        double max_diff = 0.0;
        for (int i = 0; i <= 100; ++i) {
            const double x = -5.0 + 0.1 * i;
            for (int j = 0; j <= 10; ++j) {
                const double t = 0.5 + 0.15 * j;
                max_diff = std::max(max_diff, std::abs(stretched_propagator(x, t, p) -
                                                       gaussian_propagator(x, t, 1.0)));
            }
        }
        CHECK(max_diff <= 1e-14);
    }
    SUBCASE("peak value is A") {
        const auto p = make_propagator_params(0.7, 1.3, 1.6, 1.2, 0.4);
        CHECK(stretched_propagator(0.0, 1.0, p) == doctest::Approx(0.7).epsilon(1e-15));
    }
    SUBCASE("agrees with an independent log-space evaluation") {
        const auto p =
            make_propagator_params(1.0, 1.0, 1.0 / 0.6309297535714574, 1.0, 0.0);
        CHECK(stretched_propagator(0.5, 0.5, p) ==
              doctest::Approx(propagator_log_route(0.5, 0.5, p)).epsilon(1e-14));
        const auto q = make_propagator_params(0.4, 2.0, 1.3, 1.7, 0.8);
        for (double x : {0.2, 0.9, 2.5}) {
            for (double t : {0.3, 1.0, 4.0}) {
                CHECK(stretched_propagator(x, t, q) ==
                      doctest::Approx(propagator_log_route(x, t, q)).epsilon(1e-14));
            }
        }
    }
    SUBCASE("even in x, decreasing in |x|, nonnegative") {
        const auto p = make_propagator_params(1.0, 0.8, 1.4, 1.1, 0.5);
        double prev = stretched_propagator(0.0, 1.0, p);
        for (double x = 0.1; x < 4.0; x += 0.1) {
            const double w = stretched_propagator(x, 1.0, p);
            CHECK(w >= 0.0);
            CHECK(w <= prev);
            CHECK(stretched_propagator(-x, 1.0, p) == w);
            prev = w;
        }
    }
    SUBCASE("validation") {
        CHECK_THROWS_AS(make_propagator_params(1.0, 0.0, 1.0, 1.0, 0.0), std::domain_error);
        CHECK_THROWS_AS(make_propagator_params(1.0, 1.0, 0.9, 1.0, 0.0), std::domain_error);
        CHECK_THROWS_AS(make_propagator_params(1.0, 1.0, 1.0, 1.0, -0.1), std::domain_error);
        const auto p = make_propagator_params(1.0, 1.0, 1.0, 1.0, 0.0);
        CHECK_THROWS_AS(stretched_propagator(0.0, 0.0, p), std::domain_error);
    }
}

TEST_CASE("deformed_heat_residual") {
    // narrow slab of the acceptance grid; same spacings, fast
    const Grid2D grid = make_uniform_grid(-1.0, 1.0, 1e-3, 0.5, 0.6, 1e-3);

    SUBCASE("heat kernel in deformed variables") {
        const auto p =
            make_propagator_params(1.0, 0.25, 1.0 / 0.6309297535714574, 1.0, 0.0);
        CHECK(deformed_heat_residual(p, grid) < 1e-4);
    }
    SUBCASE("wrong rate is a negative control") {
        const auto p = make_propagator_params(1.0, 0.5, 1.0, 1.0, 0.0);
        CHECK(deformed_heat_residual(p, grid) > 1e-2);
    }
    SUBCASE("nu != 0 is out of ordinary-calculus scope") {
        const auto p = make_propagator_params(1.0, 0.25, 1.0, 1.0, 0.3);
        CHECK_THROWS_AS(deformed_heat_residual(p, grid), std::domain_error);
    }
    SUBCASE("grid validation") {
        CHECK_THROWS_AS(make_uniform_grid(-1.0, 1.0, 1e-3, 0.005, 2.0, 1e-3), std::domain_error);
        CHECK_THROWS_AS(make_uniform_grid(1.0, -1.0, 1e-3, 0.5, 2.0, 1e-3), std::domain_error);
        CHECK_THROWS_AS(make_uniform_grid(-1.0, 1.0, 0.0, 0.5, 2.0, 1e-3), std::domain_error);
    }
}

TEST_CASE("normalize") {
    SUBCASE("gaussian cases") {
        CHECK(normalize(make_propagator_params(1.0, kPi, 1.0, 1.0, 0.0), 1.0) ==
              doctest::Approx(1.0).epsilon(1e-10));
        CHECK(normalize(make_propagator_params(1.0, 0.25, 1.0, 1.0, 0.0), 1.0) ==
              doctest::Approx(1.0 / std::sqrt(4.0 * kPi)).epsilon(1e-10));
    }
    SUBCASE("tau independence for stretched slices") {
        const auto p = make_propagator_params(1.0, 1.0, 1.0, 1.0, 1.0);
        const double a1 = normalize(p, 0.5);
        const double a2 = normalize(p, 1.0);
        const double a3 = normalize(p, 2.0);
        CHECK(std::abs(a1 - a2) <= 1e-8 * a2);
        CHECK(std::abs(a3 - a2) <= 1e-8 * a2);
    }
    SUBCASE("gamma-function oracle across nu") {
        for (double nu : {0.0, 0.5, 1.0, 2.0}) {
            const auto p = make_propagator_params(1.0, 1.7, 1.0, 1.0, nu);
            CHECK(normalize(p, 1.0) == doctest::Approx(normalize_oracle(p)).epsilon(1e-9));
        }
    }
    SUBCASE("homogeneous in the amplitude") {
        const auto p1 = make_propagator_params(1.0, 1.0, 1.0, 1.0, 0.5);
        const auto p2 = make_propagator_params(2.0, 1.0, 1.0, 1.0, 0.5);
        CHECK(normalize(p2, 1.0) == doctest::Approx(0.5 * normalize(p1, 1.0)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(normalize(make_propagator_params(1.0, 1.0, 1.0, 1.0, 0.0), 0.0),
                    std::domain_error);
}

TEST_CASE("propagator_msd") {
    const std::vector<double> taus{0.5, 1.0, 2.0};

    SUBCASE("gaussian variance 2 tau") {
        const auto p = make_propagator_params(1.0, 0.25, 1.0, 1.0, 0.0);
        const auto m = propagator_msd(p, taus);
        for (const auto& [tau, m2] : m) {
            CHECK(m2 == doctest::Approx(2.0 * tau).epsilon(1e-8));
        }
    }
    SUBCASE("doubling tau doubles the moment for every nu") {
        for (double nu : {0.0, 0.5, 1.0}) {
            const auto p = make_propagator_params(1.0, 1.0, 1.0, 1.0, nu);
            const auto m = propagator_msd(p, taus);
            CHECK(m[2].second / m[1].second == doctest::Approx(2.0).epsilon(1e-6));
            CHECK(m[1].second / m[0].second == doctest::Approx(2.0).epsilon(1e-6));
        }
    }
    SUBCASE("slope constant matches the gamma oracle and falls with nu") {
        double prev = 1e9;
        for (double nu : {0.0, 1.0, 2.0}) {
            const auto p = make_propagator_params(1.0, 1.0, 1.0, 1.0, nu);
            const auto m = propagator_msd(p, std::vector<double>{1.0});
            CHECK(m[0].second == doctest::Approx(msd_slope_oracle(p)).epsilon(1e-8));
            CHECK(m[0].second < prev);
            prev = m[0].second;
        }
    }
    CHECK_THROWS_AS(propagator_msd(make_propagator_params(1.0, 1.0, 1.0, 1.0, 0.0),
                                   std::vector<double>{}),
                    std::domain_error);
}
