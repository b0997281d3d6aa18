#include "anodiff/scaling.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

using namespace anodiff::scaling;

namespace {

MsdSeries power_series(double prefactor, double exponent, double t0, double t1, int n) {
    MsdSeries s;
    for (int i = 0; i < n; ++i) {
        const double t = t0 * std::pow(t1 / t0, static_cast<double>(i) / (n - 1));
        s.records.push_back({t, prefactor * std::pow(t, exponent), 0.0, 100});
    }
    return s;
}

}  // namespace

TEST_CASE("sublinear_exponent") {
    CHECK(sublinear_exponent(std::exp(-std::exp(1.0))) ==
          doctest::Approx(1.0 - 1.0 / std::exp(1.0)).epsilon(1e-14));
    CHECK(sublinear_exponent(std::exp(-1.0)) == doctest::Approx(1.0).epsilon(1e-14));
    const double l = 6.0 * std::log(10.0);
    CHECK(sublinear_exponent(1e-6) == doctest::Approx(1.0 - std::log(l) / l).epsilon(1e-14));
    CHECK_THROWS_AS(sublinear_exponent(0.5), std::domain_error);
    CHECK_THROWS_AS(sublinear_exponent(0.0), std::domain_error);
}

TEST_CASE("sublinear identity eps^s~ = eps log(1/eps)") {
    for (int k = 2; k <= 12; ++k) {
        const double eps = std::pow(10.0, -k);
        const double lhs = std::pow(eps, sublinear_exponent(eps));
        const double rhs = sublinear_scale(eps);
        CHECK(std::abs(lhs - rhs) / rhs < 1e-12);
    }
}

TEST_CASE("sublinear_scale") {
    CHECK(sublinear_scale(std::exp(-1.0)) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(sublinear_scale(1e-3) == doctest::Approx(1e-3 * 3.0 * std::log(10.0)).epsilon(1e-14));
    CHECK(sublinear_scale(std::exp(-std::exp(1.0))) ==
          doctest::Approx(std::exp(1.0 - std::exp(1.0))).epsilon(1e-13));

    SUBCASE("exceeds eps below 1/e, vanishes with eps") {
        double prev_ratio = 0.0;
        double prev_scale = 1.0;
        for (int k = 1; k <= 14; ++k) {
            const double eps = std::pow(10.0, -k);
            const double s = sublinear_scale(eps);
            CHECK(s > eps);
            CHECK(s < prev_scale);
            CHECK(s / eps > prev_ratio);  // diverging ratio
            prev_ratio = s / eps;
            prev_scale = s;
        }
    }
    CHECK_THROWS_AS(sublinear_scale(0.0), std::domain_error);
    CHECK_THROWS_AS(sublinear_scale(1.0), std::domain_error);
}

TEST_CASE("msd_exponent and classify_regime") {
    CHECK(msd_exponent(0.8, 0.8) == 1.0);
    const double s = std::log(2.0) / std::log(3.0);
    CHECK(msd_exponent(s, 1.0) == doctest::Approx(s).epsilon(1e-15));
    CHECK(msd_exponent(0.9, 0.45) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(msd_exponent(0.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(msd_exponent(0.5, 1.5), std::domain_error);

    CHECK(classify_regime(0.63, 1.0) == Regime::subdiffusive);
    CHECK(classify_regime(0.8, 0.8) == Regime::normal);
    CHECK(classify_regime(0.9, 0.6) == Regime::superdiffusive);
    CHECK(classify_regime(0.7, 0.7 + 1e-13) == Regime::normal);  // tolerance band
    for (double v : {0.1, 0.37, 0.99, 1.0}) {
        CHECK(classify_regime(v, v) == Regime::normal);
    }
}

TEST_CASE("fit_power_law recovers exact synthetic laws") {
    SUBCASE("3 t^0.5 over 20 points") {
        const auto fit = fit_power_law(power_series(3.0, 0.5, 1.0, 100.0, 20),
                                       FitWindow{1.0, 100.0});
        CHECK(std::abs(fit.exponent - 0.5) < 1e-10);
        CHECK(std::abs(fit.prefactor - 3.0) < 1e-10);
        CHECK(fit.goodness == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(fit.n_points == 20);
    }
    SUBCASE("plain diffusion t^1") {
        const auto fit = fit_power_law(power_series(1.0, 1.0, 1.0, 1000.0, 30),
                                       FitWindow{1.0, 1000.0});
        CHECK(std::abs(fit.exponent - 1.0) < 1e-10);
        CHECK(std::abs(fit.prefactor - 1.0) < 1e-10);
    }
    SUBCASE("scale equivariance: prefactor moves, exponent does not") {
        const auto base = power_series(2.0, 0.7, 1.0, 500.0, 25);
        MsdSeries scaled = base;
        for (auto& r : scaled.records) r.msd *= 5.0;
        const auto f1 = fit_power_law(base, FitWindow{1.0, 500.0});
        const auto f2 = fit_power_law(scaled, FitWindow{1.0, 500.0});
        CHECK(std::abs(f1.exponent - f2.exponent) < 1e-12);
        CHECK(f2.prefactor == doctest::Approx(5.0 * f1.prefactor).epsilon(1e-12));
    }
    SUBCASE("default window is the last decade") {
        // early-time exponent 2, late-time exponent 0.5: the default fit
        // must see only the tail
        MsdSeries s;
        for (int i = 0; i < 64; ++i) {
            const double t = std::pow(10.0, i / 16.0);  // 1 .. 10^4
            const double msd = t < 100.0 ? t * t : 1e4 * std::sqrt(t / 100.0);
            s.records.push_back({t, msd, 0.0, 10});
        }
        const auto fit = fit_power_law(s);
        CHECK(std::abs(fit.exponent - 0.5) < 1e-10);
    }
    SUBCASE("weighted fit accepts positive stderr") {
        MsdSeries s = power_series(1.0, 0.6, 1.0, 100.0, 12);
        for (auto& r : s.records) r.sem = 0.05 * r.msd;
        const auto fit = fit_power_law(s, FitWindow{1.0, 100.0}, true);
        CHECK(std::abs(fit.exponent - 0.6) < 1e-10);
        for (auto& r : s.records) r.sem = 0.0;
        CHECK_THROWS_AS(fit_power_law(s, FitWindow{1.0, 100.0}, true), std::domain_error);
    }
    SUBCASE("insufficient or nonpositive data is a fit error") {
        CHECK_THROWS_AS(fit_power_law(power_series(1.0, 1.0, 1.0, 10.0, 4),
                                      FitWindow{1.0, 10.0}),
                        std::domain_error);
        MsdSeries zeros;
        for (int i = 1; i <= 10; ++i) zeros.records.push_back({double(i), 0.0, 0.0, 10});
        CHECK_THROWS_AS(fit_power_law(zeros, FitWindow{1.0, 10.0}), std::domain_error);
    }
}

TEST_CASE("msd series validation") {
    MsdSeries bad;
    bad.records = {{1.0, 1.0, 0.0, 10}, {1.0, 2.0, 0.0, 10}};
    CHECK_THROWS_AS(validate(bad), std::domain_error);
    bad.records = {{2.0, 1.0, 0.0, 10}, {1.0, 2.0, 0.0, 10}};
    CHECK_THROWS_AS(validate(bad), std::domain_error);
    bad.records = {{1.0, -1.0, 0.0, 10}};
    CHECK_THROWS_AS(validate(bad), std::domain_error);
}

TEST_CASE("compare_tlog_vs_power") {
    std::vector<double> grid;
    for (int k = 2; k <= 10; ++k) grid.push_back(std::pow(10.0, -k));

    SUBCASE("the t-dependent exponent is an identity") {
        const auto cmp = compare_tlog_vs_power(0.63, grid);
        CHECK(cmp.max_identity_deviation < 1e-12);
        CHECK(cmp.max_fixed_s_deviation > 0.0);  // reported, not small
    }
    SUBCASE("fixed s matches only where s~(t) = s") {
        const double t = std::exp(-std::exp(1.0));
        const auto cmp = compare_tlog_vs_power(1.0 - 1.0 / std::exp(1.0), std::vector<double>{t});
        CHECK(cmp.max_fixed_s_deviation < 1e-12);
    }
    SUBCASE("grid validation") {
        CHECK_THROWS_AS(compare_tlog_vs_power(0.63, std::vector<double>{0.5}), std::domain_error);
        CHECK_THROWS_AS(compare_tlog_vs_power(1.0, grid), std::domain_error);
        CHECK_THROWS_AS(compare_tlog_vs_power(0.5, std::vector<double>{}), std::domain_error);
    }
}
