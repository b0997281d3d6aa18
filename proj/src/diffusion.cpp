#include "anodiff/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "anodiff/detail/integrate.hpp"

namespace anodiff::diffusion {

PropagatorParams make_propagator_params(double A, double lambda, double alpha, double beta,
                                        double nu) {
    if (!(A > 0.0)) throw std::domain_error("normalization A must be positive");
    if (!(lambda > 0.0)) throw std::domain_error("rate lambda must be positive");
    if (!(alpha >= 1.0)) throw std::domain_error("alpha must be >= 1");
    if (!(beta >= 1.0)) throw std::domain_error("beta must be >= 1");
    if (!(nu >= 0.0)) throw std::domain_error("nu must be nonnegative");
    return PropagatorParams{A, lambda, alpha, beta, nu};
}

double gaussian_propagator(double x, double t, double A) {
    if (!(t > 0.0)) throw std::domain_error("t must be positive");
    if (!(A > 0.0)) throw std::domain_error("normalization A must be positive");
    return A / std::sqrt(t) * std::exp(-x * x / (4.0 * t));
}

double ode_reduction_residual(std::span<const double> u_samples, double decay_rate) {
    if (!(decay_rate > 0.0)) throw std::domain_error("decay rate must be positive");
    constexpr double h = 1e-5;
    double max_residual = 0.0;
    for (double u : u_samples) {
        if (!(u >= 0.0)) throw std::domain_error("samples must be nonnegative");
        const auto w = [decay_rate](double z) { return std::exp(-decay_rate * z); };
        const double fd = (w(u + h) - w(u - h)) / (2.0 * h);
        max_residual = std::max(max_residual, std::abs(fd + w(u)));
    }
    return max_residual;
}

double stretched_propagator(double x_tilde, double t_tilde, const PropagatorParams& p) {
    if (!(t_tilde > 0.0)) throw std::domain_error("t must be positive");
    const double u = std::pow(std::abs(x_tilde), p.alpha);
    const double tau = std::pow(t_tilde, p.beta);
    return p.A * std::pow(t_tilde, -0.5 * p.beta) *
           std::exp(-p.lambda * std::pow(u * u / tau, 1.0 + p.nu));
}

Grid2D make_uniform_grid(double u_min, double u_max, double du, double tau_min, double tau_max,
                         double dtau) {
    if (!(du > 0.0) || !(dtau > 0.0)) throw std::domain_error("grid spacings must be positive");
    if (!(u_min < u_max) || !(tau_min < tau_max)) throw std::domain_error("empty grid range");
    if (!(tau_min >= 10.0 * dtau)) {
        throw std::domain_error("tau must stay at least 10 steps away from 0");
    }
    Grid2D g;
    g.du = du;
    g.dtau = dtau;
    const auto fill = [](std::vector<double>& axis, double lo, double hi, double step) {
        const auto count = static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
        axis.reserve(count);
        for (std::size_t i = 0; i < count; ++i) axis.push_back(lo + static_cast<double>(i) * step);
    };
    fill(g.u, u_min, u_max, du);
    fill(g.tau, tau_min, tau_max, dtau);
    if (g.u.size() < 3 || g.tau.size() < 3) throw std::domain_error("grid too small for stencils");
    return g;
}

double deformed_heat_residual(const PropagatorParams& p, const Grid2D& grid) {
    if (p.nu != 0.0) {
        throw std::domain_error(
            "deformed_heat_residual supports nu = 0 only: for nu != 0 the deformed calculus is "
            "not expressible through ordinary finite differences");
    }
    const std::size_t nu_pts = grid.u.size();
    const std::size_t nt_pts = grid.tau.size();

    // One propagator evaluation per node, routed through the deformed
    // variables x = u^(1/alpha), t = tau^(1/beta).
    std::vector<double> w(nu_pts * nt_pts);
    for (std::size_t ti = 0; ti < nt_pts; ++ti) {
        const double t_tilde = std::pow(grid.tau[ti], 1.0 / p.beta);
        for (std::size_t ui = 0; ui < nu_pts; ++ui) {
            const double x_tilde = std::pow(std::abs(grid.u[ui]), 1.0 / p.alpha);
            w[ti * nu_pts + ui] = stretched_propagator(x_tilde, t_tilde, p);
        }
    }

    double max_residual = 0.0;
    const double inv_2dtau = 1.0 / (2.0 * grid.dtau);
    const double inv_du2 = 1.0 / (grid.du * grid.du);
    for (std::size_t ti = 1; ti + 1 < nt_pts; ++ti) {
        const double* prev = &w[(ti - 1) * nu_pts];
        const double* cur = &w[ti * nu_pts];
        const double* next = &w[(ti + 1) * nu_pts];
        for (std::size_t ui = 1; ui + 1 < nu_pts; ++ui) {
            const double dt = (next[ui] - prev[ui]) * inv_2dtau;
            const double duu = (cur[ui + 1] - 2.0 * cur[ui] + cur[ui - 1]) * inv_du2;
            max_residual = std::max(max_residual, std::abs(dt - duu));
        }
    }
    return max_residual;
}

namespace {

// tau-slice of the propagator in the deformed spatial variable.
double slice_value(const PropagatorParams& p, double tau, double u) {
    return p.A / std::sqrt(tau) * std::exp(-p.lambda * std::pow(u * u / tau, 1.0 + p.nu));
}

// |u| beyond which the exponential factor drops below the cutoff.
double tail_cut(const PropagatorParams& p, double tau, double log_cutoff) {
    return std::sqrt(tau) * std::pow(log_cutoff / p.lambda, 0.5 / (1.0 + p.nu));
}

}  // namespace

double normalize(const PropagatorParams& p, double tau) {
    if (!(tau > 0.0)) throw std::domain_error("tau must be positive");
    const double cut = tail_cut(p, tau, -std::log(1e-16));
    const double integral =
        2.0 * detail::integrate([&](double u) { return slice_value(p, tau, u); }, 0.0, cut, 5e-13);
    if (!(integral > 0.0) || !std::isfinite(integral)) {
        throw std::runtime_error("propagator normalization integral did not converge");
    }
    return 1.0 / integral;
}

std::vector<std::pair<double, double>> propagator_msd(const PropagatorParams& p,
                                                      std::span<const double> tau_values) {
    if (tau_values.empty()) throw std::domain_error("tau list is empty");

    std::vector<std::pair<double, double>> out;
    out.reserve(tau_values.size());
    for (double tau : tau_values) {
        if (!(tau > 0.0)) throw std::domain_error("tau must be positive");
        // Wider cut for the u^2-weighted tail.
        const double cut = tail_cut(p, tau, 50.0);
        const double i0 =
            2.0 * detail::integrate([&](double u) { return slice_value(p, tau, u); }, 0.0, cut, 5e-13);
        const double i2 = 2.0 * detail::integrate(
                                    [&](double u) { return u * u * slice_value(p, tau, u); }, 0.0,
                                    cut, 5e-13);
        if (!(i0 > 0.0) || !std::isfinite(i0) || !std::isfinite(i2)) {
            throw std::runtime_error("propagator moment quadrature did not converge");
        }
        out.emplace_back(tau, i2 / i0);
    }

    // <u^2> must scale exactly linearly in tau; a violation means the
    // quadrature lost the tail.
    const double c_ref = out.front().second / out.front().first;
    for (const auto& [tau, m2] : out) {
        if (std::abs(m2 / tau - c_ref) > 1e-6 * c_ref) {
            throw std::runtime_error("propagator msd deviates from linear scaling in tau");
        }
    }
    return out;
}

}  // namespace anodiff::diffusion
