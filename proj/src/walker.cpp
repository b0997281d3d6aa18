#include "anodiff/walker.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "anodiff/detail/rng.hpp"

namespace anodiff::walker {

namespace {

constexpr int kPointsPerDecade = 32;
constexpr std::uint64_t kBlockSize = 1024;       // reduction unit, fixed per walker index
constexpr double kResourceBudget = 1e10;         // walkers x grid points

void check_ctrw(const CtrwConfig& c) {
    if (!(c.mu > 0.0) || !(c.mu <= 1.0)) throw std::domain_error("mu must lie in (0,1]");
    if (c.n_walkers < 1) throw std::domain_error("need at least one walker");
    if (!(c.t_max >= 1.0)) throw std::domain_error("t_max must be >= 1");
    if (!(c.step_length > 0.0)) throw std::domain_error("step length must be positive");
}

void check_barrier(const BarrierWalkConfig& c) {
    if (!(c.params.eps0 > 0.0) || !(c.params.beta > 0.0) || !(c.params.beta < 0.5)) {
        throw std::domain_error("invalid IFS parameters");
    }
    if (c.level < 1 || c.level > cantor::kMaxLevel) {
        throw std::domain_error("barrier walk level out of range");
    }
    if (!(c.theta >= 0.0)) throw std::domain_error("theta must be nonnegative");
    if (c.n_walkers < 1) throw std::domain_error("need at least one walker");
    if (c.n_steps < 1) throw std::domain_error("need at least one step");
}

void check_budget(std::uint64_t n_walkers, std::size_t grid_size) {
    if (static_cast<double>(n_walkers) * static_cast<double>(grid_size) > kResourceBudget) {
        throw std::domain_error("ensemble exceeds the walker x grid resource budget");
    }
}

// Midpoint of retained interval `index` at `level`, closed form over the
// address bits (most significant bit = coarsest branch).
double interval_midpoint(const cantor::IfsParams& p, int level, std::uint64_t index) {
    const double scale = (1.0 - p.beta) * p.eps0;
    double left = 0.0;
    double bpow = 1.0;  // beta^(k-1)
    for (int k = 1; k <= level; ++k) {
        if ((index >> (level - k)) & 1u) left += scale * bpow;
        bpow *= p.beta;
    }
    return left + 0.5 * p.eps0 * std::pow(p.beta, level);
}

void ctrw_into(const CtrwConfig& c, std::uint64_t walker, std::span<const double> grid,
               std::span<double> out) {
    detail::SplitMix64 rng = detail::stream_for(c.seed, walker);
    double x = 0.0;
    std::size_t gi = 0;
    double t = 0.0;
    while (gi < grid.size()) {
        t += sample_waiting_time(c.mu, rng.unit_positive());
        while (gi < grid.size() && grid[gi] < t) out[gi++] = x;
        x += (rng.next() & 1u) ? c.step_length : -c.step_length;
    }
}

void barrier_into(const BarrierWalkConfig& c, std::uint64_t walker,
                  std::span<const double> step_grid, std::span<const double> accept,
                  std::span<double> out) {
    detail::SplitMix64 rng = detail::stream_for(c.seed, walker);
    const std::uint64_t n_sites = std::uint64_t{1} << c.level;
    const std::uint64_t start = rng.next() & (n_sites - 1);  // uniform over sites
    const double start_mid = interval_midpoint(c.params, c.level, start);
    const double lattice_origin = static_cast<double>(start);

    std::uint64_t site = start;
    std::size_t gi = 0;
    for (std::uint64_t step = 1; step <= c.n_steps && gi < step_grid.size(); ++step) {
        const bool go_right = rng.next() & 1u;
        const double u = rng.unit();  // always drawn, so trajectories stay coupled across theta
        if (go_right ? site + 1 < n_sites : site > 0) {
            const std::uint64_t upper = go_right ? site + 1 : site;
            const int gap_level = c.level - std::countr_zero(upper);
            if (u < accept[gap_level]) site = go_right ? site + 1 : site - 1;
        }
        if (static_cast<double>(step) == step_grid[gi]) {
            out[gi++] = c.metric == DisplacementMetric::lattice
                            ? static_cast<double>(site) - lattice_origin
                            : interval_midpoint(c.params, c.level, site) - start_mid;
        }
    }
}

// Per-block partial sums of d^2 and d^4, combined in block order so the
// reduction is independent of the worker count.
struct BlockSums {
    std::vector<double> sum2;
    std::vector<double> sum4;
};

template <typename Simulate>
scaling::MsdSeries reduce_ensemble(std::uint64_t n_walkers, std::span<const double> grid,
                                   unsigned workers, const Simulate& simulate) {
    const std::size_t n_blocks =
        static_cast<std::size_t>((n_walkers + kBlockSize - 1) / kBlockSize);
    std::vector<BlockSums> blocks(n_blocks);

    std::atomic<std::size_t> next_block{0};
    const auto work = [&] {
        std::vector<double> disp(grid.size());
        for (;;) {
            const std::size_t b = next_block.fetch_add(1);
            if (b >= n_blocks) break;
            BlockSums& sums = blocks[b];
            sums.sum2.assign(grid.size(), 0.0);
            sums.sum4.assign(grid.size(), 0.0);
            const std::uint64_t begin = static_cast<std::uint64_t>(b) * kBlockSize;
            const std::uint64_t end = std::min<std::uint64_t>(begin + kBlockSize, n_walkers);
            for (std::uint64_t wk = begin; wk < end; ++wk) {
                simulate(wk, std::span<double>(disp));
                for (std::size_t g = 0; g < grid.size(); ++g) {
                    const double d2 = disp[g] * disp[g];
                    sums.sum2[g] += d2;
                    sums.sum4[g] += d2 * d2;
                }
            }
        }
    };

    if (workers < 1) workers = 1;
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < workers; ++i) pool.emplace_back(work);
    work();
    for (std::thread& t : pool) t.join();

    scaling::MsdSeries series;
    series.records.reserve(grid.size());
    const double n = static_cast<double>(n_walkers);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        double s2 = 0.0, s4 = 0.0;
        for (const BlockSums& b : blocks) {
            s2 += b.sum2[g];
            s4 += b.sum4[g];
        }
        const double mean = s2 / n;
        double sem = 0.0;
        if (n_walkers > 1) {
            const double var = std::max(0.0, (s4 - n * mean * mean) / (n - 1.0));
            sem = std::sqrt(var / n);
        }
        series.records.push_back(scaling::MsdRecord{grid[g], mean, sem, n_walkers});
    }
    scaling::validate(series);
    return series;
}

}  // namespace

double sample_waiting_time(double mu, double u) {
    if (!(mu > 0.0) || !(mu <= 1.0)) throw std::domain_error("mu must lie in (0,1]");
    if (u == 0.0) throw std::domain_error("u = 0 maps to an infinite waiting time");
    if (!(u > 0.0) || !(u <= 1.0)) throw std::domain_error("u must lie in (0, 1]");
    return std::pow(u, -1.0 / mu);
}

std::vector<double> geometric_time_grid(double t_max) {
    if (!(t_max >= 1.0)) throw std::domain_error("t_max must be >= 1");
    std::vector<double> grid;
    for (int k = 0;; ++k) {
        const double t = std::pow(10.0, static_cast<double>(k) / kPointsPerDecade);
        if (t > t_max) break;
        grid.push_back(t);
    }
    if (grid.empty() || grid.back() < t_max) grid.push_back(t_max);
    return grid;
}

std::vector<double> geometric_step_grid(std::uint64_t n_steps) {
    if (n_steps < 1) throw std::domain_error("need at least one step");
    std::vector<double> grid;
    for (int k = 0;; ++k) {
        const double t = std::pow(10.0, static_cast<double>(k) / kPointsPerDecade);
        if (t > static_cast<double>(n_steps)) break;
        const double step = std::round(t);
        if (grid.empty() || step > grid.back()) grid.push_back(step);
    }
    if (grid.empty() || grid.back() < static_cast<double>(n_steps)) {
        grid.push_back(static_cast<double>(n_steps));
    }
    return grid;
}

std::vector<double> ctrw_walker_displacements(const CtrwConfig& config, std::uint64_t walker_index,
                                              std::span<const double> grid) {
    check_ctrw(config);
    std::vector<double> out(grid.size());
    ctrw_into(config, walker_index, grid, out);
    return out;
}

std::vector<double> barrier_walker_displacements(const BarrierWalkConfig& config,
                                                 std::uint64_t walker_index,
                                                 std::span<const double> step_grid) {
    check_barrier(config);
    std::vector<double> accept(static_cast<std::size_t>(config.level) + 1, 1.0);
    for (int k = 1; k <= config.level; ++k) {
        accept[k] = std::pow(config.params.beta, (k - 1) * config.theta);
    }
    std::vector<double> out(step_grid.size());
    barrier_into(config, walker_index, step_grid, accept, out);
    return out;
}

scaling::MsdSeries estimate_msd(const std::vector<std::vector<double>>& walker_displacements,
                                std::span<const double> time_grid) {
    if (walker_displacements.size() < 2) throw std::domain_error("need at least 2 walkers");
    for (const auto& row : walker_displacements) {
        if (row.size() != time_grid.size()) {
            throw std::domain_error("walker row length must match the time grid");
        }
    }
    const auto copy_row = [&](std::uint64_t w, std::span<double> out) {
        const auto& row = walker_displacements[static_cast<std::size_t>(w)];
        std::copy(row.begin(), row.end(), out.begin());
    };
    return reduce_ensemble(walker_displacements.size(), time_grid, 1, copy_row);
}

EnsembleResult<CtrwConfig> run_ctrw(const CtrwConfig& config, unsigned workers) {
    check_ctrw(config);
    const std::vector<double> grid = geometric_time_grid(config.t_max);
    check_budget(config.n_walkers, grid.size());

    scaling::MsdSeries msd = reduce_ensemble(
        config.n_walkers, grid, workers,
        [&](std::uint64_t w, std::span<double> out) { ctrw_into(config, w, grid, out); });

    const scaling::FitResult fit = scaling::fit_power_law(msd);
    return EnsembleResult<CtrwConfig>{config, std::move(msd), fit.exponent, fit.goodness};
}

EnsembleResult<BarrierWalkConfig> run_barrier_walk(const BarrierWalkConfig& config,
                                                   unsigned workers) {
    check_barrier(config);
    const std::vector<double> grid = geometric_step_grid(config.n_steps);
    check_budget(config.n_walkers, grid.size());

    std::vector<double> accept(static_cast<std::size_t>(config.level) + 1, 1.0);
    for (int k = 1; k <= config.level; ++k) {
        accept[k] = std::pow(config.params.beta, (k - 1) * config.theta);
    }

    scaling::MsdSeries msd =
        reduce_ensemble(config.n_walkers, grid, workers, [&](std::uint64_t w, std::span<double> out) {
            barrier_into(config, w, grid, accept, out);
        });

    const scaling::FitResult fit = scaling::fit_power_law(msd);
    return EnsembleResult<BarrierWalkConfig>{config, std::move(msd), fit.exponent, fit.goodness};
}

}  // namespace anodiff::walker
