#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "anodiff/cantor.hpp"
#include "anodiff/scaling.hpp"

namespace anodiff::walker {

/// Fractal-time walk: unit +/- jumps separated by Pareto waiting times
/// psi(tau) = mu tau^-(1+mu) on [1, inf). The MSD exponent equals mu.
struct CtrwConfig {
    double mu;                  ///< waiting-time tail index, in (0, 1]
    std::uint64_t n_walkers;    ///< >= 1
    double t_max;               ///< >= 1
    double step_length = 1.0;   ///< > 0
    std::uint64_t seed = 0;
};

/// How barrier-walk displacement is measured. The spacing of interval
/// midpoints in the embedding is wildly nonuniform, so the two metrics
/// give genuinely different exponents; `lattice` counts sites and reduces
/// to a plain unit-step walk when every barrier is transparent.
enum class DisplacementMetric { embedding, lattice };

/// Nearest-neighbour walk on the 2^level retained intervals of a
/// prefractal. Crossing a gap created at hierarchy level k is accepted
/// with probability (w_k / w_1)^theta = beta^((k-1) theta); a rejected or
/// out-of-range move costs one time unit of waiting. Boundaries reflect.
struct BarrierWalkConfig {
    cantor::IfsParams params;
    int level;                  ///< in [1, cantor::kMaxLevel]
    double theta;               ///< barrier-penalty exponent, >= 0
    std::uint64_t n_walkers;
    std::uint64_t n_steps;
    std::uint64_t seed = 0;
    DisplacementMetric metric = DisplacementMetric::embedding;
};

template <typename ConfigT>
struct EnsembleResult {
    ConfigT config;             ///< echo of the run configuration (seed included)
    scaling::MsdSeries msd;
    double fitted_exponent;
    double fit_goodness;
};

/// Pareto inverse CDF u^(-1/mu) on [1, inf); u must lie in (0, 1].
double sample_waiting_time(double mu, double u);

/// Geometric sampling grid, 32 points per decade starting at t = 1, with
/// t_max appended when it does not land on the grid.
std::vector<double> geometric_time_grid(double t_max);

/// Same grid rounded to integer step counts and deduplicated.
std::vector<double> geometric_step_grid(std::uint64_t n_steps);

/// Displacement of one walker sampled on the grid. Deterministic in
/// (config.seed, walker_index) alone, independent of ensemble size or
/// scheduling.
std::vector<double> ctrw_walker_displacements(const CtrwConfig& config,
                                              std::uint64_t walker_index,
                                              std::span<const double> grid);
std::vector<double> barrier_walker_displacements(const BarrierWalkConfig& config,
                                                 std::uint64_t walker_index,
                                                 std::span<const double> step_grid);

/// Ensemble MSD from walker displacement rows (walkers start at the
/// origin): msd(t) = mean d^2, sem = sample std of d^2 / sqrt(n).
/// Needs at least 2 walkers.
scaling::MsdSeries estimate_msd(const std::vector<std::vector<double>>& walker_displacements,
                                std::span<const double> time_grid);

/// Runs the ensemble, reduces the MSD in fixed walker-block order (so the
/// result is bit-identical for every worker count), and fits the late-time
/// power law.
EnsembleResult<CtrwConfig> run_ctrw(const CtrwConfig& config, unsigned workers = 1);
EnsembleResult<BarrierWalkConfig> run_barrier_walk(const BarrierWalkConfig& config,
                                                   unsigned workers = 1);

}  // namespace anodiff::walker
