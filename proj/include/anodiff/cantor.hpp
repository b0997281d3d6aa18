#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace anodiff::cantor {

/// Parameters of the two-map IFS on [0, eps0]: both maps contract by the
/// ratio beta, one anchored at each end, so a middle gap of relative size
/// alpha = 1 - 2*beta is removed at every level.
struct IfsParams {
    double eps0;   ///< base interval length, > 0
    double beta;   ///< contraction ratio, in (0, 1/2)
    double alpha;  ///< gap ratio, = 1 - 2*beta
};

/// Validates eps0 > 0 and beta in (0, 1/2) (the open set condition) and
/// fills in alpha. Throws std::domain_error on violation.
IfsParams make_params(double eps0, double beta);

struct Interval {
    double left;
    double right;
    double width() const { return right - left; }
};

/// Open interval removed from the construction, tagged with the 1-based
/// iteration level at which it was removed.
struct Gap {
    double left;
    double right;
    int level;
};

/// Level-n approximation of the Cantor set: the 2^n retained closed
/// intervals plus every gap removed on the way down. Intervals are sorted
/// ascending; gaps are sorted by (level, left), i.e. left-to-right within
/// each level.
struct Prefractal {
    IfsParams params;
    int level = 0;
    std::vector<Interval> intervals;
    std::vector<Gap> gaps;
};

/// Branch coding for retained intervals: digit 0 picks the left map,
/// digit 1 the right map, coarsest level first.
struct CantorAddress {
    std::vector<std::uint8_t> digits;
};

/// Depth cap: 2^24 intervals bounds peak memory for a construction.
inline constexpr int kMaxLevel = 24;

/// Builds the level-n prefractal. Endpoints are derived by splitting the
/// parent interval with closed-form widths eps0 * beta^i (no iterated map
/// application), so nesting is exact by construction.
Prefractal build_prefractal(const IfsParams& params, int level);

/// Total length removed after n iterations: eps0 * (1 - (2 beta)^n).
/// Monotone nondecreasing in n with limit eps0.
double removed_measure(const IfsParams& params, int level);

/// Similarity (= Hausdorff) dimension log 2 / log(1/beta), in (0, 1).
double similarity_dimension(const IfsParams& params);

/// Least-squares slope of log(box count) against log(1/scale). Needs at
/// least 3 scales, all below eps0 and (for level > 0) above the finest
/// retained interval width.
double box_counting_dimension(const Prefractal& pf, std::span<const double> box_scales);

/// The retained interval reached by composing the maps per the address
/// digits; address length must equal the prefractal level.
Interval address_to_interval(const Prefractal& pf, const CantorAddress& addr);

/// Fraction of [0, 2*eps0] covered by the Minkowski sum {x + y} of the two
/// interval sets, computed exactly by sort-and-sweep union arithmetic.
/// Both prefractals must share the same eps0.
double minkowski_sum_coverage(const Prefractal& a, const Prefractal& b);

/// Dimension of the multiplicatively measure-preserving construction,
/// log 3 / log q for q > 1.
double measure_preserving_dimension(double q);

}  // namespace anodiff::cantor
