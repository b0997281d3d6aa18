#include "anodiff/cantor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "anodiff/detail/linefit.hpp"

namespace anodiff::cantor {

IfsParams make_params(double eps0, double beta) {
    if (!(eps0 > 0.0) || !std::isfinite(eps0)) {
        throw std::domain_error("eps0 must be a positive finite real");
    }
    if (!(beta > 0.0) || !(beta < 0.5)) {
        throw std::domain_error("beta must lie in the open interval (0, 1/2)");
    }
    return IfsParams{eps0, beta, 1.0 - 2.0 * beta};
}

namespace {

void check_params(const IfsParams& p) {
    if (!(p.eps0 > 0.0) || !(p.beta > 0.0) || !(p.beta < 0.5)) {
        throw std::domain_error("invalid IFS parameters");
    }
}

void check_level(int level) {
    if (level < 0) throw std::domain_error("level must be nonnegative");
    if (level > kMaxLevel) {
        throw std::domain_error("level " + std::to_string(level) + " exceeds the depth cap of " +
                                std::to_string(kMaxLevel));
    }
}

// Double-double helpers. Endpoint arithmetic is carried in ~106-bit
// precision so the stored doubles are correctly rounded values of the
// exact endpoints; plain double chains leave a biased width error that
// wrecks measure-conservation sums at deep levels.
struct DD {
    double hi;
    double lo;
};

DD two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return DD{s, (a - (s - bb)) + (b - bb)};
}

DD dd_add(const DD& a, const DD& b) {
    const DD s = two_sum(a.hi, b.hi);
    return two_sum(s.hi, s.lo + a.lo + b.lo);
}

DD dd_sub(const DD& a, const DD& b) { return dd_add(a, DD{-b.hi, -b.lo}); }

DD dd_mul(const DD& a, double b) {
    const double p = a.hi * b;
    const double e = std::fma(a.hi, b, -p);
    return two_sum(p, e + a.lo * b);
}

}  // namespace

Prefractal build_prefractal(const IfsParams& params, int level) {
    check_params(params);
    check_level(level);

    Prefractal pf;
    pf.params = params;
    pf.level = level;
    pf.gaps.reserve(level > 0 ? (std::size_t{1} << level) - 1 : 0);

    // Left endpoints carried in double-double; splitting adds the closed
    // form child width eps0 * beta^i, never an iterated map application.
    std::vector<DD> lefts{DD{0.0, 0.0}};
    std::vector<DD> next;
    DD width{params.eps0, 0.0};
    for (int i = 1; i <= level; ++i) {
        const DD child_width = dd_mul(width, params.beta);
        const DD offset = dd_sub(width, child_width);  // right child left = parent left + offset
        next.clear();
        next.reserve(lefts.size() * 2);
        for (const DD& left : lefts) {
            const DD gap_left = dd_add(left, child_width);
            const DD gap_right = dd_add(left, offset);
            next.push_back(left);
            next.push_back(gap_right);
            pf.gaps.push_back(Gap{gap_left.hi, gap_right.hi, i});
        }
        lefts.swap(next);
        width = child_width;
    }

    pf.intervals.reserve(lefts.size());
    for (const DD& left : lefts) {
        pf.intervals.push_back(Interval{left.hi, dd_add(left, width).hi});
    }
    return pf;
}

double removed_measure(const IfsParams& params, int level) {
    check_params(params);
    if (level < 0) throw std::domain_error("level must be nonnegative");
    return params.eps0 * (1.0 - std::pow(2.0 * params.beta, level));
}

double similarity_dimension(const IfsParams& params) {
    check_params(params);
    return std::log(2.0) / -std::log(params.beta);
}

double box_counting_dimension(const Prefractal& pf, std::span<const double> box_scales) {
    if (box_scales.size() < 3) {
        throw std::domain_error("box counting needs at least 3 scales");
    }
    const double finest = pf.params.eps0 * std::pow(pf.params.beta, pf.level);
    for (double s : box_scales) {
        if (!(s > 0.0) || !(s < pf.params.eps0)) {
            throw std::domain_error("box scale must lie in (0, eps0)");
        }
        // A level-0 prefractal is a plain segment; any finer scale counts it.
        if (pf.level > 0 && !(s > finest)) {
            throw std::domain_error("box scale must exceed the finest retained interval width");
        }
    }

    std::vector<double> log_inv_scale;
    std::vector<double> log_count;
    log_inv_scale.reserve(box_scales.size());
    log_count.reserve(box_scales.size());

    // Quotients that are a few ulps off an integer are genuine boundary
    // hits; snap them so the cell bookkeeping does not pick up phantom
    // neighbours. True interior endpoints sit many orders further away.
    const auto snapped = [](double x, double s) {
        const double q = x / s;
        const double qi = std::nearbyint(q);
        return std::abs(q - qi) <= 1e-9 * std::max(1.0, std::abs(q)) ? qi : q;
    };

    for (double s : box_scales) {
        long long count = 0;
        long long last = -1;
        for (const Interval& iv : pf.intervals) {
            // Cells [k s, (k+1) s); an endpoint sitting exactly on a cell
            // boundary does not drag in the next cell.
            long long lo = static_cast<long long>(std::floor(snapped(iv.left, s)));
            long long hi = static_cast<long long>(std::ceil(snapped(iv.right, s))) - 1;
            if (hi < lo) hi = lo;
            if (lo <= last) lo = last + 1;
            if (hi >= lo) {
                count += hi - lo + 1;
                last = hi;
            }
        }
        log_inv_scale.push_back(std::log(1.0 / s));
        log_count.push_back(std::log(static_cast<double>(count)));
    }
    return detail::fit_line(log_inv_scale, log_count).slope;
}

Interval address_to_interval(const Prefractal& pf, const CantorAddress& addr) {
    if (static_cast<int>(addr.digits.size()) != pf.level) {
        throw std::domain_error("address length must equal the prefractal level");
    }
    std::size_t index = 0;
    for (std::uint8_t d : addr.digits) {
        if (d > 1) throw std::domain_error("address digits must be 0 or 1");
        index = (index << 1) | d;
    }
    return pf.intervals[index];
}

double minkowski_sum_coverage(const Prefractal& a, const Prefractal& b) {
    if (a.params.eps0 != b.params.eps0) {
        throw std::domain_error("prefractals must be built on the same base interval");
    }
    const std::size_t n = a.intervals.size() * b.intervals.size();
    if (n > (std::size_t{1} << 26)) {
        throw std::domain_error("Minkowski sum would exceed the interval budget; lower the levels");
    }

    std::vector<Interval> sums;
    sums.reserve(n);
    for (const Interval& ia : a.intervals) {
        for (const Interval& ib : b.intervals) {
            sums.push_back(Interval{ia.left + ib.left, ia.right + ib.right});
        }
    }
    std::sort(sums.begin(), sums.end(),
              [](const Interval& x, const Interval& y) { return x.left < y.left; });

    // Endpoint sums that touch exactly in the reals can land a few ulps
    // apart; bridging sub-resolution gaps keeps the union exact where it
    // matters (real gaps at tested levels are many orders larger).
    const double touch_tol = 64.0 * 2.2204460492503131e-16 * a.params.eps0;
    double covered = 0.0;
    double run_left = sums.front().left;
    double run_right = sums.front().right;
    for (const Interval& iv : sums) {
        if (iv.left > run_right + touch_tol) {
            covered += run_right - run_left;
            run_left = iv.left;
            run_right = iv.right;
        } else {
            run_right = std::max(run_right, iv.right);
        }
    }
    covered += run_right - run_left;
    return std::min(1.0, covered / (2.0 * a.params.eps0));
}

double measure_preserving_dimension(double q) {
    if (!(q > 1.0)) throw std::domain_error("q must exceed 1");
    return std::log(3.0) / std::log(q);
}

}  // namespace anodiff::cantor
