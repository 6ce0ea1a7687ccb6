#pragma once

#include "taylor/errors.hpp"

#include <cmath>

namespace taylor::detail {

inline constexpr int kSimpsonDepthCap = 50;

template <class F>
double simpson_step(const F& f, double lo, double hi, double f_lo, double f_mid, double f_hi,
                    double whole, double tol, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double left_mid = 0.5 * (lo + mid);
    const double right_mid = 0.5 * (mid + hi);
    const double f_left_mid = f(left_mid);
    const double f_right_mid = f(right_mid);
    const double left = (mid - lo) / 6.0 * (f_lo + 4.0 * f_left_mid + f_mid);
    const double right = (hi - mid) / 6.0 * (f_mid + 4.0 * f_right_mid + f_hi);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    if (depth >= kSimpsonDepthCap) {
        throw Error(ErrorKind::QuadratureNoConvergence, "adaptive Simpson exceeded depth cap");
    }
    return simpson_step(f, lo, mid, f_lo, f_left_mid, f_mid, left, 0.5 * tol, depth + 1) +
           simpson_step(f, mid, hi, f_mid, f_right_mid, f_hi, right, 0.5 * tol, depth + 1);
}

/// Adaptive Simpson integral of f over [lo, hi] to absolute tolerance tol.
/// Intervals are split at the midpoint; recursion is capped at depth 50.
template <class F>
double adaptive_simpson(const F& f, double lo, double hi, double tol) {
    if (hi == lo) return 0.0;
    const double f_lo = f(lo);
    const double f_hi = f(hi);
    const double f_mid = f(0.5 * (lo + hi));
    // Force one split so a symmetric integrand cannot fool the first estimate.
    const double mid = 0.5 * (lo + hi);
    const double f_lq = f(0.5 * (lo + mid));
    const double f_rq = f(0.5 * (mid + hi));
    const double left = (mid - lo) / 6.0 * (f_lo + 4.0 * f_lq + f_mid);
    const double right = (hi - mid) / 6.0 * (f_mid + 4.0 * f_rq + f_hi);
    return simpson_step(f, lo, mid, f_lo, f_lq, f_mid, left, 0.5 * tol, 1) +
           simpson_step(f, mid, hi, f_mid, f_rq, f_hi, right, 0.5 * tol, 1);
}

} // namespace taylor::detail
