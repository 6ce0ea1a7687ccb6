#pragma once

#include "taylor/diff_triple.hpp"
#include "taylor/scheme.hpp"

#include <optional>

namespace taylor {

/// Composite trapezoid value with a guaranteed error bound. The rule is the
/// optimal Taylor-like formula applied to an antiderivative F of g, so the
/// bound needs m <= g' <= M:  |error| <= (b-a)^2 (M - m) / (8n).
struct QuadReport {
    double value;
    std::optional<double> true_value;
    std::optional<double> abs_error;
    double bound;
    int n;
};

/// `slope_bounds` bound the integrand's first derivative on iv.
[[nodiscard]] QuadReport trapezoid_bounded(const FunctionHandle& g, const Interval& iv, int n,
                                           const CurvatureBounds& slope_bounds,
                                           std::optional<double> true_value = std::nullopt);

struct BoundComparison {
    double bound_new;        // (b-a) * width of the optimal n-point envelope
    double bound_classical;  // (b-a) * width of the classical {n=1, w=[1,0]} envelope
    double ratio;            // bound_classical / bound_new, equal to 2n
};

[[nodiscard]] BoundComparison compare_with_classical(const Interval& iv, int n,
                                                     const CurvatureBounds& slope_bounds);

} // namespace taylor
