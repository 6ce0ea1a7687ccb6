#include "taylor/quadrature.hpp"

#include "taylor/errors.hpp"
#include "taylor/expansion.hpp"
#include "taylor/optimality.hpp"

#include <array>
#include <cmath>
#include <string>

namespace taylor {

QuadReport trapezoid_bounded(const FunctionHandle& g, const Interval& iv, int n,
                             const CurvatureBounds& slope_bounds,
                             std::optional<double> true_value) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
    const ExpansionScheme scheme = optimal_scheme(n);
    const auto x = map_nodes(scheme, iv);
    const auto w = scheme.weights();
    double sum = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double gk = g(x[k]).value;
        if (!std::isfinite(gk)) {
            throw Error(ErrorKind::NonFiniteEvaluation,
                        "integrand is not finite at x = " + std::to_string(x[k]));
        }
        sum += w[k] * gk;
    }
    QuadReport report;
    report.value = iv.length() * sum;
    report.bound = iv.length() * iv.length() * slope_bounds.spread() / (8.0 * n);
    report.n = n;
    report.true_value = true_value;
    if (true_value) report.abs_error = std::abs(report.value - *true_value);
    return report;
}

BoundComparison compare_with_classical(const Interval& iv, int n,
                                       const CurvatureBounds& slope_bounds) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
    const std::array<double, 2> classical_weights{1.0, 0.0};
    const ExpansionScheme classical = ExpansionScheme::make(1, {}, classical_weights);
    const double h = iv.length();
    BoundComparison out;
    out.bound_new = h * envelope(optimal_scheme(n), iv, slope_bounds).width();
    out.bound_classical = h * envelope(classical, iv, slope_bounds).width();
    out.ratio = out.bound_classical / out.bound_new;
    return out;
}

} // namespace taylor
