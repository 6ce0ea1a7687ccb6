#pragma once

#include "taylor/scheme.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace taylor {

/// w_0 = w_n = 1/(2n), w_k = 1/n, t_k = k/n.
[[nodiscard]] ExpansionScheme optimal_scheme(int n);

/// Solves the stationarity conditions of chi
///   S_k = (t_k + t_{k+1}) / 2        k = 0..n-1
///   t_k = S_{k-1} + w_k / 2          k = 1..n-1
/// together with sum(w) = 1 by forward elimination in the single unknown w_0.
[[nodiscard]] ExpansionScheme solve_stationarity(int n);

struct StationarityResidual {
    std::vector<double> eq_s;   // S_k - (t_k + t_{k+1}) / 2
    std::vector<double> eq_t;   // t_k - S_{k-1} - w_k / 2
    double norm_residual = 0.0; // sum(w) - 1

    [[nodiscard]] double max_abs() const noexcept;
};

[[nodiscard]] StationarityResidual residuals(const ExpansionScheme& scheme);

enum class MinimizeMethod { NelderMead, ProjectedGradient, GridRefine };

[[nodiscard]] MinimizeMethod parse_method(std::string_view name);
[[nodiscard]] std::string_view to_string(MinimizeMethod method) noexcept;

struct MinimizeOptions {
    MinimizeMethod method = MinimizeMethod::NelderMead;
    int max_iters = 200000;
    double tol = 1e-8;
    std::uint64_t seed = 0;

    void validate() const;
};

struct MinimizeResult {
    ExpansionScheme scheme;
    double chi_value;
    long iters;
};

/// Numerically minimizes chi over (t_1..t_{n-1}, w_0..w_{n-1}) with
/// w_n = 1 - sum_{k<n} w_k. Iterates are repaired onto the ordered simplex
/// 0 <= t_1 <= ... <= t_{n-1} <= 1 before each evaluation.
///
/// Throws DegenerateObjective when M2 == m2 and NoConvergence when the
/// best chi found is further than opts.tol from the closed-form optimum.
[[nodiscard]] MinimizeResult minimize_chi(int n, const Interval& iv, const CurvatureBounds& cb,
                                          const MinimizeOptions& opts);

/// chi at the closed-form optimum: (b-a)(M2-m2)/(4n).
[[nodiscard]] double optimal_chi(int n, const Interval& iv, const CurvatureBounds& cb) noexcept;

} // namespace taylor
