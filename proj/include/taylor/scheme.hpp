#pragma once

#include <span>
#include <vector>

namespace taylor {

/// Closed interval [a, b] with a < b.
class Interval {
public:
    Interval(double a, double b);

    [[nodiscard]] double a() const noexcept { return a_; }
    [[nodiscard]] double b() const noexcept { return b_; }
    [[nodiscard]] double length() const noexcept { return b_ - a_; }

private:
    double a_;
    double b_;
};

/// Uniform bounds m2 <= f'' <= M2 on the working interval.
class CurvatureBounds {
public:
    CurvatureBounds(double lower, double upper);

    [[nodiscard]] double lower() const noexcept { return lower_; }
    [[nodiscard]] double upper() const noexcept { return upper_; }
    [[nodiscard]] double spread() const noexcept { return upper_ - lower_; }

private:
    double lower_;
    double upper_;
};

inline constexpr double kNormalizationTolerance = 1e-12;

/// Nodes t_0..t_n in [0,1] (t_0 = 0, t_n = 1, non-decreasing) and weights
/// w_0..w_n of a first-order Taylor-like formula
///
///   f(b) = f(a) + (b-a) sum_k w_k f'(a + t_k (b-a)) + (b-a) eps.
///
/// Weights are unconstrained here; operations that need sum(w) = 1 check
/// is_normalized() themselves.
class ExpansionScheme {
public:
    /// Builds a scheme from the n-1 interior nodes; t_0 and t_n are added.
    static ExpansionScheme make(int n, std::span<const double> interior_nodes,
                                std::span<const double> weights);

    /// Builds a scheme from the full node list t_0..t_n.
    static ExpansionScheme from_nodes(std::span<const double> nodes,
                                      std::span<const double> weights);

    [[nodiscard]] int n() const noexcept { return static_cast<int>(nodes_.size()) - 1; }
    [[nodiscard]] std::span<const double> nodes() const noexcept { return nodes_; }
    [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }
    [[nodiscard]] double weight_sum() const noexcept;
    [[nodiscard]] bool is_normalized() const noexcept;

    friend bool operator==(const ExpansionScheme&, const ExpansionScheme&) = default;

private:
    ExpansionScheme(std::vector<double> nodes, std::vector<double> weights);

    std::vector<double> nodes_;
    std::vector<double> weights_;
};

/// S_k = w_0 + ... + w_k for k = 0..n-1.
struct PartialSums {
    std::vector<double> values;
};

[[nodiscard]] PartialSums partial_sums(const ExpansionScheme& scheme);

/// x_k = a + t_k (b - a); the endpoints map to a and b exactly.
[[nodiscard]] std::vector<double> map_nodes(const ExpansionScheme& scheme, const Interval& iv);

/// Throws NotNormalized unless |sum(w) - 1| <= kNormalizationTolerance.
void require_normalized(const ExpansionScheme& scheme);

} // namespace taylor
