#pragma once

// Data-parallel kernels. Each has a serial reference and an OpenMP version;
// both produce bit-identical results for the same inputs regardless of the
// thread count, which the tests check.

#include "taylor/expansion.hpp"
#include "taylor/expr.hpp"

#include <cstdint>
#include <vector>

namespace taylor {

/// Dense polynomial sum_i c_i x^i, used as a test function with exactly
/// computable curvature bounds.
class Polynomial {
public:
    explicit Polynomial(std::vector<double> coefficients);

    [[nodiscard]] DiffTriple eval(double x) const noexcept;
    [[nodiscard]] FunctionHandle handle() const;
    [[nodiscard]] int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

    /// Exact min/max of f'' on iv, from the endpoints and the real roots of f'''.
    [[nodiscard]] CurvatureBounds curvature_bounds(const Interval& iv) const;

private:
    std::vector<double> coeffs_;
};

/// One randomized envelope-containment trial: normalized scheme with
/// n in [1, 8], polynomial of degree <= 5, interval with b-a in [0.1, 10].
struct ContainmentTrial {
    Polynomial poly;
    Interval interval;
    ExpansionScheme scheme;
    CurvatureBounds bounds;
};

/// Trial `index` of the stream seeded by `seed`; independent of other trials.
[[nodiscard]] ContainmentTrial make_trial(std::uint64_t seed, std::uint64_t index);

struct TrialOutcome {
    double remainder;
    Envelope env;
    bool contained;
    double ratio;   // |eps - mid| / half-width; <= 1 inside the envelope
};

[[nodiscard]] TrialOutcome run_trial(const ContainmentTrial& trial);

struct ContainmentSummary {
    long trials = 0;
    long contained = 0;
    double max_ratio = 0.0;

    friend bool operator==(const ContainmentSummary&, const ContainmentSummary&) = default;
};

namespace serial {
[[nodiscard]] ContainmentSummary containment_trials(long trials, std::uint64_t seed);
[[nodiscard]] std::vector<DiffTriple> sample_grid(const Expr& e, const Interval& iv, int samples);
} // namespace serial

namespace omp {
[[nodiscard]] ContainmentSummary containment_trials(long trials, std::uint64_t seed);
[[nodiscard]] std::vector<DiffTriple> sample_grid(const Expr& e, const Interval& iv, int samples);
} // namespace omp

/// Grid point i of `samples` equally spaced points; exact at both ends.
[[nodiscard]] double grid_point(const Interval& iv, int i, int samples) noexcept;

} // namespace taylor
