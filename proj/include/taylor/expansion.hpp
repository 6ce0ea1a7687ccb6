#pragma once

#include "taylor/diff_triple.hpp"
#include "taylor/scheme.hpp"

namespace taylor {

/// Remainder of the classical expansion f(b) = f(a) + (b-a) f'(a) + (b-a) eps,
/// i.e. eps = (f(b) - f(a) - (b-a) f'(a)) / (b-a).
[[nodiscard]] double classical_remainder(const FunctionHandle& f, const Interval& iv);

/// Same quantity as the integral of (1-t) phi'(t) over [0,1], where
/// phi(t) = f'(a + t(b-a)), computed by adaptive Simpson to absolute `tol`.
[[nodiscard]] double classical_remainder_integral(const FunctionHandle& f, const Interval& iv,
                                                  double tol);

struct SchemeEvaluation {
    double approximation;   // f(a) + (b-a) sum_k w_k f'(x_k)
    double true_value;      // f(b)
    double remainder;       // (f(b) - approximation) / (b-a)
};

[[nodiscard]] SchemeEvaluation evaluate_scheme(const FunctionHandle& f, const Interval& iv,
                                               const ExpansionScheme& scheme);

/// Remainder as sum_k of the integral of (S_k - t) phi'(t) over [t_k, t_{k+1}].
/// Valid only for normalized schemes.
[[nodiscard]] double remainder_integral_form(const FunctionHandle& f, const Interval& iv,
                                             const ExpansionScheme& scheme, double tol);

struct Envelope {
    double lo;
    double hi;

    [[nodiscard]] double width() const noexcept { return hi - lo; }
};

/// Two-sided bound on the remainder of a normalized scheme:
///   lo = (b-a)/2 sum_k [m2 (S_k - t_k)^2 - M2 (S_k - t_{k+1})^2]
///   hi = (b-a)/2 sum_k [M2 (S_k - t_k)^2 - m2 (S_k - t_{k+1})^2]
[[nodiscard]] Envelope envelope(const ExpansionScheme& scheme, const Interval& iv,
                                const CurvatureBounds& cb);

/// Envelope width as a function of the scheme,
///   chi = (b-a)(M2-m2)/2 sum_k [(S_k - t_k)^2 + (S_k - t_{k+1})^2].
/// Defined for any weights.
[[nodiscard]] double chi(const ExpansionScheme& scheme, const Interval& iv,
                         const CurvatureBounds& cb);

/// Slack used when deciding containment: 1e-10 * max(1, |lo|, |hi|).
[[nodiscard]] double containment_slack(const Envelope& env) noexcept;

struct RemainderReport {
    double approximation;
    double true_value;
    double remainder;
    double envelope_lo;
    double envelope_hi;
    double bound_width;
    bool contained;
};

[[nodiscard]] RemainderReport make_report(const FunctionHandle& f, const Interval& iv,
                                          const ExpansionScheme& scheme,
                                          const CurvatureBounds& cb);

} // namespace taylor
