#include "taylor/expansion.hpp"

#include "adaptive_simpson.hpp"
#include "taylor/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace taylor {

namespace {

DiffTriple checked_eval(const FunctionHandle& f, double x) {
    const DiffTriple r = f(x);
    if (!std::isfinite(r.value) || !std::isfinite(r.d1) || !std::isfinite(r.d2)) {
        throw Error(ErrorKind::NonFiniteEvaluation, "f is not finite at x = " + std::to_string(x));
    }
    return r;
}

// phi'(t) = (b-a) f''(a + t(b-a))
auto phi_prime(const FunctionHandle& f, const Interval& iv) {
    return [&f, &iv](double t) {
        const double x = iv.a() + t * iv.length();
        return iv.length() * checked_eval(f, x).d2;
    };
}

} // namespace

double classical_remainder(const FunctionHandle& f, const Interval& iv) {
    const DiffTriple fa = checked_eval(f, iv.a());
    const DiffTriple fb = checked_eval(f, iv.b());
    const double h = iv.length();
    return (fb.value - fa.value - h * fa.d1) / h;
}

double classical_remainder_integral(const FunctionHandle& f, const Interval& iv, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tol must be > 0");
    const auto dphi = phi_prime(f, iv);
    return detail::adaptive_simpson([&](double t) { return (1.0 - t) * dphi(t); }, 0.0, 1.0, tol);
}

SchemeEvaluation evaluate_scheme(const FunctionHandle& f, const Interval& iv,
                                 const ExpansionScheme& scheme) {
    const auto x = map_nodes(scheme, iv);
    const auto w = scheme.weights();
    double slope = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        slope += w[k] * checked_eval(f, x[k]).d1;
    }
    const double fa = checked_eval(f, iv.a()).value;
    const double fb = checked_eval(f, iv.b()).value;
    const double approximation = fa + iv.length() * slope;
    return {approximation, fb, (fb - approximation) / iv.length()};
}

double remainder_integral_form(const FunctionHandle& f, const Interval& iv,
                               const ExpansionScheme& scheme, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tol must be > 0");
    require_normalized(scheme);
    const auto t = scheme.nodes();
    const auto sums = partial_sums(scheme).values;
    const auto dphi = phi_prime(f, iv);
    const double piece_tol = tol / scheme.n();
    double total = 0.0;
    for (std::size_t k = 0; k < sums.size(); ++k) {
        if (t[k + 1] == t[k]) continue;
        const double s = sums[k];
        total += detail::adaptive_simpson([&](double u) { return (s - u) * dphi(u); }, t[k],
                                          t[k + 1], piece_tol);
    }
    return total;
}

namespace {

struct SquareSums {
    double left = 0.0;    // sum_k (S_k - t_k)^2
    double right = 0.0;   // sum_k (S_k - t_{k+1})^2
};

SquareSums square_sums(const ExpansionScheme& scheme) {
    const auto t = scheme.nodes();
    const auto sums = partial_sums(scheme).values;
    SquareSums out;
    for (std::size_t k = 0; k < sums.size(); ++k) {
        const double dl = sums[k] - t[k];
        const double dr = sums[k] - t[k + 1];
        out.left += dl * dl;
        out.right += dr * dr;
    }
    return out;
}

} // namespace

Envelope envelope(const ExpansionScheme& scheme, const Interval& iv, const CurvatureBounds& cb) {
    require_normalized(scheme);
    const SquareSums sq = square_sums(scheme);
    const double half = 0.5 * iv.length();
    const double lo = half * (cb.lower() * sq.left - cb.upper() * sq.right);
    const double hi = half * (cb.upper() * sq.left - cb.lower() * sq.right);
    return {lo, hi};
}

double chi(const ExpansionScheme& scheme, const Interval& iv, const CurvatureBounds& cb) {
    const SquareSums sq = square_sums(scheme);
    return 0.5 * iv.length() * cb.spread() * (sq.left + sq.right);
}

double containment_slack(const Envelope& env) noexcept {
    return 1e-10 * std::max({1.0, std::abs(env.lo), std::abs(env.hi)});
}

RemainderReport make_report(const FunctionHandle& f, const Interval& iv,
                            const ExpansionScheme& scheme, const CurvatureBounds& cb) {
    const SchemeEvaluation ev = evaluate_scheme(f, iv, scheme);
    const Envelope env = envelope(scheme, iv, cb);
    const double slack = containment_slack(env);
    const bool contained = env.lo - slack <= ev.remainder && ev.remainder <= env.hi + slack;
    return {ev.approximation, ev.true_value, ev.remainder, env.lo, env.hi, env.width(), contained};
}

} // namespace taylor
