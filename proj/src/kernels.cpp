#include "taylor/kernels.hpp"

#include "taylor/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <random>

namespace taylor {

Polynomial::Polynomial(std::vector<double> coefficients) : coeffs_(std::move(coefficients)) {
    if (coeffs_.empty()) coeffs_.push_back(0.0);
}

DiffTriple Polynomial::eval(double x) const noexcept {
    DiffTriple acc;
    const DiffTriple var = DiffTriple::variable(x);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * var + DiffTriple::constant(*it);
    }
    return acc;
}

FunctionHandle Polynomial::handle() const {
    return FunctionHandle([p = *this](double x) { return p.eval(x); });
}

CurvatureBounds Polynomial::curvature_bounds(const Interval& iv) const {
    if (degree() > 5) {
        throw Error(ErrorKind::InvalidArgument, "exact curvature bounds need degree <= 5");
    }
    // f''' = q0 + q1 x + q2 x^2
    std::array<double, 6> c{};
    std::copy(coeffs_.begin(), coeffs_.end(), c.begin());
    const double q0 = 6.0 * c[3];
    const double q1 = 24.0 * c[4];
    const double q2 = 60.0 * c[5];

    std::vector<double> candidates{iv.a(), iv.b()};
    const auto keep = [&](double r) {
        if (std::isfinite(r) && r > iv.a() && r < iv.b()) candidates.push_back(r);
    };
    if (q2 != 0.0) {
        const double disc = q1 * q1 - 4.0 * q2 * q0;
        if (disc >= 0.0) {
            const double sq = std::sqrt(disc);
            const double q = -0.5 * (q1 + std::copysign(sq, q1));
            if (q != 0.0) {
                keep(q / q2);
                keep(q0 / q);
            } else {
                keep(0.0);
            }
        }
    } else if (q1 != 0.0) {
        keep(-q0 / q1);
    }

    double lo = eval(candidates.front()).d2;
    double hi = lo;
    for (const double x : candidates) {
        const double v = eval(x).d2;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {lo, hi};
}

namespace {

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

} // namespace

ContainmentTrial make_trial(std::uint64_t seed, std::uint64_t index) {
    auto rng = trial_rng(seed, index);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> pick_n(1, 8);
    std::uniform_int_distribution<int> pick_degree(0, 5);

    const int n = pick_n(rng);
    const int degree = pick_degree(rng);
    std::vector<double> coeffs(degree + 1);
    for (double& c : coeffs) c = 2.0 * unit(rng) - 1.0;

    const double a = 4.0 * unit(rng) - 2.0;
    const double length = 0.1 + 9.9 * unit(rng);
    const Interval iv(a, a + length);

    std::vector<double> interior(n - 1);
    for (double& t : interior) t = unit(rng);
    std::sort(interior.begin(), interior.end());

    // Weights may be negative; the last one restores sum(w) = 1.
    std::vector<double> weights(n + 1);
    double partial = 0.0;
    for (int k = 0; k < n; ++k) {
        weights[k] = (2.0 * unit(rng) - 0.5) / n;
        partial += weights[k];
    }
    weights[n] = 1.0 - partial;

    Polynomial poly(std::move(coeffs));
    const CurvatureBounds bounds = poly.curvature_bounds(iv);
    return {std::move(poly), iv, ExpansionScheme::make(n, interior, weights), bounds};
}

TrialOutcome run_trial(const ContainmentTrial& trial) {
    const auto f = trial.poly.handle();
    const double remainder = evaluate_scheme(f, trial.interval, trial.scheme).remainder;
    const Envelope env = envelope(trial.scheme, trial.interval, trial.bounds);
    const double slack = containment_slack(env);
    const double mid = 0.5 * (env.lo + env.hi);
    const double half = 0.5 * (env.hi - env.lo);
    const double offset = std::abs(remainder - mid);
    const bool contained = env.lo - slack <= remainder && remainder <= env.hi + slack;
    return {remainder, env, contained, offset / (half + slack)};
}

double grid_point(const Interval& iv, int i, int samples) noexcept {
    if (i <= 0) return iv.a();
    if (i >= samples - 1) return iv.b();
    return iv.a() + iv.length() * (static_cast<double>(i) / (samples - 1));
}

namespace serial {

ContainmentSummary containment_trials(long trials, std::uint64_t seed) {
    ContainmentSummary s;
    s.trials = trials;
    for (long i = 0; i < trials; ++i) {
        const TrialOutcome out = run_trial(make_trial(seed, static_cast<std::uint64_t>(i)));
        if (out.contained) ++s.contained;
        s.max_ratio = std::max(s.max_ratio, out.ratio);
    }
    return s;
}

std::vector<DiffTriple> sample_grid(const Expr& e, const Interval& iv, int samples) {
    std::vector<DiffTriple> out(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) out[i] = eval_d2(e, grid_point(iv, i, samples));
    return out;
}

} // namespace serial

namespace omp {

ContainmentSummary containment_trials(long trials, std::uint64_t seed) {
    long contained = 0;
    double max_ratio = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : contained) reduction(max : max_ratio)
    for (long i = 0; i < trials; ++i) {
        const TrialOutcome out = run_trial(make_trial(seed, static_cast<std::uint64_t>(i)));
        if (out.contained) ++contained;
        max_ratio = std::max(max_ratio, out.ratio);
    }
    return {trials, contained, max_ratio};
}

std::vector<DiffTriple> sample_grid(const Expr& e, const Interval& iv, int samples) {
    std::vector<DiffTriple> out(static_cast<std::size_t>(samples));
    // Exceptions cannot leave an OpenMP region; rethrow the lowest-index one.
    std::vector<std::exception_ptr> failures(static_cast<std::size_t>(samples));
#pragma omp parallel for schedule(static)
    for (int i = 0; i < samples; ++i) {
        try {
            out[i] = eval_d2(e, grid_point(iv, i, samples));
        } catch (...) {
            failures[i] = std::current_exception();
        }
    }
    for (const auto& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }
    return out;
}

} // namespace omp

} // namespace taylor
