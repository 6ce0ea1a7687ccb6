#include "doctest.h"
#include "test_support.hpp"

#include "taylor/errors.hpp"
#include "taylor/expansion.hpp"
#include "taylor/optimality.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace taylor;
using taylor::testing::close;
using taylor::testing::rel_close;

namespace {

std::vector<double> as_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

double max_component_gap(const ExpansionScheme& x, const ExpansionScheme& y) {
    double gap = 0.0;
    for (int k = 0; k <= x.n(); ++k) {
        gap = std::max(gap, std::abs(x.nodes()[k] - y.nodes()[k]));
        gap = std::max(gap, std::abs(x.weights()[k] - y.weights()[k]));
    }
    return gap;
}

// Independent oracle: assemble the 2n x 2n stationarity system in the
// unknowns (t_1..t_{n-1}, w_0..w_n) and solve it by Gaussian elimination
// with partial pivoting.
ExpansionScheme dense_stationarity_oracle(int n) {
    const int m = 2 * n;
    const auto t_col = [](int k) { return k - 1; };          // k = 1..n-1
    const auto w_col = [n](int j) { return n - 1 + j; };     // j = 0..n
    std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 0.0));
    int row = 0;
    // 2 S_k - t_k - t_{k+1} = 0, t_0 = 0, t_n = 1.
    for (int k = 0; k < n; ++k, ++row) {
        for (int j = 0; j <= k; ++j) a[row][w_col(j)] += 2.0;
        if (k >= 1) a[row][t_col(k)] -= 1.0;
        if (k + 1 <= n - 1) a[row][t_col(k + 1)] -= 1.0;
        if (k + 1 == n) a[row][m] += 1.0;
    }
    // t_k - S_{k-1} - w_k / 2 = 0.
    for (int k = 1; k < n; ++k, ++row) {
        a[row][t_col(k)] += 1.0;
        for (int j = 0; j < k; ++j) a[row][w_col(j)] -= 1.0;
        a[row][w_col(k)] -= 0.5;
    }
    for (int j = 0; j <= n; ++j) a[row][w_col(j)] = 1.0;
    a[row][m] = 1.0;

    for (int c = 0; c < m; ++c) {
        int pivot = c;
        for (int r = c + 1; r < m; ++r) {
            if (std::abs(a[r][c]) > std::abs(a[pivot][c])) pivot = r;
        }
        std::swap(a[c], a[pivot]);
        for (int r = 0; r < m; ++r) {
            if (r == c) continue;
            const double factor = a[r][c] / a[c][c];
            for (int k = c; k <= m; ++k) a[r][k] -= factor * a[c][k];
        }
    }
    std::vector<double> nodes(n + 1), weights(n + 1);
    nodes[0] = 0.0;
    nodes[n] = 1.0;
    for (int k = 1; k < n; ++k) nodes[k] = a[t_col(k)][m] / a[t_col(k)][t_col(k)];
    for (int j = 0; j <= n; ++j) weights[j] = a[w_col(j)][m] / a[w_col(j)][w_col(j)];
    return ExpansionScheme::from_nodes(nodes, weights);
}

ExpansionScheme random_feasible(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> weight(-1.0, 2.0);
    std::vector<double> interior(n - 1);
    for (double& t : interior) t = unit(rng);
    std::sort(interior.begin(), interior.end());
    std::vector<double> w(n + 1);
    double partial = 0.0;
    for (int k = 0; k < n; ++k) {
        // Mix wide draws with small perturbations of the optimum.
        w[k] = (rng() % 2 == 0) ? weight(rng) / n : (k == 0 ? 0.5 : 1.0) / n + 1e-3 * (unit(rng) - 0.5);
        partial += w[k];
    }
    w[n] = 1.0 - partial;
    return ExpansionScheme::make(n, interior, w);
}

} // namespace

TEST_CASE("optimal scheme closed form") {
    CHECK(as_vector(optimal_scheme(1).weights()) == std::vector<double>{0.5, 0.5});
    CHECK(as_vector(optimal_scheme(1).nodes()) == std::vector<double>{0.0, 1.0});
    CHECK(as_vector(optimal_scheme(2).weights()) == std::vector<double>{0.25, 0.5, 0.25});
    CHECK(as_vector(optimal_scheme(2).nodes()) == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(as_vector(optimal_scheme(4).weights()) ==
          std::vector<double>{0.125, 0.25, 0.25, 0.25, 0.125});
    CHECK(as_vector(optimal_scheme(4).nodes()) == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK_THROWS_AS((void)optimal_scheme(0), Error);
    for (int n = 1; n <= 64; ++n) CHECK(optimal_scheme(n).is_normalized());
}

TEST_CASE("stationarity solve") {
    const auto s1 = solve_stationarity(1);
    CHECK(as_vector(s1.weights()) == std::vector<double>{0.5, 0.5});
    const auto s2 = solve_stationarity(2);
    CHECK(close(s2.weights()[0], 0.25, 1e-15));
    CHECK(close(s2.weights()[1], 0.5, 1e-15));
    CHECK(close(s2.weights()[2], 0.25, 1e-15));
    CHECK(close(s2.nodes()[1], 0.5, 1e-15));
    for (int n = 1; n <= 64; ++n) {
        CHECK(max_component_gap(solve_stationarity(n), optimal_scheme(n)) <= 1e-13);
    }
}

TEST_CASE("stationarity solve agrees with a dense linear solve") {
    for (int n = 1; n <= 24; ++n) {
        CHECK(max_component_gap(solve_stationarity(n), dense_stationarity_oracle(n)) <= 1e-12);
    }
}

TEST_CASE("residuals") {
    for (int n = 1; n <= 64; ++n) CHECK(residuals(optimal_scheme(n)).max_abs() <= 1e-14);
    CHECK(residuals(optimal_scheme(3)).max_abs() <= 1e-15);

    const std::vector<double> w{1.0, 0.0};
    const auto classical = residuals(ExpansionScheme::make(1, {}, w));
    CHECK(classical.eq_s.size() == 1);
    CHECK(classical.eq_t.empty());
    CHECK(classical.eq_s[0] == 0.5);

    const std::vector<double> interior{0.6};
    const std::vector<double> w2{0.25, 0.5, 0.25};
    const auto r = residuals(ExpansionScheme::make(2, interior, w2));
    CHECK(close(r.eq_s[0], -0.05, 1e-15));
    CHECK(close(r.eq_s[1], -0.05, 1e-15));
    CHECK(close(r.eq_t[0], 0.1, 1e-15));
    CHECK(r.norm_residual == 0.0);
}

TEST_CASE("the closed form dominates random feasible schemes") {
    std::mt19937_64 rng(31337);
    const Interval iv(0.0, 1.0);
    const CurvatureBounds cb(0.0, 1.0);
    for (int n = 1; n <= 4; ++n) {
        const double best = chi(optimal_scheme(n), iv, cb);
        int violations = 0;
        for (int trial = 0; trial < 10000; ++trial) {
            if (chi(random_feasible(n, rng), iv, cb) < best - 1e-12) ++violations;
        }
        CHECK(violations == 0);
    }
}

TEST_CASE("chi and envelope at the optimum for arbitrary interval and bounds") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 20;
        const double a = 20.0 * unit(rng) - 10.0;
        const Interval iv(a, a + 0.05 + 10.0 * unit(rng));
        const double m2 = 10.0 * unit(rng) - 5.0;
        const CurvatureBounds cb(m2, m2 + 8.0 * unit(rng));
        const auto s = optimal_scheme(n);
        const double expected = iv.length() * cb.spread() / (4.0 * n);
        CHECK(rel_close(chi(s, iv, cb), expected, 1e-12));
        CHECK(optimal_chi(n, iv, cb) == doctest::Approx(expected).epsilon(1e-15));
        const auto env = envelope(s, iv, cb);
        CHECK(close(env.lo + env.hi, 0.0, 1e-12 * std::max(1.0, env.hi)));
        CHECK(rel_close(env.hi, iv.length() * cb.spread() / (8.0 * n), 1e-12));
    }
}

TEST_CASE("minimize_chi with Nelder-Mead") {
    MinimizeOptions opts;
    opts.method = MinimizeMethod::NelderMead;
    opts.tol = 1e-8;
    opts.seed = 1;
    const Interval iv(0.0, 1.0);
    const CurvatureBounds cb(0.0, 1.0);
    const auto r = minimize_chi(2, iv, cb, opts);
    CHECK(max_component_gap(r.scheme, optimal_scheme(2)) <= 1e-5);
    CHECK(close(r.chi_value, 0.125, 1e-8));
    CHECK(r.scheme.is_normalized());
    CHECK(r.iters > 0);

    const auto r1 = minimize_chi(1, iv, cb, opts);
    CHECK(close(r1.scheme.weights()[0], 0.5, 1e-5));
    CHECK(close(r1.chi_value, 0.25, 1e-8));
}

TEST_CASE("minimize_chi by grid refinement and projected gradient") {
    const Interval iv(0.0, 1.0);
    const CurvatureBounds cb(0.0, 1.0);
    MinimizeOptions opts;
    opts.tol = 1e-6;
    opts.method = MinimizeMethod::GridRefine;
    const auto g1 = minimize_chi(1, iv, cb, opts);
    CHECK(close(g1.scheme.weights()[0], 0.5, 1e-5));
    const auto g3 = minimize_chi(3, iv, cb, opts);
    CHECK(close(g3.chi_value, 1.0 / 12.0, 1e-6));

    opts.method = MinimizeMethod::ProjectedGradient;
    opts.tol = 1e-8;
    for (int n = 1; n <= 6; ++n) {
        const auto r = minimize_chi(n, iv, cb, opts);
        CHECK(close(r.chi_value, 1.0 / (4.0 * n), 1e-8));
        CHECK(max_component_gap(r.scheme, optimal_scheme(n)) <= 1e-5);
    }
}

TEST_CASE("minimize_chi on a general interval") {
    const Interval iv(-2.0, 3.0);
    const CurvatureBounds cb(-1.0, 4.0);
    MinimizeOptions opts;
    opts.tol = 1e-8;
    opts.seed = 17;
    const auto r = minimize_chi(3, iv, cb, opts);
    CHECK(close(r.chi_value, optimal_chi(3, iv, cb), 1e-8));
    CHECK(max_component_gap(r.scheme, optimal_scheme(3)) <= 1e-5);
}

TEST_CASE("minimize_chi is deterministic for a seed") {
    MinimizeOptions opts;
    opts.seed = 123;
    const Interval iv(0.0, 1.0);
    const CurvatureBounds cb(0.0, 1.0);
    const auto x = minimize_chi(4, iv, cb, opts);
    const auto y = minimize_chi(4, iv, cb, opts);
    CHECK(x.scheme == y.scheme);
    CHECK(x.chi_value == y.chi_value);
    CHECK(x.iters == y.iters);
}

TEST_CASE("minimize_chi errors") {
    const Interval iv(0.0, 1.0);
    MinimizeOptions opts;
    try {
        (void)minimize_chi(3, iv, CurvatureBounds(1.0, 1.0), opts);
        FAIL("expected DegenerateObjective");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateObjective);
    }

    opts.max_iters = 1;
    opts.tol = 1e-14;
    opts.method = MinimizeMethod::GridRefine;
    try {
        (void)minimize_chi(5, iv, CurvatureBounds(0.0, 1.0), opts);
        FAIL("expected NoConvergence");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoConvergence);
    }

    MinimizeOptions bad;
    bad.tol = 0.0;
    CHECK_THROWS_AS((void)minimize_chi(2, iv, CurvatureBounds(0.0, 1.0), bad), Error);
    CHECK_THROWS_AS((void)parse_method("simulated_annealing"), Error);
    CHECK(parse_method("nelder-mead") == MinimizeMethod::NelderMead);
    CHECK(parse_method("grid") == MinimizeMethod::GridRefine);
}
