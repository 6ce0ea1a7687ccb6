#include "taylor/optimality.hpp"

#include "taylor/errors.hpp"
#include "taylor/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace taylor {

ExpansionScheme optimal_scheme(int n) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
    std::vector<double> nodes(n + 1);
    std::vector<double> weights(n + 1, 1.0 / n);
    for (int k = 0; k <= n; ++k) nodes[k] = static_cast<double>(k) / n;
    weights.front() = weights.back() = 0.5 / n;
    return ExpansionScheme::from_nodes(nodes, weights);
}

namespace {

// c + m * u, with u the unknown w_0.
struct Affine {
    double c = 0.0;
    double m = 0.0;

    [[nodiscard]] double at(double u) const noexcept { return c + m * u; }
    friend Affine operator+(Affine x, Affine y) noexcept { return {x.c + y.c, x.m + y.m}; }
    friend Affine operator-(Affine x, Affine y) noexcept { return {x.c - y.c, x.m - y.m}; }
    friend Affine operator*(double s, Affine x) noexcept { return {s * x.c, s * x.m}; }
};

} // namespace

ExpansionScheme solve_stationarity(int n) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
    std::vector<Affine> t(n + 1);
    std::vector<Affine> w(n + 1);
    t[0] = {0.0, 0.0};
    w[0] = {0.0, 1.0};
    Affine s = w[0];
    for (int k = 0; k + 1 < n; ++k) {
        t[k + 1] = 2.0 * s - t[k];            // S_k = (t_k + t_{k+1}) / 2
        w[k + 1] = 2.0 * (t[k + 1] - s);      // t_{k+1} = S_k + w_{k+1} / 2
        s = s + w[k + 1];
    }
    // Last S-equation with t_n = 1: 2 S_{n-1} - t_{n-1} - 1 = 0.
    const Affine last = 2.0 * s - t[n - 1] - Affine{1.0, 0.0};
    const double u = -last.c / last.m;

    std::vector<double> nodes(n + 1);
    std::vector<double> weights(n + 1);
    double partial = 0.0;
    for (int k = 0; k < n; ++k) {
        nodes[k] = t[k].at(u);
        weights[k] = w[k].at(u);
        partial += weights[k];
    }
    nodes[n] = 1.0;
    weights[n] = 1.0 - partial;
    return ExpansionScheme::from_nodes(nodes, weights);
}

double StationarityResidual::max_abs() const noexcept {
    double m = std::abs(norm_residual);
    for (const double r : eq_s) m = std::max(m, std::abs(r));
    for (const double r : eq_t) m = std::max(m, std::abs(r));
    return m;
}

StationarityResidual residuals(const ExpansionScheme& scheme) {
    const auto t = scheme.nodes();
    const auto w = scheme.weights();
    const auto sums = partial_sums(scheme).values;
    const int n = scheme.n();
    StationarityResidual r;
    r.eq_s.resize(n);
    r.eq_t.resize(n - 1);
    for (int k = 0; k < n; ++k) r.eq_s[k] = sums[k] - 0.5 * (t[k] + t[k + 1]);
    for (int k = 1; k < n; ++k) r.eq_t[k - 1] = t[k] - sums[k - 1] - 0.5 * w[k];
    r.norm_residual = scheme.weight_sum() - 1.0;
    return r;
}

MinimizeMethod parse_method(std::string_view name) {
    if (name == "nelder_mead" || name == "nelder-mead") return MinimizeMethod::NelderMead;
    if (name == "projected_gradient" || name == "projected-gradient") {
        return MinimizeMethod::ProjectedGradient;
    }
    if (name == "grid_refine" || name == "grid-refine" || name == "grid") {
        return MinimizeMethod::GridRefine;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown method '" + std::string(name) + "'");
}

std::string_view to_string(MinimizeMethod method) noexcept {
    switch (method) {
        case MinimizeMethod::NelderMead: return "nelder_mead";
        case MinimizeMethod::ProjectedGradient: return "projected_gradient";
        case MinimizeMethod::GridRefine: return "grid_refine";
    }
    return "unknown";
}

void MinimizeOptions::validate() const {
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tol must be > 0");
    if (max_iters < 1) throw Error(ErrorKind::InvalidArgument, "max_iters must be >= 1");
}

double optimal_chi(int n, const Interval& iv, const CurvatureBounds& cb) noexcept {
    return iv.length() * cb.spread() / (4.0 * n);
}

namespace {

using Point = std::vector<double>;

// Free variables z = (t_1..t_{n-1}, w_0..w_{n-1}); w_n is eliminated.
class ChiProblem {
public:
    ChiProblem(int n, const Interval& iv, const CurvatureBounds& cb)
        : n_(n), scale_(0.5 * iv.length() * cb.spread()) {}

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(2 * n_ - 1); }

    [[nodiscard]] double node(const Point& z, int k) const noexcept {
        if (k == 0) return 0.0;
        if (k == n_) return 1.0;
        return z[k - 1];
    }

    // Sorts the nodes and clamps them to [0,1].
    void repair(Point& z) const {
        const auto first = z.begin();
        const auto last = z.begin() + (n_ - 1);
        for (auto it = first; it != last; ++it) *it = std::clamp(*it, 0.0, 1.0);
        std::sort(first, last);
    }

    [[nodiscard]] double value(const Point& z) const noexcept {
        double s = 0.0;
        double acc = 0.0;
        for (int k = 0; k < n_; ++k) {
            s += z[n_ - 1 + k];
            const double dl = s - node(z, k);
            const double dr = s - node(z, k + 1);
            acc += dl * dl + dr * dr;
        }
        return scale_ * acc;
    }

    [[nodiscard]] double repaired_value(Point& z) const {
        repair(z);
        return value(z);
    }

    [[nodiscard]] Point gradient(const Point& z) const {
        Point g(dim(), 0.0);
        std::vector<double> dsum(n_);
        std::vector<double> sums(n_);
        double s = 0.0;
        for (int k = 0; k < n_; ++k) {
            s += z[n_ - 1 + k];
            sums[k] = s;
            dsum[k] = 2.0 * scale_ * ((s - node(z, k)) + (s - node(z, k + 1)));
        }
        double tail = 0.0;
        for (int j = n_ - 1; j >= 0; --j) {
            tail += dsum[j];
            g[n_ - 1 + j] = tail;
        }
        for (int k = 1; k < n_; ++k) {
            g[k - 1] = -2.0 * scale_ * ((sums[k] - node(z, k)) + (sums[k - 1] - node(z, k)));
        }
        return g;
    }

    [[nodiscard]] ExpansionScheme to_scheme(const Point& z) const {
        std::vector<double> nodes(n_ + 1);
        std::vector<double> weights(n_ + 1);
        double partial = 0.0;
        for (int k = 0; k <= n_; ++k) nodes[k] = node(z, k);
        for (int k = 0; k < n_; ++k) {
            weights[k] = z[n_ - 1 + k];
            partial += weights[k];
        }
        weights[n_] = 1.0 - partial;
        return ExpansionScheme::from_nodes(nodes, weights);
    }

    [[nodiscard]] Point closed_form() const {
        Point z(dim());
        for (int k = 1; k < n_; ++k) z[k - 1] = static_cast<double>(k) / n_;
        for (int k = 0; k < n_; ++k) z[n_ - 1 + k] = (k == 0 ? 0.5 : 1.0) / n_;
        return z;
    }

    [[nodiscard]] Point random_start(std::mt19937_64& rng) const {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        Point z(dim());
        for (int k = 1; k < n_; ++k) z[k - 1] = unit(rng);
        for (int k = 0; k < n_; ++k) z[n_ - 1 + k] = 2.0 * unit(rng) / n_;
        repair(z);
        return z;
    }

private:
    int n_;
    double scale_;
};

struct RunResult {
    Point z;
    double value = std::numeric_limits<double>::infinity();
    long iters = 0;
};

struct Budget {
    long max_iters;
    double ftol;
    double xtol;
};

// Nelder-Mead with reflection 1, expansion 2, contraction 0.5, shrink 0.5.
// Every vertex is kept repaired. On convergence the simplex is rebuilt
// around the best vertex until a rebuild no longer improves the value.
RunResult nelder_mead(const ChiProblem& p, Point start, double step, const Budget& budget,
                      std::mt19937_64& rng) {
    const std::size_t d = p.dim();
    RunResult best;
    best.z = std::move(start);
    best.value = p.repaired_value(best.z);

    std::bernoulli_distribution coin(0.5);
    while (best.iters < budget.max_iters) {
        std::vector<Point> simplex(d + 1, best.z);
        std::vector<double> f(d + 1);
        for (std::size_t i = 0; i < d; ++i) {
            simplex[i + 1][i] += coin(rng) ? step : -step;
        }
        for (std::size_t i = 0; i <= d; ++i) f[i] = p.repaired_value(simplex[i]);

        std::vector<std::size_t> order(d + 1);
        Point centroid(d), trial(d), trial2(d);
        while (best.iters < budget.max_iters) {
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
                return f[i] < f[j];
            });
            const std::size_t ib = order.front();
            const std::size_t iw = order.back();
            const std::size_t isw = order[d - 1];

            double diam = 0.0;
            for (std::size_t i = 0; i <= d; ++i) {
                for (std::size_t c = 0; c < d; ++c) {
                    diam = std::max(diam, std::abs(simplex[i][c] - simplex[ib][c]));
                }
            }
            if (f[iw] - f[ib] <= budget.ftol && diam <= budget.xtol) break;
            ++best.iters;

            std::fill(centroid.begin(), centroid.end(), 0.0);
            for (std::size_t i = 0; i <= d; ++i) {
                if (i == iw) continue;
                for (std::size_t c = 0; c < d; ++c) centroid[c] += simplex[i][c];
            }
            for (double& c : centroid) c /= static_cast<double>(d);

            for (std::size_t c = 0; c < d; ++c) {
                trial[c] = centroid[c] + (centroid[c] - simplex[iw][c]);
            }
            const double fr = p.repaired_value(trial);
            if (fr < f[ib]) {
                for (std::size_t c = 0; c < d; ++c) {
                    trial2[c] = centroid[c] + 2.0 * (trial[c] - centroid[c]);
                }
                const double fe = p.repaired_value(trial2);
                if (fe < fr) {
                    simplex[iw] = trial2;
                    f[iw] = fe;
                } else {
                    simplex[iw] = trial;
                    f[iw] = fr;
                }
                continue;
            }
            if (fr < f[isw]) {
                simplex[iw] = trial;
                f[iw] = fr;
                continue;
            }
            const bool outside = fr < f[iw];
            for (std::size_t c = 0; c < d; ++c) {
                const double target = outside ? trial[c] : simplex[iw][c];
                trial2[c] = centroid[c] + 0.5 * (target - centroid[c]);
            }
            const double fc = p.repaired_value(trial2);
            if (outside ? fc <= fr : fc < f[iw]) {
                simplex[iw] = trial2;
                f[iw] = fc;
                continue;
            }
            for (std::size_t i = 0; i <= d; ++i) {
                if (i == ib) continue;
                for (std::size_t c = 0; c < d; ++c) {
                    simplex[i][c] = simplex[ib][c] + 0.5 * (simplex[i][c] - simplex[ib][c]);
                }
                f[i] = p.repaired_value(simplex[i]);
            }
        }

        const auto ib = static_cast<std::size_t>(std::min_element(f.begin(), f.end()) - f.begin());
        const double improvement = best.value - f[ib];
        if (f[ib] <= best.value) {
            best.z = simplex[ib];
            best.value = f[ib];
        }
        if (improvement <= budget.ftol) break;
        step = std::max(10.0 * budget.xtol, 0.1 * step);
    }
    return best;
}

// Steepest descent with exact line search on the quadratic, followed by
// repair; the step is halved whenever repair undoes the decrease.
RunResult projected_gradient(const ChiProblem& p, Point start, const Budget& budget) {
    RunResult r;
    r.z = std::move(start);
    r.value = p.repaired_value(r.z);
    const std::size_t d = p.dim();
    Point next(d);
    while (r.iters < budget.max_iters) {
        ++r.iters;
        const Point g = p.gradient(r.z);
        double gg = 0.0;
        for (const double gi : g) gg += gi * gi;
        if (gg == 0.0) break;
        // chi(z - a g) = chi(z) - a gg + a^2 q / 2 with q = g' H g.
        for (std::size_t c = 0; c < d; ++c) next[c] = r.z[c] - g[c];
        const double q = 2.0 * (p.value(next) - r.value + gg);
        double alpha = q > 0.0 ? gg / q : 1.0;
        double fn = r.value;
        bool moved = false;
        for (int halvings = 0; halvings < 60; ++halvings, alpha *= 0.5) {
            for (std::size_t c = 0; c < d; ++c) next[c] = r.z[c] - alpha * g[c];
            fn = p.repaired_value(next);
            if (fn < r.value) {
                moved = true;
                break;
            }
        }
        if (!moved) break;
        const double decrease = r.value - fn;
        r.z = next;
        r.value = fn;
        if (decrease <= budget.ftol && std::sqrt(gg) <= budget.xtol) break;
    }
    return r;
}

// Cyclic coordinate search: each coordinate is replaced by the best of a
// 21-point grid over [z_c - h, z_c + h]. The grid is halved once a full sweep
// leaves every coordinate at its centre.
RunResult grid_refine(const ChiProblem& p, Point start, const Budget& budget) {
    constexpr int kHalfPoints = 10;
    RunResult r;
    r.z = std::move(start);
    r.value = p.repaired_value(r.z);
    double h = 0.5;
    Point probe;
    while (r.iters < budget.max_iters && h > budget.xtol) {
        ++r.iters;
        bool changed = false;
        for (std::size_t c = 0; c < p.dim(); ++c) {
            const double centre = r.z[c];
            Point best_point = r.z;
            double best_value = r.value;
            for (int i = -kHalfPoints; i <= kHalfPoints; ++i) {
                if (i == 0) continue;
                probe = r.z;
                probe[c] = centre + h * i / kHalfPoints;
                const double v = p.repaired_value(probe);
                if (v < best_value) {
                    best_value = v;
                    best_point = probe;
                }
            }
            if (best_value < r.value) {
                r.z = std::move(best_point);
                r.value = best_value;
                changed = true;
            }
        }
        if (!changed) h *= 0.5;
    }
    return r;
}

double distance_squared(const Point& x, const Point& y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += (x[i] - y[i]) * (x[i] - y[i]);
    return acc;
}

constexpr int kRestarts = 5;

} // namespace

MinimizeResult minimize_chi(int n, const Interval& iv, const CurvatureBounds& cb,
                            const MinimizeOptions& opts) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
    opts.validate();
    if (cb.spread() == 0.0) {
        throw Error(ErrorKind::DegenerateObjective, "m2 == M2 makes chi identically zero");
    }
    const ChiProblem problem(n, iv, cb);
    const Budget budget{opts.max_iters, opts.tol * 1e-6, 1e-10};
    const Point reference = problem.closed_form();

    std::vector<RunResult> runs(kRestarts);
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < kRestarts; ++r) {
        std::mt19937_64 rng(opts.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(r));
        Point start;
        if (r == 0 && opts.method == MinimizeMethod::NelderMead) {
            std::uniform_real_distribution<double> jitter(-0.05, 0.05);
            start = reference;
            for (double& c : start) c += jitter(rng);
            problem.repair(start);
        } else {
            start = problem.random_start(rng);
        }
        switch (opts.method) {
            case MinimizeMethod::NelderMead:
                runs[r] = nelder_mead(problem, std::move(start), 0.05, budget, rng);
                break;
            case MinimizeMethod::ProjectedGradient:
                runs[r] = projected_gradient(problem, std::move(start), budget);
                break;
            case MinimizeMethod::GridRefine:
                runs[r] = grid_refine(problem, std::move(start), budget);
                break;
        }
    }

    // Lowest chi, then closest to the uniform scheme, then lowest restart index.
    std::size_t best = 0;
    long iters = 0;
    for (std::size_t r = 0; r < runs.size(); ++r) {
        iters += runs[r].iters;
        if (r == 0) continue;
        const bool lower = runs[r].value < runs[best].value;
        const bool tie = runs[r].value == runs[best].value &&
                         distance_squared(runs[r].z, reference) <
                             distance_squared(runs[best].z, reference);
        if (lower || tie) best = r;
    }

    const double target = optimal_chi(n, iv, cb);
    const double gap = runs[best].value - target;
    if (gap > opts.tol) {
        throw Error(ErrorKind::NoConvergence, "chi gap " + std::to_string(gap) +
                                                  " exceeds tol after " + std::to_string(iters) +
                                                  " iterations");
    }
    return {problem.to_scheme(runs[best].z), runs[best].value, iters};
}

} // namespace taylor
