#include "taylor/cli.hpp"

#include "adaptive_simpson.hpp"
#include "taylor/errors.hpp"
#include "taylor/expansion.hpp"
#include "taylor/expr.hpp"
#include "taylor/json_io.hpp"
#include "taylor/kernels.hpp"
#include "taylor/optimality.hpp"
#include "taylor/quadrature.hpp"

#include "CLI11.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

namespace taylor::cli {

namespace {

constexpr int kSampledBoundsPoints = 10001;
constexpr double kReferenceIntegralTol = 1e-13;

/// Argument problems detected after CLI11 parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument:
        case ErrorKind::InvalidInterval:
        case ErrorKind::InvalidBounds:
        case ErrorKind::DegenerateObjective:
            return kBadArguments;
        case ErrorKind::NoConvergence:
        case ErrorKind::QuadratureNoConvergence:
            return kConvergenceFailure;
        default:
            return kEvaluationError;
    }
}

std::string format_real(double v) {
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.17g", v);
    return buf.data();
}

struct BoundsOptions {
    std::optional<double> lower;
    std::optional<double> upper;
};

struct ResolvedBounds {
    CurvatureBounds bounds;
    const char* source;
};

ResolvedBounds resolve_bounds(const BoundsOptions& opts, const char* lower_flag,
                              const char* upper_flag, const Expr& e, const Interval& iv,
                              int order) {
    if (opts.lower.has_value() != opts.upper.has_value()) {
        throw UsageError(std::string(lower_flag) + " and " + upper_flag + " must be given together");
    }
    if (opts.lower) return {CurvatureBounds(*opts.lower, *opts.upper), "exact"};
    return {estimate_derivative_bounds(e, iv, kSampledBoundsPoints, order).bounds, "sampled"};
}

void apply_jobs(int jobs) {
    if (jobs < 1) throw UsageError("--jobs must be >= 1");
    omp_set_num_threads(jobs);
}

int default_jobs() {
    return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

void add_bound_flags(CLI::App* cmd, BoundsOptions& opts, const std::string& lower,
                     const std::string& upper, const std::string& what) {
    cmd->add_option(lower, opts.lower, "Lower bound of " + what);
    cmd->add_option(upper, opts.upper, "Upper bound of " + what);
}

// ---------------------------------------------------------------------------

struct OptimalArgs {
    int n = 0;
};

void cmd_optimal(const OptimalArgs& args, std::ostream& out) {
    if (args.n < 1) throw UsageError("n must be ≥ 1");
    out << scheme_to_json(optimal_scheme(args.n)).dump() << '\n';
}

struct EvalArgs {
    std::string fn;
    double a = 0.0;
    double b = 1.0;
    int n = 1;
    std::string scheme_file;
    BoundsOptions bounds;
};

ExpansionScheme load_scheme(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open scheme file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidArgument, std::string("malformed scheme JSON: ") + e.what());
    }
    return scheme_from_json(j);
}

void cmd_eval(const EvalArgs& args, std::ostream& out) {
    if (args.scheme_file.empty() && args.n < 1) throw UsageError("n must be ≥ 1");
    const Interval iv(args.a, args.b);
    const Expr e = parse(args.fn);
    const ExpansionScheme scheme =
        args.scheme_file.empty() ? optimal_scheme(args.n) : load_scheme(args.scheme_file);
    const ResolvedBounds rb = resolve_bounds(args.bounds, "--m2", "--M2", e, iv, 2);
    auto j = report_to_json(make_report(to_function(e), iv, scheme, rb.bounds));
    j["n"] = scheme.n();
    j["bounds_source"] = rb.source;
    out << j.dump() << '\n';
}

struct SweepArgs {
    std::string fn;
    double a = 0.0;
    double b = 1.0;
    std::vector<int> ns;
    BoundsOptions bounds;
    int jobs = default_jobs();
};

void cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err) {
    apply_jobs(args.jobs);
    if (args.ns.empty()) throw UsageError("--n needs at least one value");
    for (const int n : args.ns) {
        if (n < 1) throw UsageError("n must be ≥ 1");
    }
    const Interval iv(args.a, args.b);
    const Expr e = parse(args.fn);
    const ResolvedBounds rb = resolve_bounds(args.bounds, "--m2", "--M2", e, iv, 2);
    err << "bounds_source=" << rb.source << " m2=" << format_real(rb.bounds.lower())
        << " M2=" << format_real(rb.bounds.upper()) << '\n';

    const FunctionHandle f = to_function(e);
    const auto count = static_cast<long>(args.ns.size());
    std::vector<std::string> rows(args.ns.size());
    std::vector<std::exception_ptr> failures(args.ns.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
        try {
            const int n = args.ns[i];
            const ExpansionScheme scheme = optimal_scheme(n);
            const SchemeEvaluation ev = evaluate_scheme(f, iv, scheme);
            const Envelope env = envelope(scheme, iv, rb.bounds);
            const double bound = std::max(std::abs(env.lo), std::abs(env.hi));
            const double ratio = bound == 0.0 ? 0.0 : std::abs(ev.remainder) / bound;
            rows[i] = std::to_string(n) + ',' + format_real(ev.approximation) + ',' +
                      format_real(ev.true_value) + ',' + format_real(ev.remainder) + ',' +
                      format_real(bound) + ',' + format_real(ratio);
        } catch (...) {
            failures[i] = std::current_exception();
        }
    }
    for (const auto& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }
    out << "n,approx,true,remainder,bound,ratio\n";
    for (const auto& row : rows) out << row << '\n';
}

struct MinimizeArgs {
    int n = 0;
    std::string method = "nelder-mead";
    double tol = 1e-8;
    std::uint64_t seed = 0;
    int max_iters = MinimizeOptions{}.max_iters;
    double a = 0.0;
    double b = 1.0;
    double m2 = 0.0;
    double big_m2 = 1.0;
};

void cmd_minimize(const MinimizeArgs& args, std::ostream& out) {
    if (args.n < 1) throw UsageError("n must be ≥ 1");
    MinimizeOptions opts;
    opts.method = parse_method(args.method);
    opts.tol = args.tol;
    opts.seed = args.seed;
    opts.max_iters = args.max_iters;
    const Interval iv(args.a, args.b);
    const CurvatureBounds cb(args.m2, args.big_m2);
    const MinimizeResult r = minimize_chi(args.n, iv, cb, opts);
    nlohmann::ordered_json j;
    j["method"] = to_string(opts.method);
    j["scheme"] = scheme_to_json(r.scheme);
    j["chi"] = r.chi_value;
    j["iters"] = r.iters;
    j["chi_gap_to_closed_form"] = r.chi_value - optimal_chi(args.n, iv, cb);
    out << j.dump() << '\n';
}

struct QuadArgs {
    std::string fn;
    double a = 0.0;
    double b = 1.0;
    int n = 1;
    BoundsOptions bounds;
    std::optional<double> true_value;
};

void cmd_quad(const QuadArgs& args, std::ostream& out) {
    if (args.n < 1) throw UsageError("n must be ≥ 1");
    const Interval iv(args.a, args.b);
    const Expr e = parse(args.fn);
    const ResolvedBounds rb = resolve_bounds(args.bounds, "--m1", "--M1", e, iv, 1);
    double reference = 0.0;
    const char* true_source = "given";
    if (args.true_value) {
        reference = *args.true_value;
    } else {
        reference = detail::adaptive_simpson([&](double x) { return eval_d2(e, x).value; },
                                             iv.a(), iv.b(), kReferenceIntegralTol);
        true_source = "adaptive_simpson";
    }
    auto j = quad_to_json(trapezoid_bounded(to_function(e), iv, args.n, rb.bounds, reference));
    j["bounds_source"] = rb.source;
    j["true_source"] = true_source;
    out << j.dump() << '\n';
}

struct VerifyArgs {
    long trials = 1000;
    std::uint64_t seed = 0;
    int jobs = default_jobs();
};

void cmd_verify(const VerifyArgs& args, std::ostream& out) {
    if (args.trials < 1) throw UsageError("--trials must be ≥ 1");
    apply_jobs(args.jobs);
    const ContainmentSummary s = omp::containment_trials(args.trials, args.seed);
    nlohmann::ordered_json j;
    j["trials"] = s.trials;
    j["contained"] = s.contained;
    j["max_ratio"] = s.max_ratio;
    j["seed"] = args.seed;
    out << j.dump() << '\n';
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Optimal first-order Taylor-like expansions: schemes, envelopes, quadrature"};
    app.name("taylor");
    app.require_subcommand(1);

    OptimalArgs optimal;
    auto* c_optimal = app.add_subcommand("optimal", "Print the optimal scheme for n sub-intervals");
    c_optimal->add_option("--n", optimal.n, "Number of sub-intervals")->required();

    EvalArgs eval;
    auto* c_eval = app.add_subcommand("eval", "Remainder report for one function and scheme");
    c_eval->add_option("--fn", eval.fn, "Expression in x")->required();
    c_eval->add_option("--a", eval.a, "Left endpoint")->required();
    c_eval->add_option("--b", eval.b, "Right endpoint")->required();
    c_eval->add_option("--n", eval.n, "Sub-intervals of the optimal scheme");
    c_eval->add_option("--scheme", eval.scheme_file, "Scheme JSON file (overrides --n)");
    add_bound_flags(c_eval, eval.bounds, "--m2", "--M2", "f''");

    SweepArgs sweep;
    auto* c_sweep = app.add_subcommand("sweep", "CSV of remainder and bound over several n");
    c_sweep->add_option("--fn", sweep.fn, "Expression in x")->required();
    c_sweep->add_option("--a", sweep.a, "Left endpoint")->required();
    c_sweep->add_option("--b", sweep.b, "Right endpoint")->required();
    c_sweep->add_option("--n", sweep.ns, "Comma-separated list of n")->required()->delimiter(',');
    add_bound_flags(c_sweep, sweep.bounds, "--m2", "--M2", "f''");
    c_sweep->add_option("--jobs", sweep.jobs, "Worker threads");

    MinimizeArgs minimize;
    auto* c_min = app.add_subcommand("minimize", "Numerically minimize chi and compare");
    c_min->add_option("--n", minimize.n, "Number of sub-intervals")->required();
    c_min->add_option("--method", minimize.method, "nelder-mead | projected-gradient | grid");
    c_min->add_option("--tol", minimize.tol, "Allowed chi gap to the closed form");
    c_min->add_option("--seed", minimize.seed, "Seed for random restarts");
    c_min->add_option("--max-iters", minimize.max_iters, "Iteration cap per restart");
    c_min->add_option("--a", minimize.a, "Left endpoint");
    c_min->add_option("--b", minimize.b, "Right endpoint");
    c_min->add_option("--m2", minimize.m2, "Lower bound of f''");
    c_min->add_option("--M2", minimize.big_m2, "Upper bound of f''");

    QuadArgs quad;
    auto* c_quad = app.add_subcommand("quad", "Composite trapezoid with guaranteed bound");
    c_quad->add_option("--fn", quad.fn, "Integrand in x")->required();
    c_quad->add_option("--a", quad.a, "Left endpoint")->required();
    c_quad->add_option("--b", quad.b, "Right endpoint")->required();
    c_quad->add_option("--n", quad.n, "Number of panels");
    add_bound_flags(c_quad, quad.bounds, "--m1", "--M1", "the integrand's derivative");
    c_quad->add_option("--true", quad.true_value, "Known value of the integral");

    VerifyArgs verify;
    auto* c_verify = app.add_subcommand("verify", "Randomized envelope containment trials");
    c_verify->add_option("--trials", verify.trials, "Number of trials");
    c_verify->add_option("--seed", verify.seed, "Seed");
    c_verify->add_option("--jobs", verify.jobs, "Worker threads");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kBadArguments;
    }

    try {
        if (c_optimal->parsed()) cmd_optimal(optimal, out);
        else if (c_eval->parsed()) cmd_eval(eval, out);
        else if (c_sweep->parsed()) cmd_sweep(sweep, out, err);
        else if (c_min->parsed()) cmd_minimize(minimize, out);
        else if (c_quad->parsed()) cmd_quad(quad, out);
        else if (c_verify->parsed()) cmd_verify(verify, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kBadArguments;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    }
    return kOk;
}

} // namespace taylor::cli
