#include "doctest.h"
#include "test_support.hpp"

#include "taylor/errors.hpp"
#include "taylor/expr.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace taylor;
using taylor::testing::close;

namespace {

ErrorKind eval_error(const char* src, double x) {
    try {
        (void)eval_d2(parse(src), x);
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an evaluation error for " << src);
    return ErrorKind::InvalidArgument;
}

std::size_t syntax_offset(const char* src, ErrorKind expected) {
    try {
        (void)parse(src);
    } catch (const SyntaxError& e) {
        CHECK(e.kind() == expected);
        return e.offset();
    }
    FAIL("expected a syntax error for " << src);
    return 0;
}

Expr random_tree(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 5);
    switch (pick(rng)) {
        case 0: return Expr::constant(std::uniform_real_distribution<double>(0.0, 10.0)(rng));
        case 1: return Expr::variable();
        case 2: return Expr::negate(random_tree(rng, depth - 1));
        case 3:
            return Expr::call(static_cast<UnaryFn>(rng() % 6), random_tree(rng, depth - 1));
        default:
            return Expr::binary(static_cast<BinaryOp>(rng() % 5), random_tree(rng, depth - 1),
                                random_tree(rng, depth - 1));
    }
}

} // namespace

TEST_CASE("parse builds the expected tree") {
    const Expr e = parse("sin(x)*exp(x)");
    const Expr expected = Expr::binary(BinaryOp::Mul, Expr::call(UnaryFn::Sin, Expr::variable()),
                                       Expr::call(UnaryFn::Exp, Expr::variable()));
    CHECK(e == expected);
    CHECK(parse("  sin ( x ) *exp(x ) ") == expected);
}

TEST_CASE("precedence and associativity") {
    CHECK(eval_d2(parse("2^3^2"), 0.7).value == 512.0);
    CHECK(eval_d2(parse("-x^2"), 3.0).value == -9.0);
    CHECK(eval_d2(parse("1 - 2 - 3"), 0.0).value == -4.0);
    CHECK(eval_d2(parse("8 / 4 / 2"), 0.0).value == 1.0);
    CHECK(eval_d2(parse("1 + 2 * 3"), 0.0).value == 7.0);
    CHECK(eval_d2(parse("2 * -3"), 0.0).value == -6.0);
    CHECK(eval_d2(parse("2^-1"), 0.0).value == 0.5);
    CHECK(eval_d2(parse("(1 + 2) * 3"), 0.0).value == 9.0);
    CHECK(eval_d2(parse("1.5e1 + .5"), 0.0).value == 15.5);
}

TEST_CASE("syntax errors carry byte offsets") {
    CHECK(syntax_offset("x + * 2", ErrorKind::SyntaxError) == 4);
    CHECK(syntax_offset("(x + 1", ErrorKind::SyntaxError) == 6);
    CHECK(syntax_offset("", ErrorKind::SyntaxError) == 0);
    CHECK(syntax_offset("x x", ErrorKind::SyntaxError) == 2);
    CHECK(syntax_offset("sin x", ErrorKind::SyntaxError) == 4);
    CHECK(syntax_offset("1e999", ErrorKind::SyntaxError) == 0);
    CHECK(syntax_offset("2 + abs(x)", ErrorKind::UnknownIdentifier) == 4);
    CHECK(syntax_offset("pi * x", ErrorKind::UnknownIdentifier) == 0);
    CHECK(syntax_offset("Sin(x)", ErrorKind::UnknownIdentifier) == 0);
    CHECK(syntax_offset("y", ErrorKind::UnknownIdentifier) == 0);
}

TEST_CASE("second-order forward evaluation") {
    const DiffTriple r = eval_d2(parse("sin(x)*exp(x)"), 0.0);
    CHECK(r == DiffTriple{0.0, 1.0, 2.0});
    CHECK(eval_d2(parse("x^2"), 3.0) == DiffTriple{9.0, 6.0, 2.0});

    // x^p: d1 = p x^{p-1}, d2 = p(p-1) x^{p-2}.
    for (int p = 0; p <= 7; ++p) {
        const Expr e = Expr::binary(BinaryOp::Pow, Expr::variable(), Expr::constant(p));
        for (double x : {-1.5, 0.0, 0.5, 2.0}) {
            const DiffTriple t = eval_d2(e, x);
            CHECK(close(t.value, std::pow(x, p), 1e-13));
            CHECK(close(t.d1, p == 0 ? 0.0 : p * std::pow(x, p - 1), 1e-13));
            CHECK(close(t.d2, p < 2 ? 0.0 : p * (p - 1) * std::pow(x, p - 2), 1e-12));
        }
    }

    const DiffTriple xx = eval_d2(parse("x^x"), 1.0);
    CHECK(close(xx.value, 1.0, 1e-15));
    CHECK(close(xx.d1, 1.0, 1e-15));
    CHECK(close(xx.d2, 2.0, 1e-15));   // x^x (ln x + 1)^2 + x^{x-1}
}

TEST_CASE("domain errors") {
    CHECK(eval_error("log(x)", 0.0) == ErrorKind::DomainError);
    CHECK(eval_error("log(x)", -2.0) == ErrorKind::DomainError);
    CHECK(eval_error("sqrt(x)", -1.0) == ErrorKind::DomainError);
    CHECK(eval_error("sqrt(x)", 0.0) == ErrorKind::DomainError);
    CHECK(eval_error("1/x", 0.0) == ErrorKind::DomainError);
    CHECK(eval_error("x^0.5", -1.0) == ErrorKind::DomainError);
    CHECK(eval_error("x^-1", 0.0) == ErrorKind::DomainError);
    CHECK(eval_error("(x-1)^x", 0.5) == ErrorKind::DomainError);
    CHECK(eval_error("exp(x)", 1000.0) == ErrorKind::NonFiniteEvaluation);
    CHECK_NOTHROW((void)eval_d2(parse("x^3"), -2.0));
}

TEST_CASE("derivatives match finite differences on the corpus") {
    std::mt19937_64 rng(4242);
    for (const auto& entry : testing::ad_corpus()) {
        const Expr e = parse(entry.source);
        std::uniform_real_distribution<double> point(entry.lo, entry.hi);
        const auto value = [&](double x) { return eval_d2(e, x).value; };
        for (int i = 0; i < 100; ++i) {
            const double x = point(rng);
            const DiffTriple ad = eval_d2(e, x);
            const auto fd = testing::finite_differences(value, x);
            INFO(entry.source << " at " << x);
            CHECK(std::abs(ad.d1 - fd.d1) <= 1e-6 * std::max(1.0, std::abs(ad.d1)));
            CHECK(std::abs(ad.d2 - fd.d2) <= 1e-4 * std::max(1.0, std::abs(ad.d2)));
        }
    }
}

TEST_CASE("printing and reparsing preserves structure") {
    for (const auto& entry : testing::ad_corpus()) {
        const Expr e = parse(entry.source);
        CHECK(parse(to_string(e)) == e);
    }
    std::mt19937_64 rng(77);
    for (int i = 0; i < 500; ++i) {
        const Expr e = random_tree(rng, 5);
        INFO(to_string(e));
        CHECK(parse(to_string(e)) == e);
    }
    CHECK(to_string(parse("-x^2")) == "(-(x ^ 2))");
}

TEST_CASE("curvature bound estimation") {
    using std::numbers::e;
    using std::numbers::pi;
    const auto b1 = estimate_curvature_bounds(parse("exp(x)"), Interval(0.0, 1.0), 1001);
    CHECK(b1.heuristic);
    CHECK(close(b1.bounds.lower(), 1.0, 1e-9));
    CHECK(close(b1.bounds.upper(), e, 1e-9));

    const auto b2 = estimate_curvature_bounds(parse("x^2"), Interval(-5.0, 5.0), 101);
    CHECK(b2.bounds.lower() == 2.0);
    CHECK(b2.bounds.upper() == 2.0);

    // f'' = -sin x on [0, pi]; an even sample count misses pi/2 on the grid,
    // so the golden-section pass has to find it.
    const auto b3 = estimate_curvature_bounds(parse("sin(x)"), Interval(0.0, pi), 100);
    CHECK(close(b3.bounds.lower(), -1.0, 1e-9));
    CHECK(close(b3.bounds.upper(), 0.0, 1e-15));

    const auto slope = estimate_derivative_bounds(parse("x^3"), Interval(-1.0, 2.0), 64, 1);
    CHECK(close(slope.bounds.lower(), 0.0, 1e-9));
    CHECK(close(slope.bounds.upper(), 12.0, 1e-12));
}

TEST_CASE("curvature bound estimation rejects singular integrands") {
    try {
        (void)estimate_curvature_bounds(parse("1/x"), Interval(-1.0, 1.0), 3);
        FAIL("expected DomainError");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::DomainError);
    }
    CHECK_THROWS_AS((void)estimate_curvature_bounds(parse("x"), Interval(0.0, 1.0), 1), Error);
}

TEST_CASE("sampled bounds widen monotonically under dyadic refinement") {
    for (const auto& entry : testing::ad_corpus()) {
        const Expr e = parse(entry.source);
        const Interval iv(entry.lo, entry.hi);
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (int level = 1; level <= 10; ++level) {
            const int samples = (1 << level) + 1;
            const auto b = estimate_curvature_bounds(e, iv, samples).bounds;
            INFO(entry.source << " samples=" << samples);
            CHECK(b.lower() <= lo + 1e-12 * std::max(1.0, std::abs(lo)));
            CHECK(b.upper() >= hi - 1e-12 * std::max(1.0, std::abs(hi)));
            lo = std::min(lo, b.lower());
            hi = std::max(hi, b.upper());
        }
    }
}
