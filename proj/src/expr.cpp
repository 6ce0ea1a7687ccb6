#include "taylor/expr.hpp"

#include "taylor/errors.hpp"
#include "taylor/kernels.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

namespace taylor {

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

Expr Expr::constant(double c) {
    auto node = std::make_shared<ExprNode>();
    node->kind = ExprNode::Kind::Constant;
    node->constant = c;
    return Expr(std::move(node));
}

Expr Expr::variable() {
    auto node = std::make_shared<ExprNode>();
    node->kind = ExprNode::Kind::Variable;
    node->has_x = true;
    return Expr(std::move(node));
}

Expr Expr::negate(Expr operand) {
    auto node = std::make_shared<ExprNode>();
    node->kind = ExprNode::Kind::Negate;
    node->has_x = operand.root_->has_x;
    node->lhs = std::move(operand.root_);
    return Expr(std::move(node));
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
    auto node = std::make_shared<ExprNode>();
    node->kind = ExprNode::Kind::Binary;
    node->op = op;
    node->has_x = lhs.root_->has_x || rhs.root_->has_x;
    node->lhs = std::move(lhs.root_);
    node->rhs = std::move(rhs.root_);
    return Expr(std::move(node));
}

Expr Expr::call(UnaryFn fn, Expr arg) {
    auto node = std::make_shared<ExprNode>();
    node->kind = ExprNode::Kind::Call;
    node->fn = fn;
    node->has_x = arg.root_->has_x;
    node->lhs = std::move(arg.root_);
    return Expr(std::move(node));
}

bool Expr::depends_on_x() const noexcept { return root_->has_x; }

namespace {

bool same_tree(const ExprNode& x, const ExprNode& y) {
    if (x.kind != y.kind) return false;
    switch (x.kind) {
        case ExprNode::Kind::Constant: return x.constant == y.constant;
        case ExprNode::Kind::Variable: return true;
        case ExprNode::Kind::Negate: return same_tree(*x.lhs, *y.lhs);
        case ExprNode::Kind::Call: return x.fn == y.fn && same_tree(*x.lhs, *y.lhs);
        case ExprNode::Kind::Binary:
            return x.op == y.op && same_tree(*x.lhs, *y.lhs) && same_tree(*x.rhs, *y.rhs);
    }
    return false;
}

constexpr std::array<std::pair<std::string_view, UnaryFn>, 6> kFunctions{{
    {"sin", UnaryFn::Sin},
    {"cos", UnaryFn::Cos},
    {"exp", UnaryFn::Exp},
    {"log", UnaryFn::Log},
    {"sqrt", UnaryFn::Sqrt},
    {"tanh", UnaryFn::Tanh},
}};

std::string_view function_name(UnaryFn fn) {
    for (const auto& [name, f] : kFunctions) {
        if (f == fn) return name;
    }
    return "?";
}

char op_symbol(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return '+';
        case BinaryOp::Sub: return '-';
        case BinaryOp::Mul: return '*';
        case BinaryOp::Div: return '/';
        case BinaryOp::Pow: return '^';
    }
    return '?';
}

} // namespace

bool operator==(const Expr& lhs, const Expr& rhs) { return same_tree(*lhs.root_, *rhs.root_); }

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    Expr parse_all() {
        Expr e = parse_expr();
        skip_space();
        if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw SyntaxError(ErrorKind::SyntaxError, pos_, what);
    }

    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr parse_expr() {
        Expr lhs = parse_term();
        for (;;) {
            if (accept('+')) {
                lhs = Expr::binary(BinaryOp::Add, std::move(lhs), parse_term());
            } else if (accept('-')) {
                lhs = Expr::binary(BinaryOp::Sub, std::move(lhs), parse_term());
            } else {
                return lhs;
            }
        }
    }

    Expr parse_term() {
        Expr lhs = parse_unary();
        for (;;) {
            if (accept('*')) {
                lhs = Expr::binary(BinaryOp::Mul, std::move(lhs), parse_unary());
            } else if (accept('/')) {
                lhs = Expr::binary(BinaryOp::Div, std::move(lhs), parse_unary());
            } else {
                return lhs;
            }
        }
    }

    Expr parse_unary() {
        if (accept('-')) return Expr::negate(parse_unary());
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_primary();
        if (accept('^')) return Expr::binary(BinaryOp::Pow, std::move(base), parse_unary());
        return base;
    }

    Expr parse_primary() {
        skip_space();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            Expr inner = parse_expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        fail("unexpected '" + std::string(1, c) + "'");
    }

    Expr parse_number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        };
        digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            digits();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
            if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
                pos_ = look;
                digits();
            }
        }
        double value = 0.0;
        const auto [end, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
        if (ec != std::errc{} || end != src_.data() + pos_ || !std::isfinite(value)) {
            pos_ = start;
            fail("malformed number");
        }
        return Expr::constant(value);
    }

    Expr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view name = src_.substr(start, pos_ - start);
        if (name == "x") return Expr::variable();
        for (const auto& [fname, fn] : kFunctions) {
            if (name != fname) continue;
            if (!accept('(')) fail("expected '(' after " + std::string(name));
            Expr arg = parse_expr();
            if (!accept(')')) fail("expected ')'");
            return Expr::call(fn, std::move(arg));
        }
        throw SyntaxError(ErrorKind::UnknownIdentifier, start,
                          "unknown identifier '" + std::string(name) + "'");
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

void print(const ExprNode& node, std::string& out) {
    switch (node.kind) {
        case ExprNode::Kind::Constant: {
            std::array<char, 32> buf{};
            std::snprintf(buf.data(), buf.size(), "%.17g", node.constant);
            out += buf.data();
            return;
        }
        case ExprNode::Kind::Variable: out += 'x'; return;
        case ExprNode::Kind::Negate:
            out += "(-";
            print(*node.lhs, out);
            out += ')';
            return;
        case ExprNode::Kind::Call:
            out += function_name(node.fn);
            out += '(';
            print(*node.lhs, out);
            out += ')';
            return;
        case ExprNode::Kind::Binary:
            out += '(';
            print(*node.lhs, out);
            out += ' ';
            out += op_symbol(node.op);
            out += ' ';
            print(*node.rhs, out);
            out += ')';
            return;
    }
}

} // namespace

Expr parse(std::string_view src) { return Parser(src).parse_all(); }

std::string to_string(const Expr& e) {
    std::string out;
    print(e.node(), out);
    return out;
}

// ---------------------------------------------------------------------------
// Second-order forward-mode evaluation
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void domain_error(const std::string& what, double at) {
    throw Error(ErrorKind::DomainError, what + " (argument " + std::to_string(at) + ")");
}

bool is_integer(double p) { return std::isfinite(p) && p == std::floor(p); }

// c * u^e, treating a zero coefficient as exactly zero even when u^e overflows.
double scaled_power(double c, double u, double e) { return c == 0.0 ? 0.0 : c * std::pow(u, e); }

DiffTriple power_constant_exponent(const DiffTriple& u, double p) {
    if (p == 0.0) return DiffTriple::constant(1.0);
    if (!is_integer(p)) {
        if (u.value <= 0.0) domain_error("non-integer power of non-positive base", u.value);
    } else if (p < 0.0 && u.value == 0.0) {
        domain_error("negative power of zero", u.value);
    }
    const double h0 = std::pow(u.value, p);
    const double h1 = scaled_power(p, u.value, p - 1.0);
    const double h2 = scaled_power(p * (p - 1.0), u.value, p - 2.0);
    return compose(u, h0, h1, h2);
}

DiffTriple eval_node(const ExprNode& node, const DiffTriple& x) {
    switch (node.kind) {
        case ExprNode::Kind::Constant: return DiffTriple::constant(node.constant);
        case ExprNode::Kind::Variable: return x;
        case ExprNode::Kind::Negate: return -eval_node(*node.lhs, x);
        case ExprNode::Kind::Binary: {
            const DiffTriple u = eval_node(*node.lhs, x);
            if (node.op == BinaryOp::Pow && !node.rhs->has_x) {
                return power_constant_exponent(u, eval_node(*node.rhs, x).value);
            }
            const DiffTriple v = eval_node(*node.rhs, x);
            switch (node.op) {
                case BinaryOp::Add: return u + v;
                case BinaryOp::Sub: return u - v;
                case BinaryOp::Mul: return u * v;
                case BinaryOp::Div:
                    if (v.value == 0.0) domain_error("division by zero", v.value);
                    return u / v;
                case BinaryOp::Pow: {
                    // u^v = exp(v log u)
                    if (u.value <= 0.0) domain_error("variable power of non-positive base", u.value);
                    const double lu = std::log(u.value);
                    const DiffTriple log_u = compose(u, lu, 1.0 / u.value, -1.0 / (u.value * u.value));
                    const DiffTriple e = v * log_u;
                    const double ev = std::exp(e.value);
                    return compose(e, ev, ev, ev);
                }
            }
            break;
        }
        case ExprNode::Kind::Call: {
            const DiffTriple u = eval_node(*node.lhs, x);
            const double a = u.value;
            switch (node.fn) {
                case UnaryFn::Sin: return compose(u, std::sin(a), std::cos(a), -std::sin(a));
                case UnaryFn::Cos: return compose(u, std::cos(a), -std::sin(a), -std::cos(a));
                case UnaryFn::Exp: {
                    const double e = std::exp(a);
                    return compose(u, e, e, e);
                }
                case UnaryFn::Log:
                    if (a <= 0.0) domain_error("log of non-positive argument", a);
                    return compose(u, std::log(a), 1.0 / a, -1.0 / (a * a));
                case UnaryFn::Sqrt: {
                    if (a <= 0.0) domain_error("sqrt needs a positive argument", a);
                    const double r = std::sqrt(a);
                    return compose(u, r, 0.5 / r, -0.25 / (r * a));
                }
                case UnaryFn::Tanh: {
                    const double th = std::tanh(a);
                    const double sech2 = 1.0 - th * th;
                    return compose(u, th, sech2, -2.0 * th * sech2);
                }
            }
            break;
        }
    }
    throw Error(ErrorKind::InvalidArgument, "corrupt expression node");
}

} // namespace

DiffTriple eval_d2(const Expr& e, double x) {
    const DiffTriple r = eval_node(e.node(), DiffTriple::variable(x));
    if (!std::isfinite(r.value) || !std::isfinite(r.d1) || !std::isfinite(r.d2)) {
        throw Error(ErrorKind::NonFiniteEvaluation,
                    "non-finite result at x = " + std::to_string(x));
    }
    return r;
}

FunctionHandle to_function(Expr e) {
    return FunctionHandle([e = std::move(e)](double x) { return eval_d2(e, x); });
}

// ---------------------------------------------------------------------------
// Sampled derivative bounds
// ---------------------------------------------------------------------------

namespace {

constexpr int kGoldenEvaluations = 31;

double derivative(const DiffTriple& r, int order) { return order == 1 ? r.d1 : r.d2; }

// Golden-section search for the minimum of sign * g on [lo, hi] with a fixed
// evaluation count; returns the extreme value of g seen (min if sign = 1).
template <class G>
double golden_extreme(const G& g, double lo, double hi, double sign) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = sign * g(x1);
    double f2 = sign * g(x2);
    double best = std::min(f1, f2);
    for (int evals = 2; evals < kGoldenEvaluations; ++evals) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = sign * g(x1);
            best = std::min(best, f1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = sign * g(x2);
            best = std::min(best, f2);
        }
    }
    return sign * best;
}

} // namespace

SampledBounds estimate_derivative_bounds(const Expr& e, const Interval& iv, int samples,
                                         int order) {
    if (samples < 2) throw Error(ErrorKind::InvalidArgument, "samples must be >= 2");
    if (order != 1 && order != 2) throw Error(ErrorKind::InvalidArgument, "order must be 1 or 2");

    const auto grid = omp::sample_grid(e, iv, samples);
    int arg_min = 0;
    int arg_max = 0;
    for (int i = 1; i < samples; ++i) {
        if (derivative(grid[i], order) < derivative(grid[arg_min], order)) arg_min = i;
        if (derivative(grid[i], order) > derivative(grid[arg_max], order)) arg_max = i;
    }
    const auto g = [&](double x) { return derivative(eval_d2(e, x), order); };
    const auto bracket = [&](int i) {
        return std::pair{grid_point(iv, std::max(i - 1, 0), samples),
                         grid_point(iv, std::min(i + 1, samples - 1), samples)};
    };
    const auto [min_lo, min_hi] = bracket(arg_min);
    const auto [max_lo, max_hi] = bracket(arg_max);
    const double lower = std::min(derivative(grid[arg_min], order),
                                  golden_extreme(g, min_lo, min_hi, 1.0));
    const double upper = std::max(derivative(grid[arg_max], order),
                                  golden_extreme(g, max_lo, max_hi, -1.0));
    return {CurvatureBounds(lower, upper), true};
}

SampledBounds estimate_curvature_bounds(const Expr& e, const Interval& iv, int samples) {
    return estimate_derivative_bounds(e, iv, samples, 2);
}

} // namespace taylor
