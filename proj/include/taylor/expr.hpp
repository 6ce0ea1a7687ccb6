#pragma once

#include "taylor/diff_triple.hpp"
#include "taylor/scheme.hpp"

#include <memory>
#include <string>
#include <string_view>

namespace taylor {

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class UnaryFn { Sin, Cos, Exp, Log, Sqrt, Tanh };

struct ExprNode;

/// Immutable expression tree in the single variable x.
///
/// Grammar (whitespace-insensitive, names are lowercase):
///
///   expr    = term { ("+" | "-") term } ;
///   term    = unary { ("*" | "/") unary } ;
///   unary   = "-" unary | power ;
///   power   = primary [ "^" unary ] ;          (* right-associative *)
///   primary = number | "x" | name "(" expr ")" | "(" expr ")" ;
///   name    = "sin" | "cos" | "exp" | "log" | "sqrt" | "tanh" ;
class Expr {
public:
    [[nodiscard]] static Expr constant(double c);
    [[nodiscard]] static Expr variable();
    [[nodiscard]] static Expr negate(Expr operand);
    [[nodiscard]] static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
    [[nodiscard]] static Expr call(UnaryFn fn, Expr arg);

    [[nodiscard]] const ExprNode& node() const noexcept { return *root_; }
    [[nodiscard]] bool depends_on_x() const noexcept;

    friend bool operator==(const Expr& lhs, const Expr& rhs);

private:
    explicit Expr(std::shared_ptr<const ExprNode> root) : root_(std::move(root)) {}

    std::shared_ptr<const ExprNode> root_;
};

struct ExprNode {
    enum class Kind { Constant, Variable, Negate, Binary, Call };

    Kind kind;
    double constant = 0.0;
    BinaryOp op = BinaryOp::Add;
    UnaryFn fn = UnaryFn::Sin;
    std::shared_ptr<const ExprNode> lhs;   // operand for Negate/Call
    std::shared_ptr<const ExprNode> rhs;
    bool has_x = false;
};

/// Throws SyntaxError (kind SyntaxError or UnknownIdentifier) with the byte
/// offset of the offending token.
[[nodiscard]] Expr parse(std::string_view src);

/// Fully parenthesized text that parses back to a structurally equal tree.
[[nodiscard]] std::string to_string(const Expr& e);

/// (f, f', f'') at x. Throws DomainError outside log/sqrt/division/power
/// domains and NonFiniteEvaluation on overflow.
[[nodiscard]] DiffTriple eval_d2(const Expr& e, double x);

[[nodiscard]] FunctionHandle to_function(Expr e);

struct SampledBounds {
    CurvatureBounds bounds;
    bool heuristic = true;   // sampled extrema, not an enclosure
};

/// Extrema of the `order`-th derivative (1 or 2) sampled on `samples` equally
/// spaced points including both endpoints, then sharpened by a fixed
/// 31-evaluation golden-section search around the arg-min and arg-max sample.
[[nodiscard]] SampledBounds estimate_derivative_bounds(const Expr& e, const Interval& iv,
                                                       int samples, int order);

/// estimate_derivative_bounds with order 2: bounds on f''.
[[nodiscard]] SampledBounds estimate_curvature_bounds(const Expr& e, const Interval& iv,
                                                      int samples);

} // namespace taylor
