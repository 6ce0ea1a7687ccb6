#pragma once

#include <functional>
#include <utility>

namespace taylor {

/// (f, f', f'') at one point; the arithmetic below is second-order
/// forward-mode differentiation.
struct DiffTriple {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;

    [[nodiscard]] static constexpr DiffTriple constant(double c) noexcept { return {c, 0.0, 0.0}; }
    [[nodiscard]] static constexpr DiffTriple variable(double x) noexcept { return {x, 1.0, 0.0}; }

    friend bool operator==(const DiffTriple&, const DiffTriple&) = default;
};

[[nodiscard]] constexpr DiffTriple operator-(const DiffTriple& u) noexcept {
    return {-u.value, -u.d1, -u.d2};
}

[[nodiscard]] constexpr DiffTriple operator+(const DiffTriple& u, const DiffTriple& v) noexcept {
    return {u.value + v.value, u.d1 + v.d1, u.d2 + v.d2};
}

[[nodiscard]] constexpr DiffTriple operator-(const DiffTriple& u, const DiffTriple& v) noexcept {
    return {u.value - v.value, u.d1 - v.d1, u.d2 - v.d2};
}

[[nodiscard]] constexpr DiffTriple operator*(const DiffTriple& u, const DiffTriple& v) noexcept {
    return {u.value * v.value, u.d1 * v.value + u.value * v.d1,
            u.d2 * v.value + 2.0 * u.d1 * v.d1 + u.value * v.d2};
}

/// Caller guarantees v.value != 0.
[[nodiscard]] constexpr DiffTriple operator/(const DiffTriple& u, const DiffTriple& v) noexcept {
    const double q = u.value / v.value;
    const double q1 = (u.d1 - q * v.d1) / v.value;
    const double q2 = (u.d2 - 2.0 * q1 * v.d1 - q * v.d2) / v.value;
    return {q, q1, q2};
}

/// Chain rule for h(u) given h(u.value), h'(u.value), h''(u.value).
[[nodiscard]] constexpr DiffTriple compose(const DiffTriple& u, double h0, double h1,
                                           double h2) noexcept {
    return {h0, h1 * u.d1, h2 * u.d1 * u.d1 + h1 * u.d2};
}

/// A C^2 function, evaluated as (f, f', f'') at a point. Must be re-entrant.
class FunctionHandle {
public:
    using Eval = std::function<DiffTriple(double)>;

    explicit FunctionHandle(Eval eval) : eval_(std::move(eval)) {}

    [[nodiscard]] DiffTriple operator()(double x) const { return eval_(x); }

private:
    Eval eval_;
};

} // namespace taylor
