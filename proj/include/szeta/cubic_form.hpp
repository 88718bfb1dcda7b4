#pragma once

#include <compare>
#include <string>

#include "szeta/rational.hpp"

namespace szeta {

// Integral binary cubic form a u^3 + b u^2 v + c u v^2 + d v^3.
// Default comparison gives lexicographic order on (a, b, c, d); canonical
// orbit representatives are the lex-least member, so this order is load
// bearing throughout.
struct BinaryCubicForm {
    Int a = 0, b = 0, c = 0, d = 0;

    friend auto operator<=>(const BinaryCubicForm&, const BinaryCubicForm&) = default;

    // f(u, v) in 128-bit arithmetic.  Safe when |coefficients| and |u|, |v|
    // are below 2^20; callers outside that range must evaluate in mpz.
    Wide value(Int u, Int v) const;

    // b^2 c^2 - 4 a c^3 - 4 b^3 d - 27 a^2 d^2 + 18 a b c d.
    // Computed exactly; throws overflow_guard if the result leaves int64.
    Int discriminant() const;

    bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }
    BinaryCubicForm negated() const { return {-a, -b, -c, -d}; }
    std::string str() const;
};

// Integral binary quadratic form a u^2 + b uv + c v^2.
struct QuadraticForm {
    Int a = 0, b = 0, c = 0;

    friend auto operator<=>(const QuadraticForm&, const QuadraticForm&) = default;

    Wide value(Int u, Int v) const;
    Int discriminant() const;  // b^2 - 4 a c, with the same overflow contract
    QuadraticForm negated() const { return {-a, -b, -c}; }
    std::string str() const;
};

// Element of GL2(Z), rows (p q) and (r s), acting on row vectors:
// (u, v) g = (p u + r v, q u + s v).
struct Mat2 {
    Int p = 1, q = 0, r = 0, s = 1;

    friend bool operator==(const Mat2&, const Mat2&) = default;

    Int det() const;                    // throws overflow_guard on int64 overflow
    bool is_unimodular() const;         // det in {+1, -1}
    Mat2 inverse() const;               // requires det = +-1
    friend Mat2 operator*(const Mat2& g, const Mat2& h);
    std::string str() const;
};

inline const Mat2 kIdentity{1, 0, 0, 1};

// Twisted action (g . f)(u, v) = f((u, v) g) / det g, defined for det = +-1.
// Composes as apply(g, apply(h, f)) == apply(g * h, f).
BinaryCubicForm apply(const Mat2& g, const BinaryCubicForm& f);

// Plain substitution (g . h)(u, v) = h((u, v) g) for quadratics; with this
// convention hessian(apply(g, f)) == apply(g, hessian(f)) for det = +-1.
QuadraticForm apply(const Mat2& g, const QuadraticForm& h);

// Hessian covariant (b^2 - 3ac, bc - 9ad, c^2 - 3bd); its discriminant is
// -3 times the discriminant of f.
QuadraticForm hessian(const BinaryCubicForm& f);

}  // namespace szeta
