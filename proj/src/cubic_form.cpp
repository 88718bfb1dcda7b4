#include "szeta/cubic_form.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstdlib>

#include "szeta/errors.hpp"

namespace szeta {

namespace {

constexpr Int kSmall = Int(1) << 29;  // quartic expressions stay inside i128

Int wide_to_int(Wide w, const char* what) {
    if (w > Wide(INT64_MAX) || w < Wide(INT64_MIN))
        throw overflow_guard(std::string(what) + " does not fit in 64 bits");
    return Int(w);
}

mpz_class z(Int n) { return mpz_class(static_cast<long>(n)); }

Int mpz_to_int(const mpz_class& v, const char* what) {
    if (!v.fits_slong_p())
        throw overflow_guard(std::string(what) + " does not fit in 64 bits");
    return Int(v.get_si());
}

bool all_small(std::initializer_list<Int> xs, Int bound) {
    return std::all_of(xs.begin(), xs.end(),
                       [bound](Int x) { return x > -bound && x < bound; });
}

}  // namespace

Wide BinaryCubicForm::value(Int u, Int v) const {
    Wide U = u, V = v;
    return ((Wide(a) * U + Wide(b) * V) * U + Wide(c) * V * V) * U + Wide(d) * V * V * V;
}

Int BinaryCubicForm::discriminant() const {
    if (all_small({a, b, c, d}, kSmall)) {
        Wide A = a, B = b, C = c, D = d;
        Wide disc = B * B * C * C - 4 * A * C * C * C - 4 * B * B * B * D -
                    27 * A * A * D * D + 18 * A * B * C * D;
        return wide_to_int(disc, "cubic discriminant");
    }
    mpz_class A = z(a), B = z(b), C = z(c), D = z(d);
    mpz_class disc = B * B * C * C - 4 * A * C * C * C - 4 * B * B * B * D -
                     27 * A * A * D * D + 18 * A * B * C * D;
    return mpz_to_int(disc, "cubic discriminant");
}

std::string BinaryCubicForm::str() const {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," +
           std::to_string(c) + "," + std::to_string(d) + ")";
}

Wide QuadraticForm::value(Int u, Int v) const {
    Wide U = u, V = v;
    return (Wide(a) * U + Wide(b) * V) * U + Wide(c) * V * V;
}

Int QuadraticForm::discriminant() const {
    Wide disc = Wide(b) * b - 4 * Wide(a) * c;
    return wide_to_int(disc, "quadratic discriminant");
}

std::string QuadraticForm::str() const {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," +
           std::to_string(c) + ")";
}

Int Mat2::det() const {
    return wide_to_int(Wide(p) * s - Wide(q) * r, "determinant");
}

bool Mat2::is_unimodular() const {
    Wide d = Wide(p) * s - Wide(q) * r;
    return d == 1 || d == -1;
}

Mat2 Mat2::inverse() const {
    Wide d = Wide(p) * s - Wide(q) * r;
    if (d == 1) return {s, -q, -r, p};
    if (d == -1) return {-s, q, r, -p};
    throw precondition_violated("inverse of non-unimodular matrix " + str());
}

Mat2 operator*(const Mat2& g, const Mat2& h) {
    auto mul = [](Wide x, Wide y, Wide z1, Wide w) {
        Wide v = x * y + z1 * w;
        if (v > Wide(INT64_MAX) || v < Wide(INT64_MIN))
            throw overflow_guard("matrix product entry does not fit in 64 bits");
        return Int(v);
    };
    return {mul(g.p, h.p, g.q, h.r), mul(g.p, h.q, g.q, h.s),
            mul(g.r, h.p, g.s, h.r), mul(g.r, h.q, g.s, h.s)};
}

std::string Mat2::str() const {
    return "[[" + std::to_string(p) + "," + std::to_string(q) + "],[" +
           std::to_string(r) + "," + std::to_string(s) + "]]";
}

BinaryCubicForm apply(const Mat2& g, const BinaryCubicForm& f) {
    Wide dt = Wide(g.p) * g.s - Wide(g.q) * g.r;
    if (dt != 1 && dt != -1)
        throw precondition_violated("action by non-unimodular matrix " + g.str());

    constexpr Int kLin = Int(1) << 20;  // coefficient expressions stay inside i128
    if (all_small({f.a, f.b, f.c, f.d, g.p, g.q, g.r, g.s}, kLin)) {
        Wide a = f.a, b = f.b, c = f.c, d = f.d;
        Wide p = g.p, q = g.q, r = g.r, s = g.s;
        Wide a2 = a * p * p * p + b * p * p * q + c * p * q * q + d * q * q * q;
        Wide b2 = 3 * a * p * p * r + b * (p * p * s + 2 * p * q * r) +
                  c * (2 * p * q * s + q * q * r) + 3 * d * q * q * s;
        Wide c2 = 3 * a * p * r * r + b * (q * r * r + 2 * p * r * s) +
                  c * (p * s * s + 2 * q * r * s) + 3 * d * q * s * s;
        Wide d2 = a * r * r * r + b * r * r * s + c * r * s * s + d * s * s * s;
        return {wide_to_int(a2 * dt, "transformed coefficient"),
                wide_to_int(b2 * dt, "transformed coefficient"),
                wide_to_int(c2 * dt, "transformed coefficient"),
                wide_to_int(d2 * dt, "transformed coefficient")};
    }
    mpz_class a = z(f.a), b = z(f.b), c = z(f.c), d = z(f.d);
    mpz_class p = z(g.p), q = z(g.q), r = z(g.r), s = z(g.s);
    mpz_class a2 = a * p * p * p + b * p * p * q + c * p * q * q + d * q * q * q;
    mpz_class b2 = 3 * a * p * p * r + b * (p * p * s + 2 * p * q * r) +
                   c * (2 * p * q * s + q * q * r) + 3 * d * q * q * s;
    mpz_class c2 = 3 * a * p * r * r + b * (q * r * r + 2 * p * r * s) +
                   c * (p * s * s + 2 * q * r * s) + 3 * d * q * s * s;
    mpz_class d2 = a * r * r * r + b * r * r * s + c * r * s * s + d * s * s * s;
    mpz_class e = z(Int(dt));
    return {mpz_to_int(a2 * e, "transformed coefficient"),
            mpz_to_int(b2 * e, "transformed coefficient"),
            mpz_to_int(c2 * e, "transformed coefficient"),
            mpz_to_int(d2 * e, "transformed coefficient")};
}

QuadraticForm apply(const Mat2& g, const QuadraticForm& h) {
    Wide dt = Wide(g.p) * g.s - Wide(g.q) * g.r;
    if (dt != 1 && dt != -1)
        throw precondition_violated("action by non-unimodular matrix " + g.str());
    mpz_class a = z(h.a), b = z(h.b), c = z(h.c);
    mpz_class p = z(g.p), q = z(g.q), r = z(g.r), s = z(g.s);
    mpz_class a2 = a * p * p + b * p * q + c * q * q;
    mpz_class b2 = 2 * a * p * r + b * (p * s + q * r) + 2 * c * q * s;
    mpz_class c2 = a * r * r + b * r * s + c * s * s;
    return {mpz_to_int(a2, "transformed coefficient"),
            mpz_to_int(b2, "transformed coefficient"),
            mpz_to_int(c2, "transformed coefficient")};
}

QuadraticForm hessian(const BinaryCubicForm& f) {
    Wide P = Wide(f.b) * f.b - 3 * Wide(f.a) * f.c;
    Wide Q = Wide(f.b) * f.c - 9 * Wide(f.a) * f.d;
    Wide R = Wide(f.c) * f.c - 3 * Wide(f.b) * f.d;
    return {wide_to_int(P, "hessian coefficient"), wide_to_int(Q, "hessian coefficient"),
            wide_to_int(R, "hessian coefficient")};
}

}  // namespace szeta
