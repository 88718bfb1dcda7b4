#pragma once

#include "szeta/cubic_fields.hpp"
#include "szeta/quadratic.hpp"
#include "szeta/series.hpp"

namespace szeta {

// Right-hand sides of the three fundamental-discriminant counting
// identities, expanded by Euler product:
//   absolute: (1 - 2^{-s} + 2 * 4^{-s}) zeta(s) / zeta(2s)
//   signed_:  L(s, chi4) / zeta(2s), chi4(p) = kronecker(-4, p)
//   positive: half the sum of the other two
CoeffSeries quad_series_rhs(QuadVariant variant, Int x);

// Shintani coefficient sum by orbit enumeration: coefficient at n is
// sum of 1/stab_order over classes of discriminant +n (sign > 0) or -n.
CoeffSeries shintani_xi_direct(int sign, Int x, const EnumerateOptions& opts = {});

// The same series assembled from field data:
//   zeta(4s) zeta(6s-1) * sum over fields k of sign-matching discriminant of
//   (2 / o(k)) |disc k|^{-s} R_k(2s) / R_k(4s)
// with o = 6, 2, 1, 3 for the trivial, quadratic, noncyclic cubic, cyclic
// cubic field and R_k = zeta^3, zeta * zeta_k, zeta_k, zeta_k.  Every local
// ratio is a polynomial in p^{-2s}, looked up by splitting shape.  `fields`
// must contain every cubic field with |disc| <= covered of the right sign;
// covered < x throws insufficient_data.  Quadratic and trivial terms are
// generated internally.
CoeffSeries dw_xi(int sign, Int x, const std::vector<CubicField>& fields, Int covered);

// Single coefficient of dw_xi without building the whole series; cubic
// lookups go through the cache.
Rat dw_coefficient_at(int sign, Int n, FieldCache& cache);

// Counting series for cubic fields of discriminant d n^2 (coefficient at n),
// for d < 0 fundamental, d = 3 mod 9, 3 not dividing h(d):
//   -1/2 + 1/2 (1 + 2 * 3^{-s}) prod_{kronecker(-3d, p) = 1} (1 + 2 p^{-s})
CoeffSeries cm_minus(Int d, Int x);

// Positive-discriminant counterpart, for d > 0 fundamental, d = 3 mod 9,
// 3 not dividing h(-d/3):
//   -1/2 + 1/6 (1 + 2 * 3^{-s}) prod (1 + 2 p^{-s})
//        + 1/3 (1 - 3^{-s}) prod (1 + omega_d(p) p^{-s})
// both products over kronecker(-3d, p) = 1, omega via the field E of
// discriminant -27d (computed when not supplied).
CoeffSeries cm_plus(Int d, Int x, const CubicField* e = nullptr,
                    const EnumerateOptions& opts = {});

// CSV rows "n,numerator,denominator" with header.
void write_series_csv(std::ostream& out, const CoeffSeries& s);

}  // namespace szeta
