#include "szeta/dirichlet.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <ostream>
#include <set>

#include "szeta/arith.hpp"
#include "szeta/errors.hpp"

namespace szeta {

// ---- series algebra ----

CoeffSeries convolve(const CoeffSeries& f, const CoeffSeries& g) {
    if (f.limit != g.limit)
        throw limit_mismatch("convolve: limits " + std::to_string(f.limit) + " and " +
                             std::to_string(g.limit));
    CoeffSeries h(f.limit);
    for (Int i = 1; i <= f.limit; ++i) {
        if (f.at(i).is_zero()) continue;
        for (Int j = 1; i * j <= f.limit; ++j) {
            if (g.at(j).is_zero()) continue;
            h.at(i * j) += f.at(i) * g.at(j);
        }
    }
    return h;
}

CoeffSeries euler_product(const std::vector<LocalFactor>& factors, Int limit) {
    if (limit < 1) throw precondition_violated("euler_product: limit must be positive");
    std::set<Int> primes_seen;
    CoeffSeries s(limit);
    s.at(1) = Rat(1);
    for (const auto& lf : factors) {
        if (lf.p < 2 || !is_prime(lf.p))
            throw precondition_violated("euler_product: bad prime " + std::to_string(lf.p));
        if (!primes_seen.insert(lf.p).second)
            throw precondition_violated("euler_product: duplicate prime " +
                                        std::to_string(lf.p));
        if (lf.taylor.empty() || !(lf.taylor[0] == Rat(1)))
            throw precondition_violated("euler_product: taylor[0] must be 1 at p = " +
                                        std::to_string(lf.p));
        if (lf.p > limit) continue;  // only the constant term 1 would contribute
        // In-place multiply: updates land at n * p^e > n, and descending order
        // means every read of s.at(n) still sees the pre-multiplication value.
        for (Int n = limit / lf.p; n >= 1; --n) {
            if (s.at(n).is_zero()) continue;
            Wide q = lf.p;
            for (std::size_t e = 1; e < lf.taylor.size(); ++e) {
                Wide nn = Wide(n) * q;
                if (nn > limit) break;
                if (!lf.taylor[e].is_zero()) s.at(Int(nn)) += lf.taylor[e] * s.at(n);
                q *= lf.p;
            }
        }
    }
    return s;
}

CoeffSeries zeta_shift(Int a, Int b, Int limit) {
    if (a < 1) throw precondition_violated("zeta_shift: a must be positive");
    if (limit < 1) throw precondition_violated("zeta_shift: limit must be positive");
    CoeffSeries s(limit);
    for (Int m = 1;; ++m) {
        Wide n = 1;
        for (Int i = 0; i < a && n <= limit; ++i) n *= m;
        if (n > limit) break;
        Wide v = 1;
        for (Int i = 0; i < (b < 0 ? -b : b); ++i) {
            v *= m;
            if (v > (Wide(1) << 62)) throw overflow_guard("zeta_shift: m^|b| overflow");
        }
        s.at(Int(n)) = b >= 0 ? Rat(Int(v)) : Rat(1, Int(v));
    }
    return s;
}

CoeffSeries add(const CoeffSeries& f, const CoeffSeries& g) {
    if (f.limit != g.limit)
        throw limit_mismatch("add: limits " + std::to_string(f.limit) + " and " +
                             std::to_string(g.limit));
    CoeffSeries h(f.limit);
    for (Int n = 1; n <= f.limit; ++n) h.at(n) = f.at(n) + g.at(n);
    return h;
}

CoeffSeries scale(const CoeffSeries& f, const Rat& c) {
    CoeffSeries h(f.limit);
    for (Int n = 1; n <= f.limit; ++n) h.at(n) = f.at(n) * c;
    return h;
}

// ---- right-hand sides of the fundamental-discriminant identities ----

CoeffSeries quad_series_rhs(QuadVariant variant, Int x) {
    if (x < 1) throw precondition_violated("quad_series_rhs: limit must be positive");
    if (variant == QuadVariant::positive) {
        CoeffSeries half_sum = add(quad_series_rhs(QuadVariant::absolute, x),
                                   quad_series_rhs(QuadVariant::signed_, x));
        return scale(half_sum, Rat(1, 2));
    }
    std::vector<LocalFactor> factors;
    for (Int p : primes_up_to(x)) {
        if (p > x) break;  // the shared table may extend past x
        LocalFactor lf;
        lf.p = p;
        if (variant == QuadVariant::absolute) {
            // (1 - t + 2 t^2)(1 + t) at p = 2, (1 + t) elsewhere, where the
            // second factor is the local piece of zeta(s)/zeta(2s)
            lf.taylor = p == 2 ? std::vector<Rat>{Rat(1), Rat(0), Rat(1), Rat(2)}
                               : std::vector<Rat>{Rat(1), Rat(1)};
        } else {
            // L(s, chi4)/zeta(2s): local factor (1 - t^2) at 2, else
            // (1 + chi4(p) t) with chi4(p) = kronecker(-4, p)
            lf.taylor = p == 2 ? std::vector<Rat>{Rat(1), Rat(0), Rat(-1)}
                               : std::vector<Rat>{Rat(1), Rat(kronecker(-4, p))};
        }
        factors.push_back(std::move(lf));
    }
    return euler_product(factors, x);
}

// ---- Shintani coefficients by orbit enumeration ----

CoeffSeries shintani_xi_direct(int sign, Int x, const EnumerateOptions& opts) {
    if (sign == 0) throw precondition_violated("shintani_xi_direct: sign must be nonzero");
    if (x < 1) throw precondition_violated("shintani_xi_direct: limit must be positive");
    CoeffSeries s(x);
    Int lo = sign > 0 ? 1 : -x;
    Int hi = sign > 0 ? x : -1;
    enumerate_classes_stream(
        lo, hi,
        [&](const OrbitClass& c) {
            Int n = c.disc < 0 ? -c.disc : c.disc;
            s.at(n) += Rat(1, c.stab_order);
        },
        opts);
    return s;
}

// ---- the field-sum assembly ----

namespace {

// Local ratio of R_k(2s)/R_k(4s) as a polynomial in u = p^{-2s}: the
// contribution at p^{2e} is row[e], zero past the row's end.
using RatioRow = std::array<Int, 4>;
constexpr RatioRow kRowSplit{1, 3, 3, 1};     // (1+u)^3: zeta^3-type local behavior
constexpr RatioRow kRowInert{1, 1, 1, 1};     // (1+u)(1+u^2)
constexpr RatioRow kRowCubicInert{1, 0, 0, 1};  // 1+u^3
constexpr RatioRow kRowRamified{1, 2, 1, 0};  // (1+u)^2, length 3
constexpr RatioRow kRowTotallyRamified{1, 1, 0, 0};  // 1+u, length 2
constexpr std::array<int, 5> kRowLength{4, 4, 4, 3, 2};

enum class RowId { split, inert, cubic_inert, ramified, totally_ramified };

const RatioRow& row_of(RowId id) {
    switch (id) {
        case RowId::split: return kRowSplit;
        case RowId::inert: return kRowInert;
        case RowId::cubic_inert: return kRowCubicInert;
        case RowId::ramified: return kRowRamified;
        case RowId::totally_ramified: return kRowTotallyRamified;
    }
    return kRowSplit;
}

Int row_entry(RowId id, int e) {
    if (e >= kRowLength[int(id)]) return 0;
    return row_of(id)[std::size_t(e)];
}

RowId row_for_quadratic(Int disc, Int p) {
    int chi = kronecker(disc, p);
    return chi > 0 ? RowId::split : chi < 0 ? RowId::inert : RowId::ramified;
}

RowId row_for_cubic(const CubicField& k, Int p) {
    switch (splitting_type(k, p)) {
        case SplittingSymbol::s111: return RowId::split;
        case SplittingSymbol::s12: return RowId::inert;
        case SplittingSymbol::s3: return RowId::cubic_inert;
        case SplittingSymbol::s121: return RowId::ramified;
        case SplittingSymbol::s13: return RowId::totally_ramified;
    }
    return RowId::split;
}

// Coefficient the field contributes at |disc| r^2: the product of ratio-row
// entries over the prime powers of r.  The shape chooser runs per prime.
template <typename Shape>
Int square_part(Int r, Shape&& shape) {
    Int value = 1;
    for (const auto& [p, e] : factorize(r).factors) {
        value *= row_entry(shape(p), e);
        if (value == 0) return 0;
    }
    return value;
}

Rat field_weight(const CubicField& k) { return Rat(2, k.cyclic ? 3 : 1); }

}  // namespace

CoeffSeries dw_xi(int sign, Int x, const std::vector<CubicField>& fields, Int covered) {
    if (sign == 0) throw precondition_violated("dw_xi: sign must be nonzero");
    if (x < 1) throw precondition_violated("dw_xi: limit must be positive");
    if (covered < x)
        throw insufficient_data("dw_xi: field data covers |disc| <= " +
                                std::to_string(covered) + " but the series needs " +
                                std::to_string(x));
    CoeffSeries ksum(x);
    if (sign > 0) {
        // the trivial field: disc 1, weight 2/6, zeta^3-type ratio rows
        for (Int r = 1; r * r <= x; ++r) {
            Int sq = square_part(r, [](Int) { return RowId::split; });
            if (sq) ksum.at(r * r) += Rat(sq) * Rat(1, 3);
        }
    }
    for (Int d0 = 3; d0 <= x; ++d0) {
        Int disc = sign > 0 ? d0 : -d0;
        if (!is_fundamental_discriminant(disc)) continue;
        for (Int r = 1; d0 * r * r <= x; ++r) {
            Int sq = square_part(r, [&](Int p) { return row_for_quadratic(disc, p); });
            if (sq) ksum.at(d0 * r * r) += Rat(sq);
        }
    }
    for (const auto& k : fields) {
        if ((sign > 0) != (k.disc > 0)) continue;
        Int d0 = k.disc < 0 ? -k.disc : k.disc;
        if (d0 > x) continue;
        Rat w = field_weight(k);
        for (Int r = 1; d0 * r * r <= x; ++r) {
            Int sq = square_part(r, [&](Int p) { return row_for_cubic(k, p); });
            if (sq) ksum.at(d0 * r * r) += w * Rat(sq);
        }
    }
    return convolve(convolve(zeta_shift(4, 0, x), zeta_shift(6, 1, x)), ksum);
}

namespace {

// Sum over |disc| r^2 = v of every field term of the matching sign.
Rat ksum_at(int sign, Int v, FieldCache& cache) {
    Rat acc;
    for (Int r = 1; r * r <= v; ++r) {
        if (v % (r * r)) continue;
        Int d0 = v / (r * r);
        if (sign > 0 && d0 == 1) {
            Int sq = square_part(r, [](Int) { return RowId::split; });
            acc += Rat(sq) * Rat(1, 3);
        }
        Int disc = sign > 0 ? d0 : -d0;
        if (d0 >= 3 && is_fundamental_discriminant(disc)) {
            Int sq = square_part(r, [&](Int p) { return row_for_quadratic(disc, p); });
            acc += Rat(sq);
        }
        for (const auto& k : cache.get(disc)) {
            Int sq = square_part(r, [&](Int p) { return row_for_cubic(k, p); });
            acc += field_weight(k) * Rat(sq);
        }
    }
    return acc;
}

}  // namespace

Rat dw_coefficient_at(int sign, Int n, FieldCache& cache) {
    if (sign == 0) throw precondition_violated("dw_coefficient_at: sign must be nonzero");
    if (n < 1) throw precondition_violated("dw_coefficient_at: index must be positive");
    Rat acc;
    for (Int t = 1; t * t * t * t <= n; ++t) {
        if (n % (t * t * t * t)) continue;
        Int n1 = n / (t * t * t * t);
        for (Int m = 1; m * m * m * m * m * m <= n1; ++m) {
            Wide m6 = Wide(m) * m * m * m * m * m;
            if (n1 % Int(m6)) continue;
            acc += Rat(m) * ksum_at(sign, n1 / Int(m6), cache);
        }
    }
    return acc;
}

// ---- the two counting formulas for a(d n^2) ----

namespace {

std::vector<LocalFactor> split_prime_factors(Int d, Int x, const Rat& at3,
                                             const std::function<Rat(Int)>& weight) {
    std::vector<LocalFactor> factors;
    factors.push_back({3, {Rat(1), at3}});
    for (Int p : primes_up_to(x)) {
        if (p > x) break;  // the shared table may extend past x
        if (kronecker(-3 * d, p) == 1) factors.push_back({p, {Rat(1), weight(p)}});
    }
    return factors;
}

}  // namespace

CoeffSeries cm_minus(Int d, Int x) {
    if (x < 1) throw precondition_violated("cm_minus: limit must be positive");
    if (d >= 0 || !is_fundamental_discriminant(d))
        throw precondition_violated("cm_minus: d must be a negative fundamental discriminant");
    if (((d % 9) + 9) % 9 != 3)
        throw precondition_violated("cm_minus: d = 3 mod 9 required, got " + std::to_string(d));
    if (class_number(d) % 3 == 0)
        throw precondition_violated("cm_minus: 3 divides h(" + std::to_string(d) + ")");
    CoeffSeries s = scale(
        euler_product(split_prime_factors(d, x, Rat(2), [](Int) { return Rat(2); }), x),
        Rat(1, 2));
    s.at(1) += Rat(-1, 2);
    return s;
}

CoeffSeries cm_plus(Int d, Int x, const CubicField* e, const EnumerateOptions& opts) {
    if (x < 1) throw precondition_violated("cm_plus: limit must be positive");
    if (d <= 0 || !is_fundamental_discriminant(d))
        throw precondition_violated("cm_plus: d must be a positive fundamental discriminant");
    if (d % 9 != 3)
        throw precondition_violated("cm_plus: d = 3 mod 9 required, got " + std::to_string(d));
    Int m = -(d / 3);
    if (!is_fundamental_discriminant(m) || class_number(m) % 3 == 0)
        throw precondition_violated("cm_plus: h(" + std::to_string(m) +
                                    ") condition fails or -d/3 is not fundamental");
    CubicField field_e = e ? *e : find_E(d, opts);
    if (e && e->disc != -27 * d)
        throw precondition_violated("cm_plus: supplied E has discriminant " +
                                    std::to_string(e->disc) + ", expected " +
                                    std::to_string(-27 * d));
    CoeffSeries part1 = scale(
        euler_product(split_prime_factors(d, x, Rat(2), [](Int) { return Rat(2); }), x),
        Rat(1, 6));
    CoeffSeries part2 = scale(
        euler_product(split_prime_factors(d, x, Rat(-1),
                                          [&](Int p) { return Rat(omega_d(d, p, field_e)); }),
                      x),
        Rat(1, 3));
    CoeffSeries s = add(part1, part2);
    s.at(1) += Rat(-1, 2);
    return s;
}

void write_series_csv(std::ostream& out, const CoeffSeries& s) {
    out << "n,numerator,denominator\n";
    for (Int n = 1; n <= s.limit; ++n)
        out << n << "," << s.at(n).num() << "," << s.at(n).den() << "\n";
}

}  // namespace szeta
