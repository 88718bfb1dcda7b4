#include "szeta/quadratic.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <ostream>
#include <set>

#include "szeta/arith.hpp"
#include "szeta/errors.hpp"

namespace szeta {

namespace {

void check_class_number_input(Int d) {
    if (!is_fundamental_discriminant(d))
        throw precondition_violated("class_number: " + std::to_string(d) +
                                    " is not a fundamental discriminant");
    if (d > CLASS_NUMBER_LIMIT || d < -CLASS_NUMBER_LIMIT)
        throw bound_exceeded("class_number: |" + std::to_string(d) + "| exceeds " +
                             std::to_string(CLASS_NUMBER_LIMIT));
}

// d < 0: reduced positive definite (a, b, c) have -a < b <= a <= c with
// b >= 0 when a = c; counting b >= 0 only, a generic form stands for the
// pair (a, +-b, c).
Int h_negative(Int d) {
    Int count = 0;
    for (Int b = (d & 1) ? 1 : 0; 3 * b * b <= -d; b += 2) {
        Int m = (b * b - d) / 4;  // a c
        for (Int a = std::max<Int>(b, 1); a * a <= m; ++a) {
            if (m % a) continue;
            count += (b == 0 || a == b || a * a == m) ? 1 : 2;
        }
    }
    return count;
}

// Same count, outer loop over a with divisibility tests instead of divisor
// scans, every (a, b, c) visited individually.
Int h_negative_recheck(Int d) {
    Int count = 0;
    for (Int a = 1; 3 * a * a <= -d; ++a) {
        for (Int b = -a + 1; b <= a; ++b) {
            if (((b - d) & 1) != 0) continue;
            if ((b * b - d) % (4 * a)) continue;
            Int c = (b * b - d) / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            ++count;
        }
    }
    return count;
}

// ---- d > 0 (nonsquare): reduced indefinite forms and their rho-cycles ----

struct IndefForm {
    Int a = 0, b = 0, c = 0;
    friend auto operator<=>(const IndefForm&, const IndefForm&) = default;
};

// Reduced means |sqrt(d) - 2|a|| < b < sqrt(d), all tested in integers.
bool is_reduced_indefinite(Int a, Int b, Int d) {
    if (b <= 0 || b * b >= d) return false;
    Int t = 2 * std::llabs(a);
    if ((t + b) * (t + b) <= d) return false;
    if (t > b && (t - b) * (t - b) >= d) return false;
    return true;
}

// One reduction step: (a, b, c) -> (c, r, (r^2 - d) / 4c) with r = -b
// (mod 2|c|) placed in (sqrt(d) - 2|c|, sqrt(d)] when |c| < sqrt(d) and in
// (-|c|, |c|] otherwise.  Iterating lands on a reduced form and then walks
// its cycle.
IndefForm rho_step(const IndefForm& f, Int d, Int s) {
    Int ac = std::llabs(f.c);
    Int step = 2 * ac;
    Int r0 = ((-f.b) % step + step) % step;
    Int r;
    if (ac * ac > d) {
        r = r0 > ac ? r0 - step : r0;
    } else {
        r = s - ((s - r0) % step + step) % step;
    }
    return {f.c, r, Int((Wide(r) * r - d) / (4 * f.c))};
}

IndefForm reduce_indefinite(IndefForm f, Int d, Int s) {
    for (int iter = 0; iter < 20000; ++iter) {
        if (is_reduced_indefinite(f.a, f.b, d)) return f;
        f = rho_step(f, d, s);
    }
    throw error("reduce_indefinite: no reduced form reached at d = " + std::to_string(d));
}

Int cycles_to_wide_count(const std::vector<IndefForm>& reduced, Int d, Int s) {
    std::map<IndefForm, Int> cycle_of;
    std::vector<IndefForm> rep;
    for (const auto& f : reduced) {
        if (cycle_of.count(f)) continue;
        Int id = Int(rep.size());
        rep.push_back(f);
        IndefForm g = f;
        do {
            cycle_of[g] = id;
            g = rho_step(g, d, s);
        } while (!(g == f));
    }
    // The cycle count is the narrow class number.  The wide class group is
    // the quotient by the class of the negated principal form, which is
    // trivial exactly when that form reduces back into the principal cycle
    // (a unit of norm -1 exists).
    Int b0 = d % 2;
    IndefForm principal{1, b0, (b0 * b0 - d) / 4};
    principal = reduce_indefinite(principal, d, s);
    IndefForm neg = reduce_indefinite({-principal.a, -principal.b, -principal.c}, d, s);
    Int kernel = cycle_of.at(neg) == cycle_of.at(principal) ? 1 : 2;
    return Int(rep.size()) / kernel;
}

Int h_positive(Int d) {
    Int s = isqrt(d);
    std::vector<IndefForm> reduced;
    for (Int b = (d & 1) ? 1 : 2; b <= s; b += 2) {
        Int n = (d - b * b) / 4;  // = -a c > 0
        for (Int a = 1; a * a <= n; ++a) {
            if (n % a) continue;
            for (Int abs_a : {a, n / a}) {
                if (abs_a != a && a * a == n) continue;
                if (!is_reduced_indefinite(abs_a, b, d)) continue;
                reduced.push_back({abs_a, b, -n / abs_a});
                reduced.push_back({-abs_a, b, n / abs_a});
            }
        }
    }
    return cycles_to_wide_count(reduced, d, s);
}

// Same reduced set assembled a-first, then the shared cycle machinery.
Int h_positive_recheck(Int d) {
    Int s = isqrt(d);
    std::vector<IndefForm> reduced;
    for (Int a = 1; 2 * a <= s + s; ++a) {  // 2a < sqrt(d) + b <= 2 sqrt(d)
        for (Int b = (d & 1) ? 1 : 2; b <= s; b += 2) {
            if ((b * b - d) % (4 * a)) continue;
            if (!is_reduced_indefinite(a, b, d)) continue;
            Int c = (b * b - d) / (4 * a);
            reduced.push_back({a, b, c});
            reduced.push_back({-a, b, -c});
        }
    }
    std::sort(reduced.begin(), reduced.end());
    return cycles_to_wide_count(reduced, d, s);
}

}  // namespace

Int class_number(Int d) {
    check_class_number_input(d);
    if (d == 1) return 1;
    return d < 0 ? h_negative(d) : h_positive(d);
}

Int class_number_recheck(Int d) {
    check_class_number_input(d);
    if (d == 1) return 1;
    return d < 0 ? h_negative_recheck(d) : h_positive_recheck(d);
}

std::vector<Int> fundamental_discriminants(Int lo, Int hi) {
    if (lo > hi) throw precondition_violated("fundamental_discriminants: empty range");
    std::vector<Int> out;
    for (Int d = lo; d <= hi; ++d)
        if (d != 0 && is_fundamental_discriminant(d)) out.push_back(d);
    return out;
}

CoeffSeries quad_series_lhs(QuadVariant variant, Int x) {
    if (x < 1) throw precondition_violated("quad_series_lhs: limit must be positive");
    CoeffSeries s(x);
    for (Int n = 1; n <= x; ++n) {
        Int pos = is_fundamental_discriminant(n) ? 1 : 0;
        Int neg = is_fundamental_discriminant(-n) ? 1 : 0;
        switch (variant) {
            case QuadVariant::positive: s.at(n) = Rat(pos); break;
            case QuadVariant::absolute: s.at(n) = Rat(pos + neg); break;
            case QuadVariant::signed_: s.at(n) = Rat(pos - neg); break;
        }
    }
    return s;
}

void write_quad_csv(std::ostream& out, const std::vector<QuadClassData>& rows) {
    out << "d,h\n";
    for (const auto& r : rows) out << r.d << "," << r.h << "\n";
}

}  // namespace szeta
