#include "szeta/reduction.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <vector>

#include "szeta/arith.hpp"
#include "szeta/errors.hpp"

namespace szeta {

namespace {

const Mat2 kU{0, -1, 1, 0};  // z -> -1/z on the complex root
const Mat2 kNegI{-1, 0, 0, -1};

Mat2 translation(Int k) { return {1, 0, k, 1}; }  // z -> z - k

constexpr Int kSmall = Int(1) << 20;
constexpr int kDescentCap = 4096;
constexpr int kClosureCap = 64;

bool fits_small(Wide x) { return x > -Wide(kSmall) && x < Wide(kSmall); }

mpz_class to_mpz(Wide w) {
    bool neg = w < 0;
    unsigned __int128 m = neg ? -(unsigned __int128)w : (unsigned __int128)w;
    mpz_class hi(static_cast<unsigned long>(m >> 64));
    mpz_class out = (hi << 64) + static_cast<unsigned long>(m & ~0ULL);
    return neg ? mpz_class(-out) : out;
}

// exact sign of f(u, v)
int sign_value(const BinaryCubicForm& f, Wide u, Wide v) {
    if (fits_small(f.a) && fits_small(f.b) && fits_small(f.c) && fits_small(f.d) &&
        fits_small(u) && fits_small(v)) {
        Wide w = ((Wide(f.a) * u + Wide(f.b) * v) * u + Wide(f.c) * v * v) * u +
                 Wide(f.d) * v * v * v;
        return (w > 0) - (w < 0);
    }
    mpz_class U = to_mpz(u), V = to_mpz(v);
    mpz_class a(static_cast<long>(f.a)), b(static_cast<long>(f.b));
    mpz_class c(static_cast<long>(f.c)), d(static_cast<long>(f.d));
    mpz_class w = ((a * U + b * V) * U + c * V * V) * U + d * V * V * V;
    return sgn(w);
}

// sign of N - 1 where N = |z|^2 for the complex root z of f; equals the sign
// of d^2 - a^2 + ac - bd, which factors as a^2 (N - 1)(N th^2 - S th + 1)
// with the last factor positive (its discriminant is that of the complex
// pair).  Requires disc f < 0 and a != 0.
int sign_norm_minus_one(const BinaryCubicForm& f) {
    if (fits_small(f.a) && fits_small(f.b) && fits_small(f.c) && fits_small(f.d)) {
        Wide e = Wide(f.d) * f.d - Wide(f.a) * f.a + Wide(f.a) * f.c - Wide(f.b) * f.d;
        return (e > 0) - (e < 0);
    }
    mpz_class a(static_cast<long>(f.a)), b(static_cast<long>(f.b));
    mpz_class c(static_cast<long>(f.c)), d(static_cast<long>(f.d));
    return sgn(mpz_class(d * d - a * a + a * c - b * d));
}

// S(f) > t for the root sum S = 2 Re z: equivalent to th < -(b + a t)/a for
// the real root th, i.e. f(-(b + a t), a) > 0, whatever the sign of a.
// Requires irreducible f.
bool root_sum_exceeds(const BinaryCubicForm& f, Wide t) {
    int s = sign_value(f, -(Wide(f.b) + Wide(f.a) * t), f.a);
    if (s == 0) throw error("root sum comparison hit a rational root on " + f.str());
    return s > 0;
}

// k with S(f) in the open interval (2k - 1, 2k + 1); S is never an odd
// integer for irreducible f (that would force a rational root).
Int find_translation(const BinaryCubicForm& f) {
    Int aa = std::abs(f.a);
    Wide mx = std::max({std::abs(f.b), std::abs(f.c), std::abs(f.d), Int(1)});
    // Cauchy: every root of f(x, 1) has |x| < 1 + mx / |a|, so |S| < T.
    Wide T = 5 + 2 * mx / aa;
    if (T % 2 == 0) ++T;
    if (!root_sum_exceeds(f, -T) || root_sum_exceeds(f, T))
        throw error("translation bracket failed on " + f.str());
    Wide lo = -T, hi = T;  // S > lo holds, S > hi fails; both odd
    while (hi - lo > 2) {
        Wide mid = lo + (hi - lo) / 2;
        if (mid % 2 == 0) ++mid;
        (root_sum_exceeds(f, mid) ? lo : hi) = mid;
    }
    Wide k = (lo + 1) / 2;
    if (k > Wide(INT64_MAX) || k < Wide(INT64_MIN))
        throw overflow_guard("translation amount does not fit in 64 bits");
    return Int(k);
}

bool sign_normalized(const BinaryCubicForm& h) {
    if (h.a != 0) return h.a > 0;
    if (h.b != 0) return h.b > 0;
    if (h.c != 0) return h.c > 0;
    return h.d > 0;
}

Int floor_div(Wide num, Wide den) {
    Wide q = num / den, r = num % den;
    if (r != 0 && ((r < 0) != (den < 0))) --q;
    if (q > Wide(INT64_MAX) || q < Wide(INT64_MIN))
        throw overflow_guard("translation amount does not fit in 64 bits");
    return Int(q);
}

CanonicalForm reduce_negative_irreducible(const BinaryCubicForm& f) {
    BinaryCubicForm cur = f;
    Mat2 g;
    for (int iter = 0; iter < kDescentCap; ++iter) {
        Int k = find_translation(cur);
        if (k != 0) {
            Mat2 t = translation(k);  // sends S to S - 2k
            cur = apply(t, cur);
            g = t * g;
        }
        int e = sign_norm_minus_one(cur);
        if (e == 0) throw error("boundary hit for irreducible form " + f.str());
        if (e > 0) {
            if (cur.a < 0) {
                cur = cur.negated();
                g = kNegI * g;
            }
            return {cur, 1, g};
        }
        cur = apply(kU, cur);
        g = kU * g;
    }
    throw error("reduction did not terminate for " + f.str());
}

std::vector<Int> divisors_of(Int n) {
    auto fac = factorize(n);
    std::vector<Int> divs{1};
    for (auto [p, e] : fac.factors) {
        size_t base = divs.size();
        Int pe = 1;
        for (int i = 0; i < e; ++i) {
            pe *= p;
            for (size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pe);
        }
    }
    return divs;
}

QuadraticForm abs_normalized(const QuadraticForm& q) {
    return q.a < 0 ? q.negated() : q;
}

bool in_closed_domain(const QuadraticForm& q) {
    QuadraticForm n = abs_normalized(q);
    return std::abs(n.b) <= n.a && n.a <= n.c;
}

// Reducible, disc < 0: f = (linear) * (definite quadratic); the complex root
// of the quadratic factor is the reduction point, so all domain tests are
// rational.  The orbit can meet the domain boundary (and the elliptic points
// i and rho), hence the closure search.
CanonicalForm reduce_negative_reducible(const BinaryCubicForm& f,
                                        const QuadraticForm& factor) {
    BinaryCubicForm cur = f;
    QuadraticForm q = abs_normalized(factor);
    Mat2 g;
    for (int iter = 0;; ++iter) {
        if (iter >= kDescentCap) throw error("quadratic descent stuck on " + f.str());
        Int k = floor_div(Wide(q.a) - q.b, 2 * Wide(q.a));
        if (k != 0) {
            Mat2 t = translation(k);  // sends b to b + 2ak, landing in (-a, a]
            cur = apply(t, cur);
            q = apply(t, q);
            g = t * g;
        }
        if (q.c < q.a) {
            cur = apply(kU, cur);
            q = abs_normalized(apply(kU, q));
            g = kU * g;
            continue;
        }
        break;
    }

    struct Node {
        BinaryCubicForm form;
        QuadraticForm quad;
        Mat2 word;
    };
    std::vector<Node> seen{{cur, q, g}};
    std::deque<size_t> frontier{0};
    const Mat2 moves[] = {translation(1), translation(-1), kU, kNegI};
    while (!frontier.empty()) {
        Node n = seen[frontier.front()];
        frontier.pop_front();
        for (const Mat2& m : moves) {
            BinaryCubicForm nf = apply(m, n.form);
            QuadraticForm nq = abs_normalized(apply(m, n.quad));
            if (!in_closed_domain(nq)) continue;
            bool known = std::any_of(seen.begin(), seen.end(),
                                     [&](const Node& s) { return s.form == nf; });
            if (known) continue;
            if (seen.size() >= kClosureCap)
                throw error("domain closure too large for " + f.str());
            seen.push_back({nf, nq, m * n.word});
            frontier.push_back(seen.size() - 1);
        }
    }
    const Node* best = nullptr;
    for (const Node& n : seen) {
        if (!sign_normalized(n.form)) continue;
        if (!best || n.form < best->form) best = &n;
    }
    if (!best) throw error("no sign-normalized domain form for " + f.str());
    return {best->form, 1, best->word};
}

// disc > 0: Gauss-reduce the positive definite Hessian to its unique normal
// form -P < Q <= P <= R (Q >= 0 when P == R), then minimize over the finite
// automorph group of the reduced Hessian.
CanonicalForm reduce_positive(const BinaryCubicForm& f) {
    QuadraticForm h = hessian(f);
    if (h.a <= 0) throw error("hessian not positive definite for " + f.str());
    BinaryCubicForm cur = f;
    Mat2 g;
    for (int iter = 0;; ++iter) {
        if (iter >= kDescentCap) throw error("hessian reduction stuck on " + f.str());
        Int k = floor_div(Wide(h.a) - h.b, 2 * Wide(h.a));
        if (k != 0) {
            Mat2 t = translation(k);  // sends b to b + 2ak, landing in (-a, a]
            cur = apply(t, cur);
            h = apply(t, h);
            g = t * g;
        }
        if (h.c < h.a || (h.c == h.a && h.b < 0)) {
            cur = apply(kU, cur);
            h = apply(kU, h);
            g = kU * g;
            continue;
        }
        break;
    }

    std::vector<Mat2> auts = {Mat2{}, kNegI};
    if (h.a == h.b && h.b == h.c) {
        Mat2 rho{0, -1, 1, -1}, rho2{-1, 1, -1, 0};
        for (const Mat2& r : {rho, rho2}) {
            auts.push_back(r);
            auts.push_back(kNegI * r);
        }
    } else if (h.b == 0 && h.a == h.c) {
        auts.push_back(kU);
        auts.push_back(kNegI * kU);
    }

    int stab = 0;
    const Mat2* best_aut = nullptr;
    BinaryCubicForm best;
    for (const Mat2& aut : auts) {
        BinaryCubicForm cand = apply(aut, cur);
        if (cand == cur) ++stab;
        if (!sign_normalized(cand)) continue;
        if (!best_aut || cand < best) {
            best = cand;
            best_aut = &aut;
        }
    }
    if (stab != 1 && stab != 3)
        throw error("stabilizer order " + std::to_string(stab) + " for " + f.str());
    return {best, stab, *best_aut * g};
}

}  // namespace

std::optional<std::pair<Int, Int>> rational_root(const BinaryCubicForm& f) {
    if (f.a == 0) return std::make_pair(Int(1), Int(0));
    if (f.d == 0) return std::make_pair(Int(0), Int(1));
    for (Int q : divisors_of(f.a))
        for (Int p : divisors_of(f.d)) {
            if (std::gcd(p, q) != 1) continue;
            if (sign_value(f, p, q) == 0) return std::make_pair(p, q);
            if (sign_value(f, -p, q) == 0) return std::make_pair(-p, q);
        }
    return std::nullopt;
}

CanonicalForm canonical_form(const BinaryCubicForm& f) {
    Int disc = f.discriminant();
    if (disc == 0) throw degenerate_form("degenerate form " + f.str());
    if (disc > 0) return reduce_positive(f);

    if (f.a == 0) {
        // v divides f: the quadratic cofactor carries the complex root
        return reduce_negative_reducible(f, {f.b, f.c, f.d});
    }
    if (auto root = rational_root(f)) {
        auto [p, q] = *root;
        // f = (q u - p v)(A u^2 + B uv + C v^2), exact by Gauss's lemma
        Int A = f.a / q;
        Int B = (f.b + p * A) / q;
        Int C = (f.c + p * B) / q;
        if (q * A != f.a || q * B != f.b + p * A || q * C != f.c + p * B ||
            -p * C != f.d)
            throw error("factorization failed for " + f.str());
        return reduce_negative_reducible(f, {A, B, C});
    }
    return reduce_negative_irreducible(f);
}

}  // namespace szeta
