#include "szeta/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <thread>

#include "szeta/arith.hpp"
#include "szeta/errors.hpp"

namespace szeta {

namespace {

Wide floor_div_w(Wide n, Wide d) {
    Wide q = n / d, r = n % d;
    if (r != 0 && ((r < 0) != (d < 0))) --q;
    return q;
}

Wide ceil_div_w(Wide n, Wide d) { return -floor_div_w(-n, d); }

Int mod_p(Int x, Int p) { return ((x % p) + p) % p; }

// projective roots of f mod p with multiplicities; x = p stands for (1 : 0)
struct RootScan {
    bool zero = false;
    int simple = 0;
    std::vector<std::pair<Int, int>> repeated;  // (root, multiplicity >= 2)
};

RootScan scan_roots(const BinaryCubicForm& f, Int p) {
    RootScan out;
    Int a = mod_p(f.a, p), b = mod_p(f.b, p), c = mod_p(f.c, p), d = mod_p(f.d, p);
    if (a == 0 && b == 0 && c == 0 && d == 0) {
        out.zero = true;
        return out;
    }
    if (a == 0) {
        int m = b != 0 ? 1 : (c != 0 ? 2 : 3);
        if (m == 1)
            ++out.simple;
        else
            out.repeated.emplace_back(p, m);
    }
    for (Int x = 0; x < p; ++x) {
        // synthetic division of (a, b, c, d) by (u - x), all mod p
        Int q1 = Int((Wide(a) * x + b) % p);
        Int q0 = Int((Wide(q1) * x + c) % p);
        Int rem = Int((Wide(q0) * x + d) % p);
        if (rem != 0) continue;
        Int r1 = Int((Wide(a) * x + q1) % p);
        Int r0 = Int((Wide(r1) * x + q0) % p);
        if (r0 != 0) {
            ++out.simple;
            continue;
        }
        Int s0 = Int((Wide(a) * x + r1) % p);
        out.repeated.emplace_back(x, s0 != 0 ? 2 : 3);
    }
    return out;
}

// ---------------------------------------------------------------------------
// negative discriminants
// ---------------------------------------------------------------------------

// sign of d^2 - a^2 + ac - bd: positive exactly when the complex root of f
// lies outside the unit circle (|z|^2 > 1); needs a != 0, disc < 0
int sign_outside_unit_circle(const BinaryCubicForm& f) {
    Wide e = Wide(f.d) * f.d - Wide(f.a) * f.a + Wide(f.a) * f.c - Wide(f.b) * f.d;
    return (e > 0) - (e < 0);
}

// sign of f(u, v) in 128-bit arithmetic; valid while |coeffs|, |u|, |v| < 2^20
int sign_value_small(const BinaryCubicForm& f, Wide u, Wide v) {
    Wide w = ((Wide(f.a) * u + Wide(f.b) * v) * u + Wide(f.c) * v * v) * u +
             Wide(f.d) * v * v * v;
    return (w > 0) - (w < 0);
}

// z-reduced test for candidates with small coefficients: 2 Re z in (-1, 1)
// strictly, |z| > 1 strictly.  Zero signs mean a rational root or a domain
// boundary, both impossible for an irreducible representative, so they fail.
bool is_reduced_complex(const BinaryCubicForm& f) {
    if (sign_outside_unit_circle(f) <= 0) return false;
    if (sign_value_small(f, Wide(f.a) - f.b, f.a) <= 0) return false;   // S > -1
    if (sign_value_small(f, -(Wide(f.a) + f.b), f.a) >= 0) return false;  // S < 1
    return true;
}

void emit_negative_irreducible(Int A, Int B, std::vector<OrbitClass>& out) {
    double X = double(-A);
    Int amax = Int(std::floor(std::pow(16.0 * X / 27.0, 0.25))) + 1;
    for (Int a = 1; a <= amax; ++a) {
        double ad = double(a);
        double nmax = 0.25 + std::cbrt(X / 4.0) / std::pow(ad, 4.0 / 3.0);
        double tmax = std::sqrt(nmax) + std::pow(X / 3.0, 0.25) / ad;
        Int bbound = Int(std::floor(ad * (1.0 + tmax))) + 2;
        Int cbound = Int(std::floor(ad * (nmax + tmax))) + 2;
        for (Int b = -bbound; b <= bbound; ++b) {
            for (Int c = -cbound; c <= cbound; ++c) {
                // disc as a polynomial in d: qa d^2 + qb d + qc, qa < 0
                double qa = -27.0 * ad * ad;
                double qb = 18.0 * ad * b * c - 4.0 * double(b) * b * b;
                double qc = double(Wide(b) * b * c * c - 4 * Wide(a) * c * c * c);
                double discA = qb * qb - 4.0 * qa * (qc - double(A));
                if (discA < 0) continue;  // parabola peak below the window
                double sA = std::sqrt(discA);
                double louter = (-qb + sA) / (2.0 * qa), router = (-qb - sA) / (2.0 * qa);
                double discB = qb * qb - 4.0 * qa * (qc - double(B));
                auto scan = [&](Int lo, Int hi) {
                    for (Int d = lo; d <= hi; ++d) {
                        BinaryCubicForm f{a, b, c, d};
                        Int D = f.discriminant();
                        if (D < A || D > B) continue;
                        if (!is_reduced_complex(f)) continue;
                        if (rational_root(f)) continue;
                        out.push_back({f, D, 1, true, is_maximal(f)});
                    }
                };
                Int lo1 = Int(std::floor(louter)) - 2;
                Int hi2 = Int(std::ceil(router)) + 2;
                if (discB < 0) {
                    scan(lo1, hi2);  // the peak never reaches B: no inner gap
                } else {
                    double sB = std::sqrt(discB);
                    Int hi1 = Int(std::ceil((-qb + sB) / (2.0 * qa))) + 2;
                    Int lo2 = Int(std::floor((-qb - sB) / (2.0 * qa))) - 2;
                    if (lo2 <= hi1 + 1) {
                        scan(lo1, hi2);  // margins swallow the gap; avoid double scan
                    } else {
                        scan(lo1, hi1);
                        scan(lo2, hi2);
                    }
                }
            }
        }
    }
}

// Reducible classes all meet the slice a = 0; with b >= 1 and c normalized
// into (-b, b] by the slice stabilizer, each class appears for exactly one
// (b, c, d), so no dedup is needed.
void emit_negative_reducible(Int A, Int B, std::vector<OrbitClass>& out) {
    Int X = -A;
    Int bmax = isqrt(X) + 1;
    for (Int b = 1; b <= bmax; ++b) {
        Wide b2 = Wide(b) * b;
        Wide dq_lo = ceil_div_w(A, b2);              // disc of the quadratic factor
        Wide dq_hi = std::min<Wide>(floor_div_w(B, b2), -3);
        if (dq_lo > dq_hi) continue;
        for (Int c = -b + 1; c <= b; ++c) {
            Wide c2 = Wide(c) * c;
            Wide dlo = ceil_div_w(c2 - dq_hi, 4 * Wide(b));
            Wide dhi = floor_div_w(c2 - dq_lo, 4 * Wide(b));
            for (Wide dw = dlo; dw <= dhi; ++dw) {
                Int d = Int(dw);
                Wide D = b2 * (c2 - 4 * Wide(b) * d);
                if (D < A || D > B) continue;
                auto cf = canonical_form({0, b, c, d});
                out.push_back({cf.rep, Int(D), cf.stab_order, false, is_maximal(cf.rep)});
            }
        }
    }
}

// ---------------------------------------------------------------------------
// positive discriminants
// ---------------------------------------------------------------------------

void try_emit_positive(const BinaryCubicForm& f, Int A, Int B,
                       std::vector<OrbitClass>& out) {
    QuadraticForm h = hessian(f);
    if (h.a <= 0) return;
    // unique normal form of the positive definite Hessian
    if (!(-h.a < h.b && h.b <= h.a && h.a <= h.c)) return;
    if (h.a == h.c && h.b < 0) return;
    Int D = f.discriminant();
    if (D < A || D > B) return;
    auto cf = canonical_form(f);
    if (cf.rep != f) return;
    out.push_back({f, D, cf.stab_order, is_irreducible(f), is_maximal(f)});
}

void emit_positive(Int A, Int B, std::vector<OrbitClass>& out) {
    Int X = B;
    // leading coefficient zero: hessian (b^2, bc, c^2 - 3bd); here
    // disc = b^2 c^2 - 4 b^3 d, so the target range pins d directly
    Int bmax = isqrt(isqrt(X)) + 1;
    for (Int b = 1; b <= bmax; ++b) {
        Wide P = Wide(b) * b;
        Wide rmax = (P * P + 3 * Wide(X)) / (4 * P);
        for (Int c = -b + 1; c <= b; ++c) {
            Wide c2 = Wide(c) * c;
            Wide b3 = 4 * Wide(b) * b * b;
            Wide dlo = std::max(floor_div_w(c2 - rmax, 3 * Wide(b)) - 1,
                                ceil_div_w(P * c2 - B, b3) - 1);
            Wide dhi = std::min(ceil_div_w(c2 - P, 3 * Wide(b)) + 1,
                                floor_div_w(P * c2 - A, b3) + 1);
            for (Wide dw = dlo; dw <= dhi; ++dw)
                try_emit_positive({0, b, c, Int(dw)}, A, B, out);
        }
    }
    // positive leading coefficient; ranges follow from the covariant syzygy
    // 4 P^3 - (2bP - 3aQ)^2 = 27 a^2 D with P <= sqrt(D)
    Int amax = Int(std::floor(2.0 / std::sqrt(27.0) * std::pow(double(X), 0.25))) + 1;
    Int pmax = isqrt(X);
    for (Int a = 1; a <= amax; ++a) {
        Int pmin = (27 * a * a + 3) / 4;
        for (Int P = pmin; P <= pmax; ++P) {
            Int bb = (3 * a + isqrt(4 * P) + 2) / 2 + 1;
            Int step = 9 * a;
            for (Int b = -bb; b <= bb; ++b) {
                Wide num = Wide(b) * b - P;
                if (num % (3 * a) != 0) continue;
                Int c = Int(num / (3 * a));
                Wide bc = Wide(b) * c;
                // Q = bc - 9ad must land in (-P, P]
                Wide dmin = ceil_div_w(bc - P, step);
                Wide dmax = ceil_div_w(bc + P, step) - 1;
                // disc as a polynomial in d: qa d^2 + qb d + qc with qa < 0;
                // restrict d to the band where disc can reach [A, B]
                double qa = -27.0 * double(a) * a;
                double qb = 18.0 * double(a) * b * c - 4.0 * double(b) * b * b;
                double qc = double(Wide(b) * b * c * c - 4 * Wide(a) * c * c * c);
                double discA = qb * qb - 4.0 * qa * (qc - double(A));
                if (discA < 0) continue;
                double sA = std::sqrt(discA);
                double louter = (-qb + sA) / (2.0 * qa), router = (-qb - sA) / (2.0 * qa);
                double discB = qb * qb - 4.0 * qa * (qc - double(B));
                auto scan = [&](Wide lo, Wide hi) {
                    lo = std::max(lo, dmin);
                    hi = std::min(hi, dmax);
                    for (Wide dw = lo; dw <= hi; ++dw) {
                        Int d = Int(dw);
                        Wide R = Wide(c) * c - 3 * Wide(b) * d;
                        if (R < P) continue;
                        try_emit_positive({a, b, c, d}, A, B, out);
                    }
                };
                Wide lo1 = Wide(std::floor(louter)) - 2;
                Wide hi2 = Wide(std::ceil(router)) + 2;
                if (discB < 0) {
                    scan(lo1, hi2);
                } else {
                    double sB = std::sqrt(discB);
                    Wide hi1 = Wide(std::ceil((-qb + sB) / (2.0 * qa))) + 2;
                    Wide lo2 = Wide(std::floor((-qb - sB) / (2.0 * qa))) - 2;
                    if (lo2 <= hi1 + 1) {
                        scan(lo1, hi2);
                    } else {
                        scan(lo1, hi1);
                        scan(lo2, hi2);
                    }
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// range driver
// ---------------------------------------------------------------------------

std::vector<OrbitClass> census_chunk(Int lo, Int hi) {
    std::vector<OrbitClass> rows;
    if (lo <= -1) {
        Int b = std::min<Int>(hi, -1);
        emit_negative_reducible(lo, b, rows);
        emit_negative_irreducible(lo, b, rows);
    }
    if (hi >= 1) emit_positive(std::max<Int>(lo, 1), hi, rows);
    std::sort(rows.begin(), rows.end(), [](const OrbitClass& x, const OrbitClass& y) {
        return x.disc != y.disc ? x.disc < y.disc : x.rep < y.rep;
    });
    return rows;
}

}  // namespace

bool is_irreducible(const BinaryCubicForm& f) { return !rational_root(f).has_value(); }

LocalType local_type(const BinaryCubicForm& f, Int p) {
    RootScan s = scan_roots(f, p);
    if (s.zero) return LocalType::zero;
    for (auto [x, m] : s.repeated)
        if (m == 3) return LocalType::ramified13;
    if (!s.repeated.empty()) return LocalType::ramified121;
    if (s.simple == 3) return LocalType::split111;
    if (s.simple == 1) return LocalType::split12;
    return LocalType::split3;
}

bool is_maximal_at(const BinaryCubicForm& f, Int p) {
    RootScan s = scan_roots(f, p);
    if (s.zero) return false;
    Wide p2 = Wide(p) * p;
    for (auto [x, m] : s.repeated) {
        (void)m;
        Wide val;
        if (x == p) {
            val = Wide(f.a) % p2;
        } else {
            val = ((((Wide(f.a) * x + f.b) % p2) * x + f.c) % p2) * x + f.d;
            val %= p2;
        }
        if (val == 0) return false;
    }
    return true;
}

bool is_maximal(const BinaryCubicForm& f) {
    Int D = f.discriminant();
    if (D == 0) throw degenerate_form("degenerate form " + f.str());
    for (auto [p, e] : factorize(D).factors)
        if (e >= 2 && !is_maximal_at(f, p)) return false;
    return true;
}

void enumerate_classes_stream(Int disc_lo, Int disc_hi,
                              const std::function<void(const OrbitClass&)>& sink,
                              const EnumerateOptions& opts) {
    if (disc_lo > disc_hi)
        throw precondition_violated("empty discriminant range");
    if (std::max(std::abs(disc_lo), std::abs(disc_hi)) > opts.disc_limit)
        throw bound_exceeded("discriminant range exceeds limit " +
                             std::to_string(opts.disc_limit));
    constexpr Int kChunkWidth = 65536;  // fixed so output ignores thread count
    std::vector<std::pair<Int, Int>> chunks;
    for (Int s = disc_lo; s <= disc_hi;) {
        Int e = std::min(disc_hi, s + kChunkWidth - 1);
        chunks.emplace_back(s, e);
        s = e + 1;
    }
    std::vector<std::vector<OrbitClass>> results(chunks.size());
    int workers = std::max(1, opts.threads);
    workers = int(std::min<size_t>(workers, chunks.size()));
    if (workers == 1) {
        for (size_t i = 0; i < chunks.size(); ++i)
            results[i] = census_chunk(chunks[i].first, chunks[i].second);
    } else {
        std::atomic<size_t> next{0};
        std::exception_ptr first_error;
        std::mutex error_mu;
        auto work = [&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= chunks.size()) return;
                try {
                    results[i] = census_chunk(chunks[i].first, chunks[i].second);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }
    for (const auto& rows : results)
        for (const OrbitClass& row : rows) sink(row);
}

std::vector<OrbitClass> enumerate_classes(Int disc_lo, Int disc_hi,
                                          const EnumerateOptions& opts) {
    std::vector<OrbitClass> out;
    enumerate_classes_stream(
        disc_lo, disc_hi, [&](const OrbitClass& row) { out.push_back(row); }, opts);
    return out;
}

std::vector<OrbitClass> brute_force_classes(Int disc_target, Int coeff_bound) {
    if (disc_target == 0) throw degenerate_form("target discriminant is zero");
    if (coeff_bound <= 0) throw precondition_violated("coefficient bound must be positive");
    auto disc_of = [](const BinaryCubicForm& f) {
        Wide b2c2 = Wide(f.b) * f.b * f.c * f.c;
        Wide ac3 = Wide(f.a) * f.c * f.c * f.c;
        Wide b3d = Wide(f.b) * f.b * f.b * f.d;
        Wide a2d2 = Wide(f.a) * f.a * f.d * f.d;
        Wide abcd = Wide(f.a) * f.b * f.c * f.d;
        return b2c2 - 4 * ac3 - 4 * b3d - 27 * a2d2 + 18 * abcd;
    };
    std::vector<BinaryCubicForm> box;
    for (Int a = -coeff_bound; a <= coeff_bound; ++a)
        for (Int b = -coeff_bound; b <= coeff_bound; ++b)
            for (Int c = -coeff_bound; c <= coeff_bound; ++c)
                for (Int d = -coeff_bound; d <= coeff_bound; ++d) {
                    BinaryCubicForm f{a, b, c, d};
                    if (disc_of(f) == Wide(disc_target)) box.push_back(f);
                }
    std::set<BinaryCubicForm> box_set(box.begin(), box.end());

    // union into components of the move graph inside a slack box
    const Int slack = 40 * coeff_bound;
    const Mat2 moves[] = {{1, 0, 1, 1}, {1, 0, -1, 1}, {0, -1, 1, 0}, {-1, 0, 0, -1}};
    auto inside = [&](const BinaryCubicForm& f) {
        return std::max({std::abs(f.a), std::abs(f.b), std::abs(f.c), std::abs(f.d)}) <=
               slack;
    };
    std::map<BinaryCubicForm, int> component;
    int nclasses = 0;
    std::vector<std::vector<BinaryCubicForm>> members;
    for (const BinaryCubicForm& seed : box) {
        if (component.count(seed)) continue;
        int id = nclasses++;
        members.emplace_back();
        std::set<BinaryCubicForm> visited{seed};
        std::deque<BinaryCubicForm> frontier{seed};
        while (!frontier.empty()) {
            BinaryCubicForm f = frontier.front();
            frontier.pop_front();
            if (box_set.count(f)) {
                component[f] = id;
                members[id].push_back(f);
            }
            for (const Mat2& m : moves) {
                BinaryCubicForm g = apply(m, f);
                if (!inside(g) || visited.count(g)) continue;
                if (visited.size() >= 2000000)
                    throw bound_exceeded("orbit closure too large in brute-force scan");
                visited.insert(g);
                frontier.push_back(g);
            }
        }
    }

    // independent stabilizer count: solve for SL2 matrices with entries <= 50
    auto stab_scan = [](const BinaryCubicForm& f) {
        const Int limit = 50;
        int count = 0;
        for (Int p = -limit; p <= limit; ++p)
            for (Int q = -limit; q <= limit; ++q)
                for (Int r = -limit; r <= limit; ++r) {
                    Int s;
                    if (p != 0) {
                        Wide num = 1 + Wide(q) * r;
                        if (num % p != 0) continue;
                        Wide sw = num / p;
                        if (sw < -limit || sw > limit) continue;
                        s = Int(sw);
                    } else {
                        if (Wide(q) * r != -1) continue;
                        // s unconstrained by the determinant; scan it
                        for (s = -limit; s <= limit; ++s)
                            if (apply(Mat2{p, q, r, s}, f) == f) ++count;
                        continue;
                    }
                    if (apply(Mat2{p, q, r, s}, f) == f) ++count;
                }
        if (count != 1 && count != 3)
            throw error("stabilizer scan found order " + std::to_string(count) +
                        " for " + f.str());
        return count;
    };

    std::vector<OrbitClass> out;
    for (int id = 0; id < nclasses; ++id) {
        const BinaryCubicForm& least = *std::min_element(members[id].begin(),
                                                         members[id].end());
        BinaryCubicForm rep = canonical_form(least).rep;
        out.push_back({rep, disc_target, stab_scan(least), is_irreducible(rep),
                       is_maximal(rep)});
    }
    std::sort(out.begin(), out.end(), [](const OrbitClass& x, const OrbitClass& y) {
        return x.rep < y.rep;
    });
    return out;
}

void write_classes_csv_header(std::ostream& out) {
    out << "disc,a,b,c,d,stab_order,irreducible,maximal\n";
}

void write_classes_csv_row(std::ostream& out, const OrbitClass& row) {
    out << row.disc << ',' << row.rep.a << ',' << row.rep.b << ',' << row.rep.c << ','
        << row.rep.d << ',' << row.stab_order << ',' << int(row.irreducible) << ','
        << int(row.maximal) << '\n';
}

void write_classes_csv(std::ostream& out, const std::vector<OrbitClass>& rows) {
    write_classes_csv_header(out);
    for (const OrbitClass& row : rows) write_classes_csv_row(out, row);
}

}  // namespace szeta
