#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "szeta/cubic_form.hpp"
#include "szeta/reduction.hpp"

namespace szeta {

// One SL2(Z)-orbit of integral binary cubic forms with nonzero discriminant,
// identified by its canonical representative.
struct OrbitClass {
    BinaryCubicForm rep;
    Int disc = 0;
    int stab_order = 1;
    bool irreducible = false;
    bool maximal = false;

    friend bool operator==(const OrbitClass&, const OrbitClass&) = default;
};

struct EnumerateOptions {
    Int disc_limit = 4000000;  // refuse ranges reaching beyond this |disc|
    int threads = 1;           // worker count; results are byte-identical either way
};

// True iff f(x, 1) has no rational linear factor (the a = 0 case counts the
// factor v).  Requires nonzero discriminant.
bool is_irreducible(const BinaryCubicForm& f);

// Reduction type of f modulo p as a point pattern on the projective line:
// (111) three simple roots, (12) one simple root with irreducible quadratic
// cofactor, (3) no root, (1^2 1) one double and one simple, (1^3) one triple,
// or identically zero mod p.  Cost is a scan of P^1(F_p).
enum class LocalType { split111, split12, split3, ramified121, ramified13, zero };
LocalType local_type(const BinaryCubicForm& f, Int p);

// True iff the cubic ring attached to f is maximal at p: fails exactly when
// f vanishes mod p or some repeated root (r : s) of f mod p lifts with
// p^2 | f(r, s).  The lift test is independent of the chosen lift because
// both partial derivatives vanish at a repeated root.
bool is_maximal_at(const BinaryCubicForm& f, Int p);

// Maximality at every prime; only primes with p^2 | disc can fail, so the
// discriminant is factored and those finitely many primes are checked.
bool is_maximal(const BinaryCubicForm& f);

// Every class with disc in [disc_lo, disc_hi] \ {0}, exactly once, streamed
// in (disc, rep) lexicographic order.  Ranges reaching beyond
// opts.disc_limit in absolute value throw bound_exceeded.  Partitioned into
// fixed-width disc chunks internally; opts.threads chunks run concurrently
// and the merge order is independent of the thread count.
void enumerate_classes_stream(Int disc_lo, Int disc_hi,
                              const std::function<void(const OrbitClass&)>& sink,
                              const EnumerateOptions& opts = {});

std::vector<OrbitClass> enumerate_classes(Int disc_lo, Int disc_hi,
                                          const EnumerateOptions& opts = {});

// Independent oracle: exhaustive scan of the coefficient box
// max(|a|,|b|,|c|,|d|) <= coeff_bound at the given discriminant, classes
// joined by union-find over generator moves inside a slack box, stabilizer
// orders recounted by direct matrix search with entries bounded by 50.
// Meaningful only when every class at this disc meets the box; used in tests.
std::vector<OrbitClass> brute_force_classes(Int disc_target, Int coeff_bound);

// CSV with header disc,a,b,c,d,stab_order,irreducible,maximal; booleans as
// 0/1, everything signed decimal.
void write_classes_csv(std::ostream& out, const std::vector<OrbitClass>& rows);
void write_classes_csv_header(std::ostream& out);
void write_classes_csv_row(std::ostream& out, const OrbitClass& row);

}  // namespace szeta
