#pragma once

#include <optional>
#include <utility>

#include "szeta/cubic_form.hpp"

namespace szeta {

// Projective rational root (p : q) of f, primitive with q >= 0, when one
// exists.  a = 0 yields (1 : 0), d = 0 yields (0 : 1); otherwise candidate
// roots are scanned via the rational root theorem.
std::optional<std::pair<Int, Int>> rational_root(const BinaryCubicForm& f);

// Result of canonicalization: rep == apply(transform, input), and two forms
// are SL2(Z)-equivalent under the twisted action iff their reps are equal.
struct CanonicalForm {
    BinaryCubicForm rep;
    int stab_order = 1;  // order of the SL2(Z) stabilizer, always 1 or 3
    Mat2 transform;
};

// Canonical orbit representative.  Deterministic and total on forms with
// nonzero discriminant; throws degenerate_form otherwise.
//
// disc < 0: the complex root z of f(x, 1) is moved into the classical
// fundamental domain |Re z| <= 1/2, |z| >= 1 (all membership tests are exact
// integer sign computations; no floating point).  disc > 0: the positive
// definite Hessian is Gauss-reduced to its unique normal form.  In both cases
// the representative is the lexicographically least (a, b, c, d) among the
// finitely many domain forms of the orbit whose leading nonzero coefficient
// is positive.
CanonicalForm canonical_form(const BinaryCubicForm& f);

}  // namespace szeta
