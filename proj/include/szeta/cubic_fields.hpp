#pragma once

#include <iosfwd>
#include <map>
#include <vector>

#include "szeta/enumerate.hpp"

namespace szeta {

// A cubic field, represented by a maximal irreducible form.  Isomorphism
// classes of cubic fields correspond to GL2(Z)-orbits of such forms; each
// splits into a mirror pair of SL2(Z)-orbits, and `form` is the
// lexicographically smaller of the two canonical representatives.
struct CubicField {
    BinaryCubicForm form;
    Int disc = 0;
    bool cyclic = false;  // Galois iff disc is a perfect square

    friend bool operator==(const CubicField&, const CubicField&) = default;
};

// Factorization shape of a rational prime in a cubic field: three, two, or
// one unramified primes above p, partial ramification, total ramification.
enum class SplittingSymbol { s111, s12, s3, s121, s13 };
const char* splitting_name(SplittingSymbol s);  // "111", "12", "3", "1^2 1", "1^3"

// All cubic fields of discriminant n (possibly empty), sorted by form.
// Derived from enumerate_classes(n, n) filtered to irreducible maximal
// classes, which are paired off by the mirror (det -1) symmetry.
std::vector<CubicField> fields_with_disc(Int n, const EnumerateOptions& opts = {});

// Cubic fields with disc in [lo, hi], sorted by (disc, form).
std::vector<CubicField> fields_in_range(Int lo, Int hi, const EnumerateOptions& opts = {});

// Memoized single-discriminant lookups; grows on use, not thread-safe.
struct FieldCache {
    EnumerateOptions opts;
    std::map<Int, std::vector<CubicField>> by_disc;

    const std::vector<CubicField>& get(Int disc);
};

// Shape of p in K's maximal order.  Unramified p (p not dividing disc) read
// the shape straight off the point pattern of the form mod p; p || disc is
// partial ramification; the remaining ramified cases follow the repeated
// root's multiplicity mod p.
SplittingSymbol splitting_type(const CubicField& k, Int p);

// The unique cubic field of discriminant -27 d, for d > 0 fundamental,
// d = 3 mod 9, with -d/3 fundamental and 3 not dividing h(-d/3).  Violated
// preconditions throw precondition_violated; an empty lookup (impossible
// under the preconditions) throws not_found.
CubicField find_E(Int d, const EnumerateOptions& opts = {});

// 2 when p splits completely in e, otherwise -1.  Requires
// kronecker(-3 d, p) = 1 and p not dividing 3 d.
int omega_d(Int d, Int p, const CubicField& e);

// CSV "disc,c3,c2,c1,c0": one defining cubic c3 x^3 + c2 x^2 + c1 x + c0 per
// row; '#' comment lines and an optional literal header row are skipped.
// Each row is converted to a form, checked (declared disc must match the
// computed one, the form must be irreducible and maximal), canonicalized,
// and deduplicated.  Returns fields sorted by (disc, form).
std::vector<CubicField> import_field_table(std::istream& in);
std::vector<CubicField> import_field_table(const std::string& path);

// CSV "disc,a,b,c,d,galois_type" with galois_type spelled cyclic/noncyclic.
void export_field_table(std::ostream& out, const std::vector<CubicField>& fields);

}  // namespace szeta
