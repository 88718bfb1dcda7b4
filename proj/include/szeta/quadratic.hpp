#pragma once

#include <iosfwd>
#include <vector>

#include "szeta/series.hpp"

namespace szeta {

// One quadratic field datum for CSV emission.
struct QuadClassData {
    Int d = 0;  // fundamental discriminant
    Int h = 0;  // class number
};

// Refuse class-number work beyond this |d|; the loops below are fine well
// past it, but the cost is sqrt(|d|)-ish per call and callers should know.
constexpr Int CLASS_NUMBER_LIMIT = 100000000LL;

// Class number h(d) of the quadratic field of fundamental discriminant d.
// d < 0: count of reduced positive definite forms (a, b, c) with
// b^2 - 4ac = d, -a < b <= a <= c, b >= 0 when a = c or a = |b|.
// d > 0: wide class number; reduced indefinite forms are collected, split
// into rho-cycles (the narrow classes), and cycles are merged when negating
// a form maps one cycle onto another.  d = 1 returns 1.
Int class_number(Int d);

// Same value by a different enumeration order (outer loop over the leading
// coefficient instead of the middle one); used as a self-check.
Int class_number_recheck(Int d);

// All fundamental discriminants in [lo, hi], ascending, 1 included.
std::vector<Int> fundamental_discriminants(Int lo, Int hi);

// Which count of fundamental discriminants a series coefficient carries:
// only positive d, both signs added, or both signs subtracted.
enum class QuadVariant { positive, absolute, signed_ };

// Coefficient at n: the number of fundamental discriminants d with |d| = n
// under the variant's sign rule (signed_: count(+n) - count(-n)).
CoeffSeries quad_series_lhs(QuadVariant variant, Int x);

// CSV rows "d,h" with header.
void write_quad_csv(std::ostream& out, const std::vector<QuadClassData>& rows);

}  // namespace szeta
