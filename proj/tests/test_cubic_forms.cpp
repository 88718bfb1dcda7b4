#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "szeta/cubic_form.hpp"
#include "szeta/errors.hpp"
#include "szeta/reduction.hpp"

using namespace szeta;

namespace {

// random GL2(Z) element as a word in the standard generators, with an
// optional determinant -1 twist at the end
Mat2 random_unimodular(std::mt19937_64& rng, bool allow_reflection = true) {
    const Mat2 gens[] = {{1, 0, 1, 1}, {1, 0, -1, 1}, {0, -1, 1, 0}};
    std::uniform_int_distribution<int> len(0, 10), pick(0, 2), flip(0, 1);
    Mat2 g;
    int L = len(rng);
    for (int i = 0; i < L; ++i) g = gens[pick(rng)] * g;
    if (allow_reflection && flip(rng)) g = Mat2{1, 0, 0, -1} * g;
    return g;
}

BinaryCubicForm random_form(std::mt19937_64& rng, Int bound) {
    std::uniform_int_distribution<Int> coeff(-bound, bound);
    return {coeff(rng), coeff(rng), coeff(rng), coeff(rng)};
}

}  // namespace

TEST_CASE("discriminant: pinned values") {
    CHECK(BinaryCubicForm{0, 1, -1, 0}.discriminant() == 1);
    CHECK(BinaryCubicForm{0, 1, 1, 0}.discriminant() == 1);
    CHECK(BinaryCubicForm{1, 0, 0, 1}.discriminant() == -27);
    CHECK(BinaryCubicForm{1, 0, -1, -1}.discriminant() == -23);
    CHECK(BinaryCubicForm{1, -1, 2, -1}.discriminant() == -23);
    CHECK(BinaryCubicForm{0, 1, 1, 6}.discriminant() == -23);
    CHECK(BinaryCubicForm{1, 1, -2, -1}.discriminant() == 49);
    CHECK(BinaryCubicForm{1, 3, 3, 1}.discriminant() == 0);   // (u + v)^3
    CHECK(BinaryCubicForm{2, 0, 0, 0}.discriminant() == 0);
    CHECK(BinaryCubicForm{}.discriminant() == 0);
}

TEST_CASE("discriminant: exact for large coefficients, guarded overflow") {
    // translate a small form far out: coefficients grow to ~10^17 but the
    // discriminant is invariant, forcing the big-integer path to be exact
    BinaryCubicForm f{1, 0, -1, -1};
    BinaryCubicForm far = apply(Mat2{1, 0, 600000, 1}, f);
    CHECK(far.d > (Int(1) << 56));
    CHECK(far.discriminant() == -23);

    // -27 a^2 d^2 alone exceeds int64 here
    CHECK_THROWS_AS((BinaryCubicForm{1 << 30, 0, 0, 1}.discriminant()), overflow_guard);
}

TEST_CASE("value: direct evaluation") {
    BinaryCubicForm f{1, 2, 3, 4};
    CHECK(f.value(1, 0) == 1);
    CHECK(f.value(0, 1) == 4);
    CHECK(f.value(2, -1) == 2);
    CHECK(f.value(-1, -1) == -10);
    QuadraticForm q{2, -1, 5};
    CHECK(q.value(3, 2) == 32);
}

TEST_CASE("action: generator images") {
    BinaryCubicForm f{1, 2, 3, 4};
    // (u, v) -> (v, -u), determinant 1: coefficients reverse with signs
    CHECK(apply(Mat2{0, -1, 1, 0}, f) == BinaryCubicForm{-4, 3, -2, 1});
    // (u, v) -> (u + v, v)
    CHECK(apply(Mat2{1, 0, 1, 1}, f) == BinaryCubicForm{1, 5, 10, 10});
    // reflection (u, v) -> (u, -v) has determinant -1; the twist divides by it
    CHECK(apply(Mat2{1, 0, 0, -1}, f) == BinaryCubicForm{-1, 2, -3, 4});
    // minus identity negates a cubic: f((u,v) * -I) = -f, determinant +1
    CHECK(apply(Mat2{-1, 0, 0, -1}, f) == f.negated());

    QuadraticForm q{1, 0, 1};
    CHECK(apply(Mat2{1, 0, 1, 1}, q) == QuadraticForm{1, 2, 2});
    CHECK(apply(Mat2{0, -1, 1, 0}, q) == QuadraticForm{1, 0, 1});

    CHECK_THROWS_AS(apply(Mat2{2, 0, 0, 1}, f), precondition_violated);
}

TEST_CASE("action: composition, discriminant invariance, hessian covariance") {
    std::mt19937_64 rng(271828);
    for (int i = 0; i < 1000; ++i) {
        BinaryCubicForm f = random_form(rng, 20);
        Mat2 g = random_unimodular(rng), h = random_unimodular(rng);
        CHECK(apply(g, apply(h, f)) == apply(g * h, f));
        CHECK(apply(g, f).discriminant() == f.discriminant());
        CHECK(hessian(apply(g, f)) == apply(g, hessian(f)));
        CHECK(apply(g.inverse(), apply(g, f)) == f);
    }
}

TEST_CASE("hessian: pinned values and discriminant relation") {
    BinaryCubicForm f{1, 0, -1, -1};
    QuadraticForm h = hessian(f);
    CHECK(h == QuadraticForm{3, 9, 1});
    CHECK(h.discriminant() == -3 * f.discriminant());
    CHECK(hessian({0, 1, 1, 0}) == QuadraticForm{1, 1, 1});
    CHECK(hessian({1, 1, -2, -1}).discriminant() == -3 * 49);
}

TEST_CASE("matrices: determinant, inverse, identity") {
    Mat2 g{3, 2, 7, 5};
    CHECK(g.det() == 1);
    CHECK(g.is_unimodular());
    CHECK(g * g.inverse() == Mat2{});
    CHECK(g.inverse() * g == Mat2{});
    CHECK(Mat2{1, 0, 0, -1}.det() == -1);
    CHECK_FALSE(Mat2{2, 0, 0, 1}.is_unimodular());
    CHECK_THROWS_AS((Mat2{2, 0, 0, 2}.inverse()), precondition_violated);
}

TEST_CASE("canonical form: hand-verified negative discriminant descent") {
    BinaryCubicForm f{1, 0, -1, -1};
    auto c = canonical_form(f);
    CHECK(c.rep == BinaryCubicForm{1, -1, 2, -1});
    CHECK(c.stab_order == 1);
    CHECK(apply(c.transform, f) == c.rep);
    // idempotent on its own representative
    CHECK(canonical_form(c.rep).rep == c.rep);
}

TEST_CASE("canonical form: the three classes of discriminant -23 are distinct") {
    // two classes from the cubic field of x^3 - x - 1 (its proper and
    // improper GL2 pieces) and one from the reducible ring Z x O(-23)
    BinaryCubicForm f1{1, -1, 2, -1}, f2{1, 1, 2, 1}, f3{0, 1, 1, 6};
    auto c1 = canonical_form(f1), c2 = canonical_form(f2), c3 = canonical_form(f3);
    std::set<BinaryCubicForm> reps{c1.rep, c2.rep, c3.rep};
    CHECK(reps.size() == 3);
    CHECK(c1.stab_order == 1);
    CHECK(c2.stab_order == 1);
    CHECK(c3.stab_order == 1);
}

TEST_CASE("canonical form: order-three stabilizer at discriminant 1") {
    auto c = canonical_form({0, 1, 1, 0});
    CHECK(c.rep == BinaryCubicForm{0, 1, 1, 0});
    CHECK(c.stab_order == 3);
    // the cyclic cubics at discriminants 49 and 81 have a rotation of order 3
    CHECK(canonical_form({1, 1, -2, -1}).stab_order == 3);
    CHECK(canonical_form({1, 0, -3, 1}).stab_order == 3);
    // generic forms do not
    CHECK(canonical_form({1, 1, -3, -1}).stab_order == 1);
    CHECK(canonical_form({1, -1, 2, -1}).stab_order == 1);
}

TEST_CASE("canonical form: reducible and boundary orbits are stable") {
    for (BinaryCubicForm f : {BinaryCubicForm{1, 0, 0, 1},    // disc -27
                              BinaryCubicForm{0, 1, 0, 1},    // disc -4, root at i
                              BinaryCubicForm{0, 1, 1, 1},    // disc -3, root at rho
                              BinaryCubicForm{0, 1, 1, 6}}) { // disc -23, split ring
        auto c = canonical_form(f);
        CHECK(apply(c.transform, f) == c.rep);
        CHECK(canonical_form(c.rep).rep == c.rep);
        CHECK(c.stab_order == 1);
    }
}

TEST_CASE("canonical form: rejects degenerate forms") {
    CHECK_THROWS_AS(canonical_form({1, 3, 3, 1}), degenerate_form);
    CHECK_THROWS_AS(canonical_form({0, 0, 0, 0}), degenerate_form);
    CHECK_THROWS_AS(canonical_form({0, 0, 5, 0}), degenerate_form);
}

TEST_CASE("canonical form: invariant across the orbit") {
    std::mt19937_64 rng(314159);
    int done = 0, negative = 0, positive = 0;
    while (done < 500) {
        BinaryCubicForm f = random_form(rng, 9);
        Int disc;
        try {
            disc = f.discriminant();
        } catch (const overflow_guard&) {
            continue;
        }
        if (disc == 0) continue;
        ++done;
        (disc < 0 ? negative : positive)++;
        auto base = canonical_form(f);
        CHECK(apply(base.transform, f) == base.rep);
        CHECK((base.stab_order == 1 || base.stab_order == 3));
        Mat2 g = random_unimodular(rng, /*allow_reflection=*/false);
        auto moved = canonical_form(apply(g, f));
        CHECK(moved.rep == base.rep);
        CHECK(moved.stab_order == base.stab_order);
    }
    // the coefficient box must exercise both reduction engines
    CHECK(negative > 100);
    CHECK(positive > 20);
}

TEST_CASE("canonical form: negation lies in the same orbit") {
    // -I acts by f -> -f under the twisted action, so f and -f always share
    // a class and the representative can be sign-normalized
    std::mt19937_64 rng(161803);
    for (int i = 0; i < 50; ++i) {
        BinaryCubicForm f = random_form(rng, 7);
        if (f.discriminant() == 0) continue;
        CHECK(canonical_form(f).rep == canonical_form(f.negated()).rep);
        const BinaryCubicForm& r = canonical_form(f).rep;
        Int lead = r.a != 0 ? r.a : r.b != 0 ? r.b : r.c != 0 ? r.c : r.d;
        CHECK(lead > 0);
    }
}

TEST_CASE("canonical form: mirror classes pair up") {
    // conjugating by the reflection (u, v) -> (-u, v) sends a class to its
    // mirror; doing it twice returns the original class
    std::mt19937_64 rng(602214);
    for (int i = 0; i < 100; ++i) {
        BinaryCubicForm f = random_form(rng, 8);
        if (f.discriminant() == 0) continue;
        BinaryCubicForm mirror{f.a, -f.b, f.c, -f.d};
        CHECK(mirror.discriminant() == f.discriminant());
        auto c = canonical_form(f), cm = canonical_form(mirror);
        CHECK(cm.stab_order == c.stab_order);
        BinaryCubicForm back{cm.rep.a, -cm.rep.b, cm.rep.c, -cm.rep.d};
        CHECK(canonical_form(back).rep == c.rep);
    }
}

TEST_CASE("action: guarded overflow on huge transforms") {
    BinaryCubicForm f{1000000000, 0, 0, 1000000000};
    CHECK_THROWS_AS(apply(Mat2{1, 0, 1000000, 1}, f), overflow_guard);
}
