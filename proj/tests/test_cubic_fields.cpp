#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <szeta/arith.hpp>
#include <szeta/cubic_fields.hpp>
#include <szeta/errors.hpp>

#include <sstream>

using namespace szeta;

TEST_CASE("smallest complex cubic field lives at disc -23") {
    auto fs = fields_with_disc(-23);
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].form == BinaryCubicForm{1, -1, 2, -1});
    CHECK(!fs[0].cyclic);
    // x^3 - x - 1 factorization shapes: inert at 2, one linear factor at 5,
    // partial ramification at 23, full splitting first at 59.
    CHECK(splitting_type(fs[0], 2) == SplittingSymbol::s3);
    CHECK(splitting_type(fs[0], 5) == SplittingSymbol::s12);
    CHECK(splitting_type(fs[0], 23) == SplittingSymbol::s121);
    CHECK(splitting_type(fs[0], 59) == SplittingSymbol::s111);
}

TEST_CASE("first few field discriminants in both directions") {
    // Complex cubics start -23, -31, -44; totally real start 49, 81, 148
    // with the first two cyclic (conductors 7 and 9).
    CHECK(fields_with_disc(-23).size() == 1);
    CHECK(fields_with_disc(-31).size() == 1);
    CHECK(fields_with_disc(-44).size() == 1);
    for (Int n : {-22, -30, -15, -4, 22, 44, 48, 50, 80})
        CHECK(fields_with_disc(n).empty());
    auto f49 = fields_with_disc(49);
    REQUIRE(f49.size() == 1);
    CHECK(f49[0].cyclic);
    CHECK(splitting_type(f49[0], 7) == SplittingSymbol::s13);
    auto f81 = fields_with_disc(81);
    REQUIRE(f81.size() == 1);
    CHECK(f81[0].cyclic);
    auto f148 = fields_with_disc(148);
    REQUIRE(f148.size() == 1);
    CHECK(!f148[0].cyclic);
}

TEST_CASE("disc -3896 carries four fields") {
    // The first discriminant with more than three fields in the complex
    // range; a classical multiplicity example (Scholz reflection territory).
    CHECK(fields_with_disc(-3896).size() == 4);
}

TEST_CASE("range listing is consistent and export round-trips through import") {
    auto fs = fields_in_range(-1000, 1000);
    CHECK(fs.size() == 154);
    for (const auto& f : fs) {
        CAPTURE(f.disc);
        REQUIRE(f.form.discriminant() == f.disc);
        REQUIRE(f.cyclic == is_square(f.disc));
    }
    // Export carries disc,a,b,c,d,galois_type; the import layout wants
    // disc,c3,c2,c1,c0, so drop the trailing column before reading back.
    std::ostringstream out;
    export_field_table(out, fs);
    std::istringstream lines(out.str());
    std::string line;
    std::string converted = "disc,c3,c2,c1,c0\n";
    std::getline(lines, line);
    while (std::getline(lines, line)) converted += line.substr(0, line.rfind(',')) + "\n";
    std::istringstream in(converted);
    CHECK(import_field_table(in) == fs);
}

TEST_CASE("import accepts comments, blank lines, and non-canonical cubics") {
    // x^3 + x + 1 has discriminant -31; any GL2(Z)-translate of it must
    // import to the same field as the canonical listing.
    std::istringstream in(
        "# generated by hand\n"
        "\n"
        "disc,c3,c2,c1,c0\n"
        "-31,1,0,1,1\n"
        "-31,1,3,4,3\n");  // the same cubic shifted by x -> x + 1
    auto fs = import_field_table(in);
    REQUIRE(fs.size() == 1);
    CHECK(fs == fields_with_disc(-31));
}

TEST_CASE("import rejects malformed rows with the line number") {
    auto expect_throw = [](const std::string& text, const char* what) {
        std::istringstream in(text);
        CAPTURE(what);
        CHECK_THROWS_AS(import_field_table(in), parse_error);
    };
    expect_throw("-23,1,-1,2\n", "four columns");
    expect_throw("-23,1,-1,2,-1,extra\n", "six columns");
    expect_throw("-23,1,x,2,-1\n", "non-integer");
    expect_throw("0,0,0,0,0\n", "degenerate");
    expect_throw("-4,0,1,0,1\n", "reducible");       // v * (u^2 + v^2)
    expect_throw("-368,2,-2,4,-2\n", "nonmaximal");  // 2 * (1,-1,2,-1), disc 16 * -23

    std::istringstream wrong_disc("-24,1,-1,2,-1\n");
    CHECK_THROWS_AS(import_field_table(wrong_disc), disc_mismatch);
}

TEST_CASE("duplicate defining cubics collapse to one field") {
    std::istringstream in("-23,1,-1,2,-1\n-23,1,1,2,1\n");  // mirror pair
    CHECK(import_field_table(in).size() == 1);
}

TEST_CASE("resolvent field lookup") {
    CubicField e12 = find_E(12);
    CHECK(e12.disc == -324);
    CubicField e21 = find_E(21);
    CHECK(e21.disc == -567);
    CHECK_THROWS_AS(find_E(3), precondition_violated);    // not a fundamental disc
    CHECK_THROWS_AS(find_E(-15), precondition_violated);  // negative
    CHECK_THROWS_AS(find_E(13), precondition_violated);   // 13 = 4 mod 9
}

TEST_CASE("omega matches full splitting in the resolvent field") {
    CubicField e12 = find_E(12);
    for (Int p : {5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43}) {
        if (kronecker(-3 * 12, p) != 1) continue;
        CAPTURE(p);
        bool full = splitting_type(e12, p) == SplittingSymbol::s111;
        CHECK(omega_d(12, p, e12) == (full ? 2 : -1));
    }
    CHECK_THROWS_AS(omega_d(12, 7, e12), precondition_violated);  // kronecker(-36, 7) = 1? no
}

TEST_CASE("splitting type rejects non-primes and degenerate input") {
    auto fs = fields_with_disc(-23);
    REQUIRE(fs.size() == 1);
    CHECK_THROWS_AS(splitting_type(fs[0], 1), precondition_violated);
    CHECK_THROWS_AS(splitting_type(fs[0], 0), precondition_violated);
}

TEST_CASE("field cache returns stable references and memoizes") {
    FieldCache cache;
    const auto& a = cache.get(-23);
    const auto& b = cache.get(-23);
    CHECK(&a == &b);
    CHECK(a.size() == 1);
    CHECK(cache.get(-22).empty());
}
