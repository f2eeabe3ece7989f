#include <catch2/catch_amalgamated.hpp>

#include "orekrylov/oracle.hpp"
#include "orekrylov/ore.hpp"
#include "orekrylov/parse.hpp"

using namespace orekrylov;

TEST_CASE("skew multiplication: Dx * x = x*Dx + 1") {
    OrePoly dx = parse_operator("Dx");
    OrePoly x(OreKind::diff(), {RatFunc::x()});
    OrePoly prod = ore_mul(dx, x);
    CHECK(ore_to_string(prod) == "x*Dx + 1");
}

TEST_CASE("skew multiplication: Sx * x = (x+1)*Sx") {
    OrePoly sx = parse_operator("Sx");
    OrePoly x(OreKind::shift(), {RatFunc::x()});
    OrePoly prod = ore_mul(sx, x);
    REQUIRE(prod.order() == 1);
    CHECK(prod.coeff(0).is_zero());
    CHECK(prod.coeff(1) == RatFunc::x() + RatFunc(1));
}

TEST_CASE("Euler operator Ex = x*d/dx") {
    OrePoly ex = parse_operator("Ex");
    TruncSeries s = TruncSeries::from_poly(Poly::x() * Poly::x(), 8);
    TruncSeries r = ore_apply(ex, s);
    // Ex x^2 = 2 x^2
    CHECK(r.coeff(2) == 2);
    CHECK(r.coeff(1) == 0);
}

TEST_CASE("right division round-trips") {
    OrePoly a = parse_operator("Dx^3 - x*Dx + 2");
    OrePoly b = parse_operator("Dx^2 + x");
    auto [q, r] = ore_right_divrem(a, b);
    OrePoly back = ore_mul(q, b);
    // a = q*b + r
    for (int i = 0; i <= a.order(); ++i) {
        RatFunc lhs = a.coeff(i);
        RatFunc rhs = back.coeff(i) + r.coeff(i);
        CHECK(lhs == rhs);
    }
    CHECK(r.order() < b.order());
}

TEST_CASE("exact right divisibility") {
    OrePoly b = parse_operator("Dx - 1");
    OrePoly q = parse_operator("Dx + x");
    OrePoly a = ore_mul(q, b);
    auto [q2, r] = ore_right_divrem(a, b);
    CHECK(r.is_zero());
    CHECK(ore_to_string(q2) == ore_to_string(q));
}

TEST_CASE("operator application to series and sequences") {
    // (Dx - 1) e^x = 0
    SeriesBasis sb = series_solution_basis(parse_operator("Dx-1"), 10);
    REQUIRE(sb.basis.size() == 1);
    CHECK(ore_apply(parse_operator("Dx-1"), sb.basis[0]).is_zero());

    // (Sx - 2) 2^k = 0
    std::vector<Rat> u;
    Rat v = 1;
    for (int i = 0; i < 10; ++i) {
        u.push_back(v);
        v *= 2;
    }
    for (const Rat& r : ore_apply(parse_operator("Sx-2"), u)) CHECK(r == 0);
}

TEST_CASE("normalization clears content and fixes sign") {
    // the common factor 2x is content and drops out
    OrePoly a = parse_operator("-2*x*Dx - 4*x");
    OrePoly n = ore_normalized(a);
    CHECK(ore_to_string(n) == "Dx + 2");
}

TEST_CASE("format and reparse round-trip") {
    for (const char* s : {"Dx^2 - Dx", "(x+1)*Sx - x", "x*Dx^2 - Dx - x^2",
                          "Ex^2 - 3*Ex + 1"}) {
        OrePoly a = parse_operator(s);
        OrePoly b = parse_operator(ore_to_string(a));
        CHECK(ore_to_string(a) == ore_to_string(b));
    }
}
