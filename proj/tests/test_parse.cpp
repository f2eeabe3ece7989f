#include <catch2/catch_amalgamated.hpp>

#include "orekrylov/parse.hpp"

using namespace orekrylov;

TEST_CASE("operator parsing") {
    OrePoly a = parse_operator("Dx^2 - Dx");
    CHECK(a.order() == 2);
    CHECK(a.kind().is_diff());

    OrePoly b = parse_operator("(x+1)*Sx - x");
    CHECK(b.order() == 1);
    CHECK(b.kind().is_shift());
    CHECK(b.coeff(1) == RatFunc::x() + RatFunc(1));

    OrePoly c = parse_operator("Ex^2 - 1");
    CHECK(c.kind().is_diff());
    CHECK(c.kind().p() == Poly::x());
}

TEST_CASE("mixed operator symbols are rejected") {
    CHECK_THROWS_AS(parse_operator("Dx*Sx"), ParseError);
    CHECK_THROWS_AS(parse_operator("Dx + Ex"), ParseError);
}

TEST_CASE("coefficients may not follow the operator symbol") {
    CHECK_THROWS_AS(parse_operator("Dx*x"), ParseError);
    CHECK(parse_operator("x*Dx").coeff(1) == RatFunc::x());
}

TEST_CASE("syntax errors carry a position") {
    try {
        parse_operator("Dx + @");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position == 5);
    }
}

TEST_CASE("bivariate polynomial parsing") {
    BivarPoly p = parse_bivar("y^2 - x*y + 3");
    CHECK(p.deg_y() == 2);
    CHECK(p.coeff(0) == Poly(3));
    CHECK(p.coeff(1) == -Poly::x());
    CHECK_THROWS_AS(parse_bivar("Dx + y"), ParseError);
    CHECK_THROWS_AS(parse_bivar("1/x + y"), ParseError);
}

TEST_CASE("rational function parsing") {
    RatFunc f = parse_ratfunc("1/x + x");
    CHECK(f == RatFunc(1) / RatFunc::x() + RatFunc::x());
    CHECK_THROWS_AS(parse_ratfunc("y + 1"), ParseError);
}

TEST_CASE("closure polynomial parsing") {
    ClosurePoly j = parse_closure("y1_0*y2_1 - x*y1_2", 2);
    CHECK(j.groups == 2);
    CHECK(j.terms.size() == 2);
    CHECK_THROWS_AS(parse_closure("y3_0", 2), ParseError);
    CHECK_THROWS_AS(parse_closure("y", 2), ParseError);
}

TEST_CASE("operator text round-trip") {
    for (const char* s :
         {"Dx^2 - Dx", "(x + 1)*Sx - x", "2*x*Dx - 1", "Sx^2 - 5*Sx + 6"}) {
        CHECK(ore_to_string(parse_operator(ore_to_string(parse_operator(s)))) ==
              ore_to_string(parse_operator(s)));
    }
}
