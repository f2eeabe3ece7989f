#include <catch2/catch_amalgamated.hpp>

#include "orekrylov/bivar.hpp"
#include "orekrylov/parse.hpp"

using namespace orekrylov;

TEST_CASE("bivariate degrees and coefficients") {
    BivarPoly p = parse_bivar("y^2 + x*y + x^3");
    CHECK(p.deg_y() == 2);
    CHECK(p.deg_x() == 3);
    CHECK(p.coeff(1) == Poly::x());
    CHECK(p.coeff(2) == Poly(1));
}

TEST_CASE("square-freeness in y") {
    CHECK(y_squarefree(parse_bivar("y^2 - x").to_ypoly()));
    CHECK_FALSE(y_squarefree(parse_bivar("y^2 - 2*x*y + x^2").to_ypoly()));
}

TEST_CASE("y-gcd and modular inverse") {
    BivarPoly a = parse_bivar("y^2 - x");
    YPoly m = a.to_ypoly();
    YPoly y = parse_bivar("y").to_ypoly();
    YPoly inv = yinv_mod(y, m);
    YPoly prod = ymod(inv * y, m);
    // y * y/x = y^2/x = 1 mod (y^2 - x)
    CHECK(prod.degree() == 0);
    CHECK(prod.coeff(0) == RatFunc(1));
}

TEST_CASE("resultant eliminates y") {
    // res_y(y^2 - x, y - x) = x^2 - x
    Poly r = resultant_y(parse_bivar("y^2 - x"), parse_bivar("y - x"));
    Poly x = Poly::x();
    CHECK(r.monic() == (x * x - x).monic());
}

TEST_CASE("Hermite reduction of a simple pole") {
    // 1/(x - y) is already reduced: remainder equals the input
    BivarPoly q = parse_bivar("x - y");
    YPoly num = parse_bivar("1").to_ypoly();
    HermiteResult h = hermite_reduce(num, q.to_ypoly(), 1);
    CHECK(h.r.degree() == 0);
    CHECK(h.r.coeff(0) == RatFunc(1));
}

TEST_CASE("Hermite reduction strips higher pole orders") {
    // d/dy (1/(y - x)) = -1/(y - x)^2 is a pure derivative: remainder 0
    BivarPoly q = parse_bivar("y - x");
    YPoly num = parse_bivar("-1").to_ypoly();
    HermiteResult h = hermite_reduce(num, q.to_ypoly(), 2);
    CHECK(h.r.is_zero());
}
