#include <catch2/catch_amalgamated.hpp>

#include "orekrylov/oracle.hpp"
#include "orekrylov/parse.hpp"

using namespace orekrylov;

TEST_CASE("exponential series") {
    SeriesBasis sb = series_solution_basis(parse_operator("Dx - 1"), 6);
    REQUIRE(sb.basis.size() == 1);
    CHECK(sb.shift == 0);
    const TruncSeries& e = sb.basis[0];
    CHECK(e.coeff(0) == 1);
    CHECK(e.coeff(2) == make_rat(1, 2));
    CHECK(e.coeff(5) == make_rat(1, 120));
}

TEST_CASE("second order basis is unit-triangular") {
    SeriesBasis sb = series_solution_basis(parse_operator("Dx^2"), 4);
    REQUIRE(sb.basis.size() == 2);
    CHECK(sb.basis[0].coeff(0) == 1);
    CHECK(sb.basis[0].coeff(1) == 0);
    CHECK(sb.basis[1].coeff(0) == 0);
    CHECK(sb.basis[1].coeff(1) == 1);
}

TEST_CASE("singular leading coefficient forces an expansion shift") {
    // x*Dx - 1 has 0 as a singular point; the oracle reports the x-shift used
    SeriesBasis sb = series_solution_basis(parse_operator("x*Dx - 1"), 8);
    CHECK(sb.shift > 0);
}

TEST_CASE("factorial sequence") {
    std::vector<Rat> u = sequence_solution(parse_operator("Sx - (x+1)"), {Rat(1)}, 5);
    REQUIRE(u.size() == 5);
    CHECK(u[4] == 24);
}

TEST_CASE("constant sequence") {
    std::vector<Rat> u = sequence_solution(parse_operator("Sx - 1"), {Rat(7)}, 4);
    for (const Rat& r : u) CHECK(r == 7);
}

TEST_CASE("Newton series for the binomial square root") {
    // y^2 = 1 + x: g = 1 + x/2 - x^2/8 + x^3/16 - ...
    BivarPoly p = parse_bivar("y^2 - 1 - x");
    TruncSeries g = newton_algebraic_series(p, Rat(1), 4);
    CHECK(g.coeff(0) == 1);
    CHECK(g.coeff(1) == make_rat(1, 2));
    CHECK(g.coeff(2) == make_rat(-1, 8));
    CHECK(g.coeff(3) == make_rat(1, 16));
}

TEST_CASE("Newton series for a polynomial root") {
    TruncSeries g = newton_algebraic_series(parse_bivar("y - x^2"), Rat(0), 5);
    CHECK(g.coeff(2) == 1);
    CHECK(g.coeff(0) == 0);
    CHECK(g.coeff(4) == 0);
}

TEST_CASE("Newton residual vanishes to precision") {
    BivarPoly p = parse_bivar("y^3 + y - x");
    TruncSeries g = newton_algebraic_series(p, Rat(0), 20);
    CHECK(detail::bivar_eval_series(p, g).is_zero());
}

TEST_CASE("non-simple root is rejected") {
    CHECK_THROWS_AS(newton_algebraic_series(parse_bivar("y^2 - x"), Rat(0), 5),
                    std::domain_error);
}

TEST_CASE("telescoper certificates") {
    BivarPoly one = parse_bivar("1");
    // d/dx 1/(x-y) integrates in y: certificate h = -1/(x-y)
    CHECK(verify_telescoper(parse_operator("Dx"), one, parse_bivar("x - y")).ok);
    CHECK(verify_telescoper(parse_operator("x*Dx + 1"), one, parse_bivar("x^2 + y^2")).ok);
    // Dx alone is not a telescoper for 1/(x^2+y^2)
    CHECK_FALSE(verify_telescoper(parse_operator("Dx"), one, parse_bivar("x^2 + y^2")).ok);
}
