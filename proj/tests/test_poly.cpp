#include <catch2/catch_amalgamated.hpp>

#include "orekrylov/ratfunc.hpp"

using namespace orekrylov;

TEST_CASE("polynomial arithmetic basics") {
    Poly x = Poly::x();
    Poly p = x * x - Poly(1);
    CHECK(p.degree() == 2);
    CHECK(p.eval(Rat(3)) == 8);
    CHECK((p * Poly()).is_zero());
    CHECK(p + Poly(1) == x * x);
}

TEST_CASE("gcd is monic and handles zero") {
    Poly x = Poly::x();
    Poly a = (x - Poly(1)) * (x + Poly(2)) * Poly(3);
    Poly b = (x - Poly(1)) * (x + Poly(5)) * Poly(7);
    CHECK(poly_gcd(a, b) == x - Poly(1));
    CHECK(poly_gcd(Poly(), Poly()).is_zero());
    CHECK(poly_gcd(a, Poly()) == a.monic());
}

TEST_CASE("shift of the variable") {
    Poly x = Poly::x();
    Poly p = x * x;
    // p(x + 1) = x^2 + 2x + 1
    CHECK(p.shift(Rat(1)) == x * x + Poly(2) * x + Poly(1));
    CHECK(p.shift(Rat(0)) == p);
}

TEST_CASE("reversed coefficients") {
    Poly x = Poly::x();
    Poly p = Poly(2) * x * x + Poly(3);
    CHECK(p.reversed() == Poly(3) * x * x + Poly(2));
}

TEST_CASE("root multiplicity") {
    Poly x = Poly::x();
    Poly p = x * x * (x - Poly(1));
    CHECK(multiplicity(p, x) == 2);
    CHECK(multiplicity(p, x - Poly(1)) == 1);
    CHECK(multiplicity(p, x - Poly(2)) == 0);
}

TEST_CASE("rational function normalization") {
    Poly x = Poly::x();
    RatFunc f(x * x - Poly(1), x - Poly(1));
    CHECK(f == RatFunc(x + Poly(1)));
    CHECK(f.den().degree() == 0);

    RatFunc g(Poly(2), Poly(4) * x);
    CHECK(g.den() == x);  // denominator kept monic
    CHECK(g.num() == Poly(make_rat(1, 2)));
}

TEST_CASE("rational function arithmetic") {
    RatFunc x = RatFunc::x();
    RatFunc f = RatFunc(1) / x + x;
    CHECK(f * x == RatFunc(1) + x * x);
    CHECK((f - f).is_zero());
}

TEST_CASE("derivation and shift on rational functions") {
    RatFunc x = RatFunc::x();
    // d/dx (1/x) = -1/x^2
    CHECK(apply_derivation({Poly(1)}, RatFunc(1) / x) == -RatFunc(1) / (x * x));
    // x d/dx (x^2) = 2 x^2
    CHECK(apply_derivation({Poly::x()}, x * x) == RatFunc(2) * x * x);
    CHECK(apply_shift(x * x) == (x + RatFunc(1)) * (x + RatFunc(1)));
}

TEST_CASE("Mobius substitution x -> 1/x") {
    RatFunc x = RatFunc::x();
    Mobius inv{0, 1, 1, 0};
    CHECK(mobius_substitute(x * x, inv) == RatFunc(1) / (x * x));
}
