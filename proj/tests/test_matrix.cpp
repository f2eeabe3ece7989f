#include <catch2/catch_amalgamated.hpp>

#include "orekrylov/oracle.hpp"
#include "orekrylov/smith.hpp"

using namespace orekrylov;

namespace {

RatMatrix mat2(const RatFunc& a, const RatFunc& b, const RatFunc& c, const RatFunc& d) {
    RatMatrix m(2, 2);
    m.at(0, 0) = a;
    m.at(0, 1) = b;
    m.at(1, 0) = c;
    m.at(1, 1) = d;
    return m;
}

}  // namespace

TEST_CASE("Smith normal form divisibility and reconstruction") {
    Poly x = Poly::x();
    PolyMatrix a(2, 2);
    a.at(0, 0) = x;
    a.at(0, 1) = x * x;
    a.at(1, 0) = Poly(1);
    a.at(1, 1) = x;
    SmithTriple s = smith_normal_form(a);
    CHECK(s.S.at(0, 0) == Poly(1));
    CHECK(s.S.at(1, 1).is_zero());  // rank 1
}

TEST_CASE("Smith invariants divide successively") {
    Poly x = Poly::x();
    PolyMatrix a(2, 2);
    a.at(0, 0) = x;
    a.at(1, 1) = x * x * (x - Poly(1));
    SmithTriple s = smith_normal_form(a);
    const Poly g1 = s.S.at(0, 0);
    const Poly g2 = s.S.at(1, 1);
    CHECK(g1 == x);
    CHECK((g2 / g1) * g1 == g2);
}

TEST_CASE("McMillan degree of rational matrices") {
    RatFunc x = RatFunc::x();
    // strictly proper scalar 1/x has degree 1
    RatMatrix m1(1, 1);
    m1.at(0, 0) = RatFunc(1) / x;
    CHECK(mcmillan_degree(m1) == 1);

    // [1/x 0; 1 x]: poles at 0 and at infinity
    CHECK(mcmillan_degree(mat2(RatFunc(1) / x, RatFunc(), RatFunc(1), x)) == 2);

    // polynomial matrix: largest minor degree (here the determinant, x^3)
    CHECK(mcmillan_degree(mat2(x * x, RatFunc(1), RatFunc(), x)) == 3);

    // constant matrices have degree 0
    CHECK(mcmillan_degree(mat2(RatFunc(3), RatFunc(1), RatFunc(), RatFunc(2))) == 0);
}

TEST_CASE("two computation paths and the minor oracle agree") {
    RatFunc x = RatFunc::x();
    RatMatrix m = mat2(RatFunc(1) / x, x, RatFunc(1), RatFunc(1) / (x - RatFunc(1)));
    const int d = mcmillan_degree(m);
    CHECK(mcmillan_degree_via_mobius(m) == d);
    CHECK(mcmillan_degree_minor_oracle(m) == d);
}

TEST_CASE("McMillan degree is subadditive and submultiplicative") {
    RatFunc x = RatFunc::x();
    RatMatrix a = mat2(RatFunc(1) / x, RatFunc(), RatFunc(1), x);
    RatMatrix b = mat2(x, RatFunc(1), RatFunc(), RatFunc(1) / (x + RatFunc(1)));
    CHECK(mcmillan_degree(a + b) <= mcmillan_degree(a) + mcmillan_degree(b));
    CHECK(mcmillan_degree(a * b) <= mcmillan_degree(a) + mcmillan_degree(b));
}

TEST_CASE("Kronecker product degree") {
    RatFunc x = RatFunc::x();
    RatMatrix a(1, 1);
    a.at(0, 0) = RatFunc(1) / x;
    RatMatrix b(1, 1);
    b.at(0, 0) = x;
    RatMatrix k = kron(a, b);
    REQUIRE(k.rows() == 1);
    CHECK(k.at(0, 0) == RatFunc(1));
}

TEST_CASE("rank over the function field") {
    RatFunc x = RatFunc::x();
    RatMatrix m(2, 3);
    m.at(0, 0) = x;
    m.at(0, 1) = x * x;
    m.at(1, 0) = RatFunc(1);
    m.at(1, 1) = x;  // second row is 1/x times the first
    m.at(0, 2) = RatFunc(1) / x;
    m.at(1, 2) = RatFunc(1) / (x * x);
    CHECK(rank(m) == 1);
    CHECK(detail::plain_rank(m) == 1);
}
