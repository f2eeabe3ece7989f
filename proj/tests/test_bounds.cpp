#include <catch2/catch_amalgamated.hpp>

#include "orekrylov/bounds.hpp"

using namespace orekrylov;

TEST_CASE("generic bound formula") {
    // floor((rho d_a + m degMM(T)) / (m + 1 - rho))
    BoundQuery q{BoundFamily::Generic, {{"rho", 2}, {"d_a", 1}, {"degMM_T", 4}}, 2};
    CHECK(evaluate_bound(q) == 10);
    q.m = 3;
    CHECK(evaluate_bound(q) == 7);
    q.m = 6;
    CHECK(evaluate_bound(q) == 5);
}

TEST_CASE("bound decreases as the order relaxes") {
    BoundQuery q{BoundFamily::Generic, {{"rho", 3}, {"d_a", 2}, {"degMM_T", 5}}, 3};
    long prev = evaluate_bound(q);
    for (auto [m, b] : order_degree_curve(q, 3, 10)) {
        CHECK(b <= prev);
        prev = b;
    }
}

TEST_CASE("family bounds at the minimal order") {
    BoundQuery lclm{BoundFamily::LCLM, {{"rho", 4}, {"s", 2}, {"d", 3}}, 4};
    // s^2 r d with r carried by rho = s*r
    CHECK(evaluate_bound(lclm) == 24);

    BoundQuery sp{BoundFamily::SymProd,
                  {{"rho", 4}, {"r1", 2}, {"d1", 2}, {"r2", 2}, {"d2", 2}}, 4};
    CHECK(evaluate_bound(sp) == 32);

    BoundQuery alg{BoundFamily::AlgeqToDiffeq, {{"rho", 2}, {"r", 2}, {"d", 1}}, 2};
    CHECK(evaluate_bound(alg) == 6);

    BoundQuery herm{BoundFamily::Hermite, {{"rho", 2}, {"r", 2}, {"d", 1}}, 2};
    // rho (d + 2 r d)
    CHECK(evaluate_bound(herm) == 10);
}

TEST_CASE("missing parameters are reported") {
    BoundQuery q{BoundFamily::LCLM, {{"s", 2}}, 4};
    CHECK_THROWS_AS(evaluate_bound(q), std::invalid_argument);
}

TEST_CASE("family names resolve") {
    CHECK(bound_family_from_name("lclm") == BoundFamily::LCLM);
    CHECK(bound_family_from_name("hermite") == BoundFamily::Hermite);
    CHECK_THROWS_AS(bound_family_from_name("nonsense"), std::invalid_argument);
}

TEST_CASE("symbolic table rows") {
    CHECK(table1_row(BoundFamily::LCLM).degmm_T == "s*d");
    CHECK(table1_row(BoundFamily::Hermite).degmm_T == "2*r*d");
    CHECK_THROWS_AS(table1_row(BoundFamily::Generic), std::invalid_argument);
}
