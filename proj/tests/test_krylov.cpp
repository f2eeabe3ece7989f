#include <catch2/catch_amalgamated.hpp>

#include "orekrylov/bounds.hpp"
#include "orekrylov/checks.hpp"
#include "orekrylov/oracle.hpp"
#include "orekrylov/pseudokrylov.hpp"

using namespace orekrylov;

namespace {

PseudoLinearMap scalar_map(const OreKind& kind, const RatFunc& t) {
    RatMatrix m(1, 1);
    m.at(0, 0) = t;
    return PseudoLinearMap(kind, m);
}

KrylovSeed unit_seed(int n) {
    KrylovSeed s;
    s.a.assign(static_cast<std::size_t>(n), Poly());
    s.a[0] = Poly(1);
    return s;
}

}  // namespace

TEST_CASE("derivative map on a constant seed") {
    // theta = d/dx, a = 1: theta a = 0, relation eta = (0, 1)
    PseudoLinearMap theta = scalar_map(OreKind::diff(), RatFunc());
    Relation rel = min_relation(theta, unit_seed(1));
    CHECK(rel.order == 1);
    REQUIRE(rel.eta.size() == 2);
    CHECK(rel.eta[0].is_zero());
    CHECK(rel.eta[1] == Poly(1));
}

TEST_CASE("shift map with identity matrix") {
    // theta a = a(x+1) = 1 for constant a: eta = (1, -1)
    PseudoLinearMap theta = scalar_map(OreKind::shift(), RatFunc(1));
    Relation rel = min_relation(theta, unit_seed(1));
    CHECK(rel.order == 1);
    REQUIRE(rel.eta.size() == 2);
    CHECK(rel.eta[0] == -rel.eta[1]);
}

TEST_CASE("Krylov matrix shape and first column") {
    PseudoLinearMap theta = scalar_map(OreKind::diff(), RatFunc::x());
    KrylovSeed seed = unit_seed(1);
    RatMatrix k = krylov_matrix(theta, seed, 3);
    CHECK(k.rows() == 1);
    CHECK(k.cols() == 4);
    CHECK(k.at(0, 0) == RatFunc(1));
    CHECK(k.at(0, 1) == RatFunc::x());
}

TEST_CASE("relation residual vanishes") {
    checks::Rng rng(17);
    for (long t = 0; t < 12; ++t) {
        checks::RandomInstance inst = checks::random_map(rng, t);
        Relation rel = min_relation(inst.theta, inst.seed);
        RatVector res = relation_residual(inst.theta, inst.seed, rel.eta);
        CHECK(is_zero_vector(res));
    }
}

TEST_CASE("relation at relaxed order keeps annihilation and shrinks degree bound") {
    checks::Rng rng(23);
    for (long t = 0; t < 6; ++t) {
        checks::RandomInstance inst = checks::random_map(rng, t);
        Relation rel = min_relation(inst.theta, inst.seed);
        const int rho = rel.order;
        for (int m = rho; m <= rho + 2; ++m) {
            Relation r = relation_at_order(inst.theta, inst.seed, m);
            CHECK(is_zero_vector(relation_residual(inst.theta, inst.seed, r.eta)));
            BoundQuery q{BoundFamily::Generic,
                         {{"rho", rho},
                          {"d_a", inst.seed.d_a()},
                          {"degMM_T", inst.theta.degmm_T()}},
                         m};
            CHECK(r.degree <= evaluate_bound(q));
        }
    }
}

TEST_CASE("brute force and structured paths agree") {
    checks::Rng rng(31);
    for (long t = 0; t < 9; ++t) {
        checks::RandomInstance inst = checks::random_map(rng, t);
        Relation a = min_relation(inst.theta, inst.seed);
        Relation b = brute_force_relation(inst.theta, inst.seed);
        CHECK(a.order == b.order);
        CHECK(checks::same_up_to_scalar(a.eta, b.eta));
    }
}

TEST_CASE("Krylov matrix McMillan bound") {
    checks::Rng rng(41);
    for (long t = 0; t < 6; ++t) {
        checks::RandomInstance inst = checks::random_map(rng, t);
        const int rho = krylov_rho(inst.theta, inst.seed);
        RatMatrix k = krylov_matrix(inst.theta, inst.seed, rho);
        CHECK(mcmillan_degree(k) <= rho * inst.seed.d_a() + rho * inst.theta.degmm_T());
    }
}

TEST_CASE("relation converts to an annihilating operator") {
    PseudoLinearMap theta = scalar_map(OreKind::diff(), RatFunc(1));
    // theta a = a' + a with a = 1: minimal relation gives L = Dx - 1
    Relation rel = min_relation(theta, unit_seed(1));
    OrePoly l = ore_normalized(relation_to_operator(rel, theta.kind));
    CHECK(ore_to_string(l) == "Dx - 1");
}
