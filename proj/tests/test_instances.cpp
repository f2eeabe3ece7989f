#include <catch2/catch_amalgamated.hpp>

#include "orekrylov/instances.hpp"
#include "orekrylov/parse.hpp"
#include "orekrylov/verify.hpp"

using namespace orekrylov;

namespace {

std::string op_of(const InstanceReport& r) { return ore_to_string(r.op); }

}  // namespace

TEST_CASE("lclm of first order differential operators") {
    InstanceReport r = lclm({parse_operator("Dx-1"), parse_operator("Dx")});
    CHECK(op_of(r) == "Dx^2 - Dx");
    CHECK(r.order == 2);
    CHECK(r.degree <= r.bound);
    // exact division oracle
    CHECK(verify_lclm({parse_operator("Dx-1"), parse_operator("Dx")}, r.op).ok);
}

TEST_CASE("lclm of shift operators") {
    // annihilators of 2^k and 3^k combine to Sx^2 - 5 Sx + 6
    InstanceReport r = lclm({parse_operator("Sx-2"), parse_operator("Sx-3")});
    CHECK(op_of(r) == "Sx^2 - 5*Sx + 6");
}

TEST_CASE("lclm of three operators") {
    InstanceReport r =
        lclm({parse_operator("Dx-1"), parse_operator("Dx-2"), parse_operator("Dx")});
    CHECK(op_of(r) == "Dx^3 - 3*Dx^2 + 2*Dx");
}

TEST_CASE("symmetric product squares the Airy equation") {
    std::vector<OrePoly> ls{parse_operator("Dx^2-x"), parse_operator("Dx^2-x")};
    InstanceReport r = symmetric_product(ls);
    CHECK(op_of(r) == "Dx^3 - 4*x*Dx - 2");
    CHECK(instance_degmm_report(r).first <= instance_degmm_report(r).second);
    CHECK(verify_symprod(ls, r.op).ok);
}

TEST_CASE("symmetric product of shift operators") {
    // products of 2^k and k! solutions satisfy Sx - 2(x+... ) at first order
    std::vector<OrePoly> ls{parse_operator("Sx-2"), parse_operator("Sx-x")};
    InstanceReport r = symmetric_product(ls);
    CHECK(op_of(r) == "Sx - 2*x");
    CHECK(verify_symprod(ls, r.op).ok);
}

TEST_CASE("symmetric powers of the exponential") {
    for (int ell = 1; ell <= 5; ++ell) {
        InstanceReport r = sym_power(parse_operator("Dx-1"), ell);
        CHECK(op_of(r) == "Dx - " + std::to_string(ell));
    }
}

TEST_CASE("associate operator of the Airy derivative") {
    // g = f' with f'' = x f satisfies x g'' - g' - x^2 g = 0
    InstanceReport r = associate(parse_operator("Dx^2-x"), parse_operator("Dx"));
    CHECK(op_of(r) == "x*Dx^2 - Dx - x^2");
    CHECK(verify_associate(parse_operator("Dx^2-x"), parse_operator("Dx"), r.op).ok);
}

TEST_CASE("Wronskian annihilator") {
    std::vector<OrePoly> ls{parse_operator("Dx^2-x"), parse_operator("Dx^2-1")};
    InstanceReport r = wronskian_annihilator(ls);
    CHECK(r.degree <= r.bound);
    CHECK(verify_wronskian(ls, r.op).ok);
}

TEST_CASE("closure of an inhomogeneous combination") {
    ClosurePoly j = parse_closure("y1_0*y2_0", 2);
    std::vector<OrePoly> ls{parse_operator("Sx-2"), parse_operator("Sx-3")};
    InstanceReport r = polynomial_closure(j, ls);
    CHECK(op_of(r) == "Sx - 6");
    CHECK(verify_closure(j, ls, r.op).ok);
}

TEST_CASE("resolvent of the square root") {
    InstanceReport r = differential_resolvent(parse_bivar("y^2 - x"));
    CHECK(op_of(r) == "2*x*Dx - 1");
    CHECK(r.bound == 3);
    CHECK(verify_resolvent(parse_bivar("y^2 - x"), r.op).ok);
}

TEST_CASE("resolvent of a trinomial") {
    BivarPoly p = parse_bivar("y^3 + y - x");
    InstanceReport r = differential_resolvent(p);
    CHECK(op_of(r) == "(27*x^2 + 4)*Dx^2 + 27*x*Dx - 3");
    CHECK(r.degree <= r.bound);
    CHECK(verify_resolvent(p, r.op).ok);
}

TEST_CASE("composition of the exponential with the square root") {
    InstanceReport r = compose_annihilator(parse_bivar("y^2 - x"), parse_operator("Dx-1"));
    CHECK(op_of(r) == "4*x*Dx^2 + 2*Dx - 1");
    CHECK(verify_compose(parse_bivar("y^2 - x"), parse_operator("Dx-1"), r.op).ok);
}

TEST_CASE("telescopers with exact certificates") {
    BivarPoly one = parse_bivar("1");
    InstanceReport r1 = telescoper(one, parse_bivar("x - y"));
    CHECK(op_of(r1) == "Dx");
    InstanceReport r2 = telescoper(one, parse_bivar("x^2 + y^2"));
    CHECK(op_of(r2) == "x*Dx + 1");
    InstanceReport r3 = telescoper(one, parse_bivar("y^2 - x"));
    CHECK(op_of(r3) == "2*x*Dx + 1");
    for (const InstanceReport* r : {&r1, &r2, &r3}) CHECK(r->order == 1);
    CHECK(verify_telescope(one, parse_bivar("x^2 + y^2"), r2.op).ok);
}

TEST_CASE("order relaxation through the stored map") {
    InstanceReport r = symmetric_product({parse_operator("Dx^2-x"), parse_operator("Dx^2-x")});
    REQUIRE(r.theta.has_value());
    REQUIRE(r.krylov_seed.has_value());
    Relation rel = relation_at_order(*r.theta, *r.krylov_seed, r.order + 1);
    OrePoly relaxed = ore_normalized(relation_to_operator(rel, r.theta->kind));
    CHECK(verify_symprod({parse_operator("Dx^2-x"), parse_operator("Dx^2-x")}, relaxed).ok);
}
