#include <catch2/catch_amalgamated.hpp>

#include "orekrylov/nullspace.hpp"

using namespace orekrylov;

TEST_CASE("minimal kernel vector of a simple dependent pair") {
    RatFunc x = RatFunc::x();
    // columns (1, x) and (x, x^2) are proportional: kernel (x, -1)
    RatMatrix m(2, 2);
    m.at(0, 0) = RatFunc(1);
    m.at(1, 0) = x;
    m.at(0, 1) = x;
    m.at(1, 1) = x * x;
    PolyVector v = min_kernel_vector(m);
    REQUIRE(v.size() == 2);
    // normalized: degree-1 vector proportional to (x, -1)
    CHECK(std::max(v[0].degree(), v[1].degree()) == 1);
    CHECK((v[0] + Poly::x() * v[1]).is_zero());
}

TEST_CASE("kernel vector degree never exceeds the McMillan degree") {
    RatFunc x = RatFunc::x();
    RatMatrix m(2, 3);
    m.at(0, 0) = RatFunc(1) / x;
    m.at(0, 1) = RatFunc(1);
    m.at(0, 2) = x;
    m.at(1, 0) = RatFunc(1);
    m.at(1, 1) = x;
    m.at(1, 2) = x * x;
    PolyVector v = min_kernel_vector(m);
    REQUIRE(!v.empty());
    int d = 0;
    RatFunc r0, r1;
    for (std::size_t j = 0; j < v.size(); ++j) {
        d = std::max(d, v[j].degree());
        r0 += m.at(0, static_cast<int>(j)) * RatFunc(v[j]);
        r1 += m.at(1, static_cast<int>(j)) * RatFunc(v[j]);
    }
    CHECK(r0.is_zero());
    CHECK(r1.is_zero());
    CHECK(d <= mcmillan_degree(m));
}

TEST_CASE("full column rank is rejected or empty") {
    RatFunc x = RatFunc::x();
    RatMatrix m(2, 2);
    m.at(0, 0) = RatFunc(1);
    m.at(1, 1) = x;
    CHECK_THROWS_AS(min_kernel_vector(m), std::domain_error);
    CHECK(kronecker_indices(m).indices.empty());
}

TEST_CASE("Kronecker indices of a rank-one wide matrix") {
    RatFunc x = RatFunc::x();
    RatMatrix m(1, 3);
    m.at(0, 0) = RatFunc(1);
    m.at(0, 1) = x;
    m.at(0, 2) = x * x;
    KroneckerIndices ki = kronecker_indices(m);
    REQUIRE(ki.indices.size() == 2);
    int sum = 0;
    for (int i : ki.indices) sum += i;
    CHECK(sum <= mcmillan_degree(m));
    // basis vectors annihilate the matrix
    for (const PolyVector& v : ki.basis) {
        RatFunc r;
        for (std::size_t j = 0; j < v.size(); ++j)
            r += m.at(0, static_cast<int>(j)) * RatFunc(v[j]);
        CHECK(r.is_zero());
    }
    // indices are sorted
    CHECK(ki.indices[0] <= ki.indices[1]);
}
