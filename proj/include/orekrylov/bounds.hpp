#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "orekrylov/rat.hpp"

namespace orekrylov {

enum class BoundFamily { Generic, LCLM, SymProd, Polynomials, AlgeqToDiffeq, Composition, Hermite };

// Named integer parameters; list-valued families (Polynomials) use suffixed
// keys k1, r1, d1, k2, ... together with s.
struct BoundQuery {
    BoundFamily family = BoundFamily::Generic;
    std::map<std::string, long> params;
    int m = 0;
};

namespace detail {

inline long bq_get(const BoundQuery& q, const std::string& key) {
    auto it = q.params.find(key);
    if (it == q.params.end()) throw std::invalid_argument("missing bound parameter: " + key);
    return it->second;
}

inline Int binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return b;
}

// (d_a, degMM(T)) of the family, as exact rationals
inline std::pair<Rat, Rat> bound_parts(const BoundQuery& q) {
    switch (q.family) {
        case BoundFamily::Generic:
            return {Rat(bq_get(q, "d_a")), Rat(bq_get(q, "degMM_T"))};
        case BoundFamily::LCLM:
            return {Rat(0), Rat(bq_get(q, "s") * bq_get(q, "d"))};
        case BoundFamily::SymProd:
            return {Rat(0), Rat(bq_get(q, "d1") * bq_get(q, "r2") +
                                bq_get(q, "d2") * bq_get(q, "r1"))};
        case BoundFamily::Polynomials: {
            const long s = bq_get(q, "s");
            Int big_r = 1;
            for (long i = 1; i <= s; ++i) {
                const long k = bq_get(q, "k" + std::to_string(i));
                const long r = bq_get(q, "r" + std::to_string(i));
                big_r *= binomial(k + r - 1, k);
            }
            Rat sum(0);
            for (long i = 1; i <= s; ++i) {
                const long k = bq_get(q, "k" + std::to_string(i));
                const long r = bq_get(q, "r" + std::to_string(i));
                const long d = bq_get(q, "d" + std::to_string(i));
                if (k == 0) continue;
                sum += make_rat(Int(k * d), Int(k + r - 1));
            }
            return {Rat(bq_get(q, "deg_x_J")), Rat(big_r) * sum};
        }
        case BoundFamily::AlgeqToDiffeq:
            return {Rat(0), Rat((2 * bq_get(q, "r") - 1) * bq_get(q, "d"))};
        case BoundFamily::Composition:
            return {Rat(0), Rat(bq_get(q, "d_P") * (bq_get(q, "r_L") * (2 * bq_get(q, "r_P") - 1) +
                                                    bq_get(q, "d_L")))};
        case BoundFamily::Hermite: {
            const long r = bq_get(q, "r");
            const long d = bq_get(q, "d");
            return {Rat(d), Rat(2 * r * d)};
        }
    }
    throw std::invalid_argument("unknown bound family");
}

}  // namespace detail

// floor((rho d_a + m degMM(T)) / (m + 1 - rho)), evaluated exactly
inline long evaluate_bound(const BoundQuery& q) {
    const long rho = detail::bq_get(q, "rho");
    if (q.m < rho) throw std::invalid_argument("order below the minimal order rho");
    auto [d_a, degmm_t] = detail::bound_parts(q);
    Rat value = (Rat(rho) * d_a + Rat(q.m) * degmm_t) / Rat(q.m + 1 - rho);
    return floor_rat(value);
}

inline std::vector<std::pair<int, long>> order_degree_curve(BoundQuery q, int m_lo, int m_hi) {
    if (m_lo > m_hi) throw std::invalid_argument("empty order range");
    std::vector<std::pair<int, long>> out;
    for (int m = m_lo; m <= m_hi; ++m) {
        q.m = m;
        out.emplace_back(m, evaluate_bound(q));
    }
    return out;
}

struct Table1Row {
    std::string rho_cap;
    std::string degmm_T;
    std::string new_bound;
};

inline Table1Row table1_row(BoundFamily family) {
    switch (family) {
        case BoundFamily::LCLM:
            return {"s*r", "s*d", "s^2*r*d"};
        case BoundFamily::SymProd:
            return {"r^s", "s*r^(s-1)*d", "s*r^(2s-1)*d"};
        case BoundFamily::AlgeqToDiffeq:
            return {"r", "(2r-1)*d", "2*r^2*d"};
        case BoundFamily::Composition:
            return {"r^2", "(r*(2r-1)+d)*d", "O(r^2*d^2 + r^4*d)"};
        case BoundFamily::Hermite:
            return {"r", "2*r*d", "2*r^2*d"};
        default:
            throw std::invalid_argument("family has no Table 1 row");
    }
}

inline BoundFamily bound_family_from_name(const std::string& name) {
    if (name == "generic") return BoundFamily::Generic;
    if (name == "lclm") return BoundFamily::LCLM;
    if (name == "symprod") return BoundFamily::SymProd;
    if (name == "polynomials" || name == "closure") return BoundFamily::Polynomials;
    if (name == "algeq" || name == "resolvent") return BoundFamily::AlgeqToDiffeq;
    if (name == "compose" || name == "composition") return BoundFamily::Composition;
    if (name == "hermite" || name == "telescope") return BoundFamily::Hermite;
    throw std::invalid_argument("unknown bound family: " + name);
}

}  // namespace orekrylov
