#pragma once

#include <algorithm>
#include <cassert>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "orekrylov/nullspace.hpp"
#include "orekrylov/ore.hpp"

namespace orekrylov {

using RatVector = std::vector<RatFunc>;

// theta = p d/dx + T (Diff) or theta = T sigma_x (Shift) acting on k(x)^n.
struct PseudoLinearMap {
    OreKind kind;
    RatMatrix T;

    PseudoLinearMap(OreKind k, RatMatrix t) : kind(std::move(k)), T(std::move(t)) {
        if (T.rows() != T.cols()) throw std::invalid_argument("T must be square");
    }

    int dim() const { return T.rows(); }

    // degMM(T), computed once and reused by every bound evaluation
    int degmm_T() const {
        if (!degmm_) degmm_ = mcmillan_degree(T);
        return *degmm_;
    }

  private:
    mutable std::optional<int> degmm_;
};

struct KrylovSeed {
    PolyVector a;

    int d_a() const {
        int d = 0;
        for (const Poly& p : a)
            if (!p.is_zero()) d = std::max(d, p.degree());
        return d;
    }
    bool is_zero() const {
        for (const Poly& p : a)
            if (!p.is_zero()) return false;
        return true;
    }
};

struct Relation {
    int order = 0;
    std::vector<Poly> eta;  // length order + 1, content-free, sign-normalized
    int degree = 0;         // max coefficient degree
};

inline RatVector theta_apply(const PseudoLinearMap& theta, const RatVector& v) {
    if (static_cast<int>(v.size()) != theta.dim())
        throw std::invalid_argument("vector length does not match map dimension");
    if (theta.kind.is_diff()) {
        RatVector out = theta.T.apply(v);
        // apply_derivation already includes the factor p
        for (std::size_t i = 0; i < v.size(); ++i)
            out[i] += apply_derivation({theta.kind.p()}, v[i]);
        return out;
    }
    RatVector shifted(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) shifted[i] = apply_shift(v[i]);
    return theta.T.apply(shifted);
}

inline RatVector seed_vector(const KrylovSeed& seed) {
    RatVector v;
    v.reserve(seed.a.size());
    for (const Poly& p : seed.a) v.emplace_back(p);
    return v;
}

// K = [a, theta a, ..., theta^m a], n x (m+1)
inline RatMatrix krylov_matrix(const PseudoLinearMap& theta, const KrylovSeed& seed, int m) {
    if (m < 0) throw std::invalid_argument("negative Krylov order");
    const int n = theta.dim();
    if (static_cast<int>(seed.a.size()) != n)
        throw std::invalid_argument("seed length does not match map dimension");
    RatMatrix k(n, m + 1);
    RatVector col = seed_vector(seed);
    for (int j = 0; j <= m; ++j) {
        for (int i = 0; i < n; ++i) k.at(i, j) = col[std::size_t(i)];
        if (j < m) col = theta_apply(theta, col);
    }
    return k;
}

namespace detail {

// Incremental fraction-free rank tracker: columns are reduced to primitive
// polynomial vectors with distinct pivot rows.
class FractionFreeSpan {
  public:
    // reduces v against the span; true if v was independent (and is absorbed)
    bool insert(const RatVector& rv) {
        Poly l(1);
        for (const RatFunc& f : rv) l = poly_lcm(l, f.den());
        PolyVector v(rv.size());
        for (std::size_t i = 0; i < rv.size(); ++i)
            v[i] = rv[i].num() * (l / rv[i].den());
        for (std::size_t s = 0; s < cols_.size(); ++s) {
            const PolyVector& u = cols_[s];
            const int r = pivots_[s];
            if (v[std::size_t(r)].is_zero()) continue;
            const Poly vr = v[std::size_t(r)];
            const Poly& ur = u[std::size_t(r)];
            for (std::size_t j = 0; j < v.size(); ++j)
                v[j] = v[j] * ur - u[j] * vr;
            remove_content(v);
        }
        int piv = -1;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (!v[j].is_zero()) {
                piv = static_cast<int>(j);
                break;
            }
        if (piv < 0) return false;
        remove_content(v);
        cols_.push_back(std::move(v));
        pivots_.push_back(piv);
        return true;
    }

    int rank() const { return static_cast<int>(cols_.size()); }

  private:
    static void remove_content(PolyVector& v) {
        Poly g;
        for (const Poly& p : v) g = poly_gcd(g, p);
        if (!g.is_zero() && !g.is_one())
            for (Poly& p : v) p = p / g;
    }

    std::vector<PolyVector> cols_;
    std::vector<int> pivots_;
};

}  // namespace detail

// first m with theta^m(a) dependent on its predecessors; rho <= n always
inline int krylov_rho(const PseudoLinearMap& theta, const KrylovSeed& seed) {
    if (seed.is_zero()) throw std::invalid_argument("zero Krylov seed");
    detail::FractionFreeSpan span;
    RatVector col = seed_vector(seed);
    for (int m = 0; m <= theta.dim(); ++m) {
        if (!span.insert(col)) return m;
        col = theta_apply(theta, col);
    }
    throw std::logic_error("Krylov iteration exceeded the ambient dimension");
}

inline RatVector relation_residual(const PseudoLinearMap& theta, const KrylovSeed& seed,
                                   const std::vector<Poly>& eta) {
    RatVector acc(std::size_t(theta.dim()));
    RatVector col = seed_vector(seed);
    for (std::size_t j = 0; j < eta.size(); ++j) {
        if (!eta[j].is_zero()) {
            RatFunc c{Poly(eta[j])};
            for (int i = 0; i < theta.dim(); ++i) acc[std::size_t(i)] += c * col[std::size_t(i)];
        }
        if (j + 1 < eta.size()) col = theta_apply(theta, col);
    }
    return acc;
}

inline bool is_zero_vector(const RatVector& v) {
    for (const RatFunc& f : v)
        if (!f.is_zero()) return false;
    return true;
}

inline Relation make_relation(std::vector<Poly> eta) {
    detail::normalize_poly_vector(eta);
    // sign: the highest-index nonzero coefficient gets a positive leading term
    for (auto it = eta.rbegin(); it != eta.rend(); ++it)
        if (!it->is_zero()) {
            if (it->leading() < 0)
                for (Poly& p : eta) p = Rat(-1) * p;
            break;
        }
    Relation r;
    r.order = static_cast<int>(eta.size()) - 1;
    r.degree = std::max(vector_degree(eta), 0);
    r.eta = std::move(eta);
    return r;
}

// Problem 1: the minimal-order relation eta_0 a + ... + eta_rho theta^rho a = 0.
inline Relation min_relation(const PseudoLinearMap& theta, const KrylovSeed& seed) {
    const int rho = krylov_rho(theta, seed);
    RatMatrix k = krylov_matrix(theta, seed, rho);
    // degMM(K) <= rho d_a + rho degMM(T) caps the sweep without a Smith form of K
    std::vector<Poly> eta = min_kernel_vector(k, rho * seed.d_a() + rho * theta.degmm_T());
    Relation rel = make_relation(std::move(eta));
    assert(rel.order == rho);
    // theta-stability: theta^{rho+1}(a) stays in the span of the first rho iterates
    assert(rank(krylov_matrix(theta, seed, rho + 1)) == rho);
    assert(is_zero_vector(relation_residual(theta, seed, rel.eta)));
    return rel;
}

// Order-relaxed variant: minimal-degree relation among the first m+1 iterates.
inline Relation relation_at_order(const PseudoLinearMap& theta, const KrylovSeed& seed, int m) {
    const int rho = krylov_rho(theta, seed);
    if (m < rho) throw std::invalid_argument("requested order below the minimal order");
    RatMatrix k = krylov_matrix(theta, seed, m);
    std::vector<Poly> eta = min_kernel_vector(k, rho * seed.d_a() + m * theta.degmm_T());
    eta.resize(std::size_t(m) + 1);
    Relation rel = make_relation(std::move(eta));
    rel.order = m;
    assert(is_zero_vector(relation_residual(theta, seed, rel.eta)));
    return rel;
}

// Both sides of degMM(K) <= rho d_a + m degMM(T).
inline std::pair<int, int> krylov_mcmillan_check(const PseudoLinearMap& theta,
                                                 const KrylovSeed& seed, int m) {
    const int rho = krylov_rho(theta, seed);
    RatMatrix k = krylov_matrix(theta, seed, m);
    const int degmm_k = mcmillan_degree(k);
    const int bound = rho * seed.d_a() + m * theta.degmm_T();
    assert(degmm_k <= bound);
    return {degmm_k, bound};
}

// The relation as a skew polynomial sum eta_i theta^i.
inline OrePoly relation_to_operator(const Relation& rel, const OreKind& kind) {
    std::vector<RatFunc> c;
    c.reserve(rel.eta.size());
    for (const Poly& p : rel.eta) c.emplace_back(p);
    return OrePoly(kind, std::move(c));
}

}  // namespace orekrylov
