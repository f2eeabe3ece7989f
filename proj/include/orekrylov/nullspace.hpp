#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "orekrylov/smith.hpp"

namespace orekrylov {

using PolyVector = std::vector<Poly>;

namespace detail {

// Divide out the polynomial content, rescale to integer coprime coefficients,
// and make the leading coefficient of the first nonzero component positive.
inline void normalize_poly_vector(PolyVector& v) {
    Poly g;
    for (const Poly& p : v) g = poly_gcd(g, p);
    if (!g.is_zero() && !g.is_one())
        for (Poly& p : v) p = p / g;
    Int den_lcm = 1;
    Int num_gcd = 0;
    for (const Poly& p : v)
        for (int i = 0; i <= std::max(p.degree(), 0); ++i) {
            const Rat& c = p.coeff(i);
            if (c == 0) continue;
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        }
    if (num_gcd == 0) return;  // zero vector
    Rat scale = make_rat(den_lcm, num_gcd);
    if (scale < 0) scale = -scale;
    for (Poly& p : v) p = scale * p;
    for (const Poly& p : v)
        if (!p.is_zero()) {
            if (p.leading() < 0)
                for (Poly& q : v) q = Rat(-1) * q;
            break;
        }
}

// Clear denominators row by row; the right kernel is unchanged.
inline PolyMatrix clear_row_denominators(const RatMatrix& r) {
    PolyMatrix a(r.rows(), r.cols());
    for (int i = 0; i < r.rows(); ++i) {
        Poly l(1);
        for (int j = 0; j < r.cols(); ++j) l = poly_lcm(l, r.at(i, j).den());
        for (int j = 0; j < r.cols(); ++j)
            a.at(i, j) = r.at(i, j).num() * (l / r.at(i, j).den());
    }
    return a;
}

// All polynomial vectors v with deg v_j <= delta and A v = 0, as a Q-basis.
// Unknowns are ordered component-major: (v_0 coeffs low to high, v_1, ...).
inline std::vector<PolyVector> poly_kernel_at_degree(const PolyMatrix& a, int delta) {
    const int p = a.cols();
    int adeg = 0;
    for (const Poly& e : a.entries())
        if (!e.is_zero()) adeg = std::max(adeg, e.degree());
    const int ncoef = delta + 1;
    const int out_deg = adeg + delta;
    Mat<Rat> sys(a.rows() * (out_deg + 1), p * ncoef);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < p; ++j) {
            const Poly& e = a.at(i, j);
            if (e.is_zero()) continue;
            for (int d = 0; d <= e.degree(); ++d) {
                if (e.coeff(d) == 0) continue;
                for (int k = 0; k < ncoef; ++k)
                    sys.at(i * (out_deg + 1) + d + k, j * ncoef + k) += e.coeff(d);
            }
        }
    std::vector<std::vector<Rat>> qkernel = kernel_basis(sys);
    std::vector<PolyVector> out;
    for (const auto& flat : qkernel) {
        PolyVector v(static_cast<std::size_t>(p));
        for (int j = 0; j < p; ++j) {
            std::vector<Rat> cs(flat.begin() + std::size_t(j) * ncoef,
                                flat.begin() + std::size_t(j + 1) * ncoef);
            v[std::size_t(j)] = Poly(std::move(cs));
        }
        out.push_back(std::move(v));
    }
    return out;
}

// Reduction mod p = 2^61 - 1 can only lower the rank of the coefficient
// system, so full column rank mod p certifies an empty kernel at this degree
// and the exact solve can be skipped.
inline bool poly_kernel_possible(const PolyMatrix& a, int delta) {
    static constexpr std::uint64_t p = 2305843009213693951ull;
    const int cols = a.cols();
    int adeg = 0;
    for (const Poly& e : a.entries())
        if (!e.is_zero()) adeg = std::max(adeg, e.degree());
    const int ncoef = delta + 1;
    const int unknowns = cols * ncoef;
    const int eqs = a.rows() * (adeg + delta + 1);
    if (unknowns > eqs) return true;
    auto modval = [&](const Rat& v) -> std::uint64_t {
        Int num = v.get_num() % Int(p);
        Int den = v.get_den() % Int(p);
        if (num < 0) num += Int(p);
        Int inv;
        if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), Int(p).get_mpz_t()) == 0) return p;
        Int r = (num * inv) % Int(p);
        return static_cast<std::uint64_t>(mpz_get_ui(r.get_mpz_t()));
    };
    std::vector<std::vector<std::uint64_t>> sys(
        static_cast<std::size_t>(eqs), std::vector<std::uint64_t>(static_cast<std::size_t>(unknowns), 0));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < cols; ++j) {
            const Poly& e = a.at(i, j);
            if (e.is_zero()) continue;
            for (int d = 0; d <= e.degree(); ++d) {
                const std::uint64_t v = modval(e.coeff(d));
                if (v == p) return true;  // p divides a denominator: no certificate
                if (v == 0) continue;
                for (int k = 0; k < ncoef; ++k) {
                    std::uint64_t& slot = sys[std::size_t(i * (adeg + delta + 1) + d + k)]
                                             [std::size_t(j * ncoef + k)];
                    slot = (slot + v) % p;
                }
            }
        }
    auto mulmod = [&](std::uint64_t x, std::uint64_t y) -> std::uint64_t {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * y) % p);
    };
    auto invmod = [&](std::uint64_t x) -> std::uint64_t {
        std::uint64_t r = 1, b = x, e = p - 2;
        while (e) {
            if (e & 1) r = mulmod(r, b);
            b = mulmod(b, b);
            e >>= 1;
        }
        return r;
    };
    int rk = 0;
    for (int col = 0; col < unknowns && rk < eqs; ++col) {
        int piv = -1;
        for (int i = rk; i < eqs; ++i)
            if (sys[std::size_t(i)][std::size_t(col)] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return true;
        std::swap(sys[std::size_t(rk)], sys[std::size_t(piv)]);
        const std::uint64_t inv = invmod(sys[std::size_t(rk)][std::size_t(col)]);
        for (int j = col; j < unknowns; ++j)
            sys[std::size_t(rk)][std::size_t(j)] = mulmod(inv, sys[std::size_t(rk)][std::size_t(j)]);
        for (int i = rk + 1; i < eqs; ++i) {
            const std::uint64_t f = sys[std::size_t(i)][std::size_t(col)];
            if (f == 0) continue;
            for (int j = col; j < unknowns; ++j) {
                std::uint64_t sub = mulmod(f, sys[std::size_t(rk)][std::size_t(j)]);
                std::uint64_t& slot = sys[std::size_t(i)][std::size_t(j)];
                slot = (slot >= sub) ? slot - sub : slot + p - sub;
            }
        }
        ++rk;
    }
    return false;
}

// Incremental echelon store over k(x) for independence tests.
class RatEchelon {
  public:
    // true if v was independent of the store (and absorbed into it)
    bool try_insert(std::vector<RatFunc> v) {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const RatFunc& lead = v[std::size_t(pivots_[r])];
            if (lead.is_zero()) continue;
            for (std::size_t j = 0; j < v.size(); ++j)
                v[j] -= lead * rows_[r][j];
        }
        int piv = -1;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (!v[j].is_zero()) {
                piv = static_cast<int>(j);
                break;
            }
        if (piv < 0) return false;
        RatFunc inv = RatFunc(1) / v[std::size_t(piv)];
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = inv * v[j];
        rows_.push_back(std::move(v));
        pivots_.push_back(piv);
        return true;
    }

    int rank() const { return static_cast<int>(rows_.size()); }

  private:
    std::vector<std::vector<RatFunc>> rows_;
    std::vector<int> pivots_;
};

inline std::vector<RatFunc> to_rat_vector(const PolyVector& v) {
    std::vector<RatFunc> r;
    r.reserve(v.size());
    for (const Poly& p : v) r.emplace_back(p);
    return r;
}

}  // namespace detail

inline int vector_degree(const PolyVector& v) {
    int d = Poly::kNegInf;
    for (const Poly& p : v)
        if (!p.is_zero()) d = std::max(d, p.degree());
    return d;
}

// Minimal-degree nonzero polynomial vector in the right kernel of R,
// content-free with positive leading sign. Requires a nontrivial kernel.
// cap_hint, when nonnegative, must be an upper bound for the minimal kernel
// degree; it saves the McMillan-degree computation that otherwise caps the
// sweep.
inline PolyVector min_kernel_vector(const RatMatrix& r, int cap_hint = -1) {
    const int p = r.cols();
    const int rk = rank(r);
    if (rk >= p) throw std::domain_error("matrix has trivial right kernel");
    PolyMatrix a = detail::clear_row_denominators(r);

    if (p - rk == 1) {
        // one-dimensional kernel: the primitive polynomial representative of
        // the k(x)-kernel line is the minimal-degree vector
        std::vector<std::vector<RatFunc>> kb = kernel_basis(to_rat_matrix(a));
        Poly l(1);
        for (const RatFunc& f : kb[0]) l = poly_lcm(l, f.den());
        PolyVector v(static_cast<std::size_t>(p));
        for (int j = 0; j < p; ++j)
            v[std::size_t(j)] = kb[0][std::size_t(j)].num() * (l / kb[0][std::size_t(j)].den());
        detail::normalize_poly_vector(v);
        return v;
    }

    const int cap = cap_hint >= 0 ? cap_hint : std::max(mcmillan_degree(r), 0);
    for (int delta = 0; delta <= cap; ++delta) {
        if (!detail::poly_kernel_possible(a, delta)) continue;
        std::vector<PolyVector> sols = detail::poly_kernel_at_degree(a, delta);
        if (sols.empty()) continue;
        PolyVector v = sols.front();
        detail::normalize_poly_vector(v);
        return v;
    }
    throw std::logic_error("kernel vector degree exceeds McMillan degree cap");
}

struct KroneckerIndices {
    std::vector<int> indices;        // v_1 <= v_2 <= ...
    std::vector<PolyVector> basis;   // minimal polynomial kernel basis
};

// Minimal polynomial basis of the right kernel by a greedy degree sweep:
// at each degree, absorb every solution that is k(x)-independent of the
// vectors already chosen. Ties are broken by the fixed component-major
// coefficient ordering of the underlying linear solves.
inline KroneckerIndices kronecker_indices(const RatMatrix& r) {
    const int p = r.cols();
    const int nullity = p - rank(r);
    KroneckerIndices out;
    if (nullity == 0) return out;
    PolyMatrix a = detail::clear_row_denominators(r);
    detail::RatEchelon store;
    const int cap = std::max(mcmillan_degree(r), 0);
    for (int delta = 0; delta <= cap && store.rank() < nullity; ++delta) {
        if (!detail::poly_kernel_possible(a, delta)) continue;
        for (PolyVector& v : detail::poly_kernel_at_degree(a, delta)) {
            if (!store.try_insert(detail::to_rat_vector(v))) continue;
            detail::normalize_poly_vector(v);
            out.indices.push_back(delta);
            out.basis.push_back(std::move(v));
            if (store.rank() == nullity) break;
        }
    }
    if (store.rank() != nullity)
        throw std::logic_error("Kronecker index exceeds McMillan degree cap");
    return out;
}

}  // namespace orekrylov
