#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "orekrylov/matrix.hpp"

namespace orekrylov {

struct SmithTriple {
    PolyMatrix U;  // unimodular, rows x rows
    PolyMatrix S;  // diagonal, invariant factors gamma_1 | gamma_2 | ...
    PolyMatrix V;  // unimodular, cols x cols
};

// Smith normal form by gcd-pivot row/column elimination: U * A * V = S with
// monic invariant factors on the diagonal forming a divisibility chain.
inline SmithTriple smith_normal_form(const PolyMatrix& a) {
    const int n = a.rows();
    const int p = a.cols();
    PolyMatrix s = a;
    PolyMatrix u = PolyMatrix::identity(n);
    PolyMatrix v = PolyMatrix::identity(p);

    auto swap_rows = [&](int i, int j) {
        if (i == j) return;
        for (int c = 0; c < p; ++c) std::swap(s.at(i, c), s.at(j, c));
        for (int c = 0; c < n; ++c) std::swap(u.at(i, c), u.at(j, c));
    };
    auto swap_cols = [&](int i, int j) {
        if (i == j) return;
        for (int r = 0; r < n; ++r) std::swap(s.at(r, i), s.at(r, j));
        for (int r = 0; r < p; ++r) std::swap(v.at(r, i), v.at(r, j));
    };
    auto row_sub = [&](int i, int j, const Poly& q) {  // row_i -= q * row_j
        for (int c = 0; c < p; ++c) s.at(i, c) -= q * s.at(j, c);
        for (int c = 0; c < n; ++c) u.at(i, c) -= q * u.at(j, c);
    };
    auto col_sub = [&](int i, int j, const Poly& q) {  // col_i -= q * col_j
        for (int r = 0; r < n; ++r) s.at(r, i) -= q * s.at(r, j);
        for (int r = 0; r < p; ++r) v.at(r, i) -= q * v.at(r, j);
    };
    auto row_add = [&](int i, int j) {  // row_i += row_j
        for (int c = 0; c < p; ++c) s.at(i, c) += s.at(j, c);
        for (int c = 0; c < n; ++c) u.at(i, c) += u.at(j, c);
    };

    const int steps = std::min(n, p);
    for (int t = 0; t < steps; ++t) {
        while (true) {
            // minimal-degree nonzero pivot in the trailing block
            int pi = -1, pj = -1;
            for (int i = t; i < n; ++i)
                for (int j = t; j < p; ++j)
                    if (!s.at(i, j).is_zero() &&
                        (pi < 0 || s.at(i, j).degree() < s.at(pi, pj).degree())) {
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) return {u, s, v};  // trailing block is zero
            swap_rows(t, pi);
            swap_cols(t, pj);

            bool clean = true;
            for (int i = t + 1; i < n; ++i) {
                if (s.at(i, t).is_zero()) continue;
                auto [q, r] = divrem(s.at(i, t), s.at(t, t));
                row_sub(i, t, q);
                if (!r.is_zero()) clean = false;
            }
            for (int j = t + 1; j < p; ++j) {
                if (s.at(t, j).is_zero()) continue;
                auto [q, r] = divrem(s.at(t, j), s.at(t, t));
                col_sub(j, t, q);
                if (!r.is_zero()) clean = false;
            }
            if (!clean) continue;  // smaller-degree remainders became new pivots

            // enforce divisibility of the trailing block by the pivot
            bool divisible = true;
            for (int i = t + 1; i < n && divisible; ++i)
                for (int j = t + 1; j < p && divisible; ++j) {
                    auto [q, r] = divrem(s.at(i, j), s.at(t, t));
                    (void)q;
                    if (!r.is_zero()) {
                        row_add(t, i);
                        divisible = false;
                    }
                }
            if (divisible) break;
        }
    }
    // monic normalization (constant row scalings keep U unimodular)
    for (int t = 0; t < steps; ++t) {
        if (s.at(t, t).is_zero()) continue;
        Rat inv = Rat(1) / s.at(t, t).leading();
        for (int c = 0; c < p; ++c) s.at(t, c) = inv * s.at(t, c);
        for (int c = 0; c < n; ++c) u.at(t, c) = inv * u.at(t, c);
    }
    return {u, s, v};
}

struct SmithMcMillanForm {
    int rank = 0;
    std::vector<Poly> eps;  // eps_i | eps_{i+1}
    std::vector<Poly> psi;  // psi_{i+1} | psi_i, gcd(eps_i, psi_i) = 1
};

// Monic least common denominator of the entries of R (phi_1).
inline Poly common_denominator(const RatMatrix& r) {
    Poly phi(1);
    for (int i = 0; i < r.rows(); ++i)
        for (int j = 0; j < r.cols(); ++j) phi = poly_lcm(phi, r.at(i, j).den());
    return phi;
}

inline SmithMcMillanForm smith_mcmillan(const RatMatrix& r) {
    const Poly phi1 = common_denominator(r);
    PolyMatrix n = r.map<Poly>([&](const RatFunc& f) {
        return f.num() * (phi1 / f.den());
    });
    SmithTriple snf = smith_normal_form(n);
    SmithMcMillanForm out;
    const int steps = std::min(n.rows(), n.cols());
    for (int i = 0; i < steps; ++i) {
        const Poly& gamma = snf.S.at(i, i);
        if (gamma.is_zero()) break;
        Poly g = poly_gcd(gamma, phi1);
        out.eps.push_back((gamma / g).monic());
        out.psi.push_back((phi1 / g).monic());
        ++out.rank;
    }
    return out;
}

inline RatMatrix smith_mcmillan_reconstruct(const SmithMcMillanForm& f, int rows, int cols) {
    RatMatrix s(rows, cols);
    for (int i = 0; i < f.rank; ++i)
        s.at(i, i) = RatFunc(f.eps[std::size_t(i)], f.psi[std::size_t(i)]);
    return s;
}

// [phi_0, phi_1, ..., phi_r] with phi_l = psi_1 ... psi_l; stops at the rank.
inline std::vector<Poly> determinantal_denominators(const RatMatrix& r) {
    SmithMcMillanForm f = smith_mcmillan(r);
    std::vector<Poly> phis{Poly(1)};
    Poly acc(1);
    for (int i = 0; i < f.rank; ++i) {
        acc = acc * f.psi[std::size_t(i)];
        phis.push_back(acc);
    }
    return phis;
}

inline bool is_proper(const RatMatrix& r) {
    for (int i = 0; i < r.rows(); ++i)
        for (int j = 0; j < r.cols(); ++j)
            if (!r.at(i, j).is_proper()) return false;
    return true;
}

// Entrywise split R = W + R_o with W polynomial and R_o strictly proper.
inline std::pair<PolyMatrix, RatMatrix> split_polynomial_part(const RatMatrix& r) {
    PolyMatrix w(r.rows(), r.cols());
    RatMatrix ro(r.rows(), r.cols());
    for (int i = 0; i < r.rows(); ++i)
        for (int j = 0; j < r.cols(); ++j) {
            auto [q, proper] = r.at(i, j).split_polynomial_part();
            w.at(i, j) = q;
            ro.at(i, j) = proper;
        }
    return {w, ro};
}

// Entrywise substitution x -> 1/x of a polynomial matrix; the result is proper.
inline RatMatrix substitute_one_over_x(const PolyMatrix& w) {
    return w.map<RatFunc>([](const Poly& p) {
        if (p.is_zero()) return RatFunc();
        return RatFunc(p.reversed(), Poly::x(p.degree()));
    });
}

inline int degree_of_last_phi(const RatMatrix& proper) {
    std::vector<Poly> phis = determinantal_denominators(proper);
    return phis.back().is_one() ? 0 : phis.back().degree();
}

// McMillan degree via the strictly-proper / polynomial split.
inline int mcmillan_degree(const RatMatrix& r) {
    auto [w, ro] = split_polynomial_part(r);
    int deg = degree_of_last_phi(ro);
    bool w_zero = true;
    for (const Poly& p : w.entries())
        if (!p.is_zero()) w_zero = false;
    if (!w_zero) deg += degree_of_last_phi(substitute_one_over_x(w));
    return deg;
}

inline RatMatrix mobius_substitute(const RatMatrix& r, const Mobius& mu) {
    return r.map<RatFunc>([&](const RatFunc& f) { return mobius_substitute(f, mu); });
}

inline RatMatrix shift_matrix(const RatMatrix& r, long steps = 1) {
    return r.map<RatFunc>([&](const RatFunc& f) { return apply_shift(f, steps); });
}

// Random mu = (a x + b)/(c x + d) with small integer entries making every
// member of the family proper. A valid mu always exists (properness only
// fails when mu(inf) = a/c hits one of the finitely many poles), so budget
// exhaustion signals an implementation bug.
inline Mobius find_proper_mobius(const std::vector<RatMatrix>& family,
                                 std::uint64_t seed = 0x0511f0c5u) {
    if (family.empty()) throw std::invalid_argument("empty matrix family");
    std::mt19937_64 rng(mix_seed(seed));
    auto draw = [&]() { return static_cast<long>(rng() % 41) - 20; };
    for (int attempt = 0; attempt < 200; ++attempt) {
        long a = draw(), b = draw(), c = draw(), d = draw();
        if (c == 0 || a * d - b * c == 0) continue;
        Mobius mu{Rat(a), Rat(b), Rat(c), Rat(d)};
        bool ok = true;
        for (const RatMatrix& m : family) {
            if (!is_proper(mobius_substitute(m, mu))) {
                ok = false;
                break;
            }
        }
        if (ok) return mu;
    }
    throw std::runtime_error("no properness-inducing Mobius transformation found");
}

// McMillan degree through the Kalman change of variables; must agree with
// mcmillan_degree on every input.
inline int mcmillan_degree_via_mobius(const RatMatrix& r, std::uint64_t seed = 0x0511f0c5u) {
    Mobius mu = find_proper_mobius({r}, seed);
    return degree_of_last_phi(mobius_substitute(r, mu));
}

// Max degree over minors of size exactly rank(A).
inline int minor_degree(const PolyMatrix& a) {
    bool zero = true;
    for (const Poly& p : a.entries())
        if (!p.is_zero()) zero = false;
    if (zero) throw std::domain_error("minor degree of zero matrix");
    const int r = rank(to_rat_matrix(a));
    int best = Poly::kNegInf;
    for (const auto& ri : index_subsets(a.rows(), r))
        for (const auto& ci : index_subsets(a.cols(), r)) {
            Poly d = poly_det(a.submatrix(ri, ci));
            if (!d.is_zero()) best = std::max(best, d.degree());
        }
    return best;
}

template <class T>
Mat<T> field_inverse(Mat<T> m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    const int n = m.rows();
    Mat<T> aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = T(1);
    }
    std::vector<int> piv = row_echelon(aug);
    if (static_cast<int>(piv.size()) != n || piv[std::size_t(n) - 1] != n - 1)
        throw std::domain_error("singular matrix");
    Mat<T> inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

// R = X * M^{-1} * Y with M nonsingular polynomial.
struct Realisation {
    PolyMatrix X, M, Y;

    RatMatrix reconstruct() const {
        RatMatrix m = to_rat_matrix(M);
        RatMatrix inv = field_inverse(m);
        return to_rat_matrix(X) * inv * to_rat_matrix(Y);
    }
};

// deg det M; an upper bound for deg phi_l(X M^{-1} Y) for every l.
inline int realisation_degree_bound(const Realisation& r) {
    Poly d = poly_det(r.M);
    if (d.is_zero()) throw std::domain_error("singular realisation denominator");
    return d.degree();
}

}  // namespace orekrylov
