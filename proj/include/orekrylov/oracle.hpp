#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "orekrylov/bivar.hpp"
#include "orekrylov/pseudokrylov.hpp"

namespace orekrylov {

struct SeriesBasis {
    std::vector<TruncSeries> basis;
    long shift = 0;  // series are around x = shift
};

// Power-series solution basis of a differential operator (usual derivation) at
// an ordinary point, by unrolling the coefficient recurrence directly. If 0 is
// not ordinary the expansion point is moved to the smallest c in 1..50 with
// nonvanishing leading coefficient.
inline SeriesBasis series_solution_basis(const OrePoly& l, int n) {
    if (!l.kind().is_diff() || !l.kind().p().is_one())
        throw std::invalid_argument("series basis needs the usual derivation");
    if (l.is_zero() || l.order() < 1)
        throw std::invalid_argument("operator must have positive order");
    if (n < 1) throw std::invalid_argument("precision must be positive");
    const int r = l.order();
    std::vector<Poly> p = cleared_coefficients(l);

    long shift = 0;
    while (p[std::size_t(r)].eval(Rat(0)) == 0) {
        if (++shift > 50) throw std::domain_error("no ordinary point found within shift budget");
        for (Poly& q : p) q = q.shift(Rat(1));
    }

    SeriesBasis out;
    out.shift = shift;
    for (int b = 0; b < r && b < n; ++b) {
        std::vector<Rat> u(static_cast<std::size_t>(n));
        u[std::size_t(b)] = 1;
        for (int t = r; t < n; ++t) {
            // coefficient of x^{t-r} in L(u): sum over i, j of
            // p_{i,j} * ff(t-r-j+i, i) * u_{t-r-j+i}
            const int m = t - r;
            Rat rest(0);
            Rat lead(0);
            for (int i = 0; i <= r; ++i) {
                const Poly& pi = p[std::size_t(i)];
                for (int j = 0; j <= pi.degree(); ++j) {
                    if (pi.coeff(j) == 0) continue;
                    const int idx = m - j + i;
                    if (idx < 0 || idx >= n) continue;
                    Rat ff(1);
                    for (int f = 0; f < i; ++f) ff *= Rat(idx - f);
                    if (ff == 0) continue;
                    if (idx == t)
                        lead += pi.coeff(j) * ff;
                    else
                        rest += pi.coeff(j) * ff * u[std::size_t(idx)];
                }
            }
            if (lead == 0) throw std::logic_error("singular recurrence at an ordinary point");
            u[std::size_t(t)] = -rest / lead;
        }
        out.basis.emplace_back(std::move(u));
    }
    return out;
}

// Unroll the recurrence of a shift operator from the given initial values.
inline std::vector<Rat> sequence_solution(const OrePoly& l, const std::vector<Rat>& init, int n) {
    if (!l.kind().is_shift()) throw std::invalid_argument("sequence solution needs Shift kind");
    if (l.is_zero() || l.order() < 1)
        throw std::invalid_argument("operator must have positive order");
    const int r = l.order();
    if (static_cast<int>(init.size()) != r)
        throw std::invalid_argument("initial segment length must equal the order");
    std::vector<Poly> p = cleared_coefficients(l);
    std::vector<Rat> u = init;
    u.resize(std::size_t(std::max(n, r)));
    for (int k = 0; k + r < n; ++k) {
        const Rat lead = p[std::size_t(r)].eval(Rat(k));
        if (lead == 0) throw std::domain_error("leading coefficient vanishes at an unroll point");
        Rat acc(0);
        for (int i = 0; i < r; ++i) acc += p[std::size_t(i)].eval(Rat(k)) * u[std::size_t(k + i)];
        u[std::size_t(k + r)] = -acc / lead;
    }
    u.resize(std::size_t(n));
    return u;
}

namespace detail {

// P(x, g) for a truncated series g
inline TruncSeries bivar_eval_series(const BivarPoly& p, const TruncSeries& g) {
    TruncSeries acc(g.prec());
    for (int i = p.deg_y(); i >= 0; --i)
        acc = acc * g + TruncSeries::from_poly(p.coeff(i), g.prec());
    return acc;
}

}  // namespace detail

// Newton iteration for the series root of P starting from a simple root y0 at
// x = 0, doubling the precision each step.
inline TruncSeries newton_algebraic_series(const BivarPoly& p, const Rat& y0, int n) {
    if (n < 1) throw std::invalid_argument("precision must be positive");
    if (p.eval_y(RatFunc(Rat(y0))).num().eval(Rat(0)) != 0)
        throw std::domain_error("y0 is not a root of P(0, y)");
    BivarPoly py = p.dy();
    if (py.eval_y(RatFunc(Rat(y0))).num().eval(Rat(0)) == 0)
        throw std::domain_error("no simple root available");

    TruncSeries g = TruncSeries::constant(y0, 1);
    int prec = 1;
    while (prec < n) {
        prec = std::min(2 * prec, n);
        // re-expand at the higher precision; padding with zeros is correct
        // because g is exact mod x^{prec/2}
        std::vector<Rat> c(static_cast<std::size_t>(prec));
        for (int i = 0; i < g.prec(); ++i) c[std::size_t(i)] = g.coeff(i);
        g = TruncSeries(std::move(c));
        TruncSeries val = detail::bivar_eval_series(p, g);
        TruncSeries der = detail::bivar_eval_series(py, g);
        g = g - val * der.inverted();
    }
    if (!detail::bivar_eval_series(p, g).is_zero())
        throw std::logic_error("Newton iteration failed to converge");
    return g;
}

namespace detail {

// plain rank over k(x), no fraction-free machinery
inline int plain_rank(RatMatrix m) {
    int rk = 0;
    for (int col = 0; col < m.cols() && rk < m.rows(); ++col) {
        int piv = -1;
        for (int i = rk; i < m.rows(); ++i)
            if (!m.at(i, col).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        for (int j = 0; j < m.cols(); ++j) std::swap(m.at(rk, j), m.at(piv, j));
        const RatFunc inv = RatFunc(1) / m.at(rk, col);
        for (int j = 0; j < m.cols(); ++j) m.at(rk, j) = inv * m.at(rk, j);
        for (int i = 0; i < m.rows(); ++i) {
            if (i == rk || m.at(i, col).is_zero()) continue;
            const RatFunc f = m.at(i, col);
            for (int j = 0; j < m.cols(); ++j) m.at(i, j) -= f * m.at(rk, j);
        }
        ++rk;
    }
    return rk;
}

// cleared polynomial rows of K together with the max entry degree
struct ClearedRows {
    std::vector<std::vector<Poly>> rows;
    int maxdeg = 0;
};

inline ClearedRows clear_rows(const RatMatrix& k) {
    ClearedRows out;
    out.rows.assign(static_cast<std::size_t>(k.rows()),
                    std::vector<Poly>(static_cast<std::size_t>(k.cols())));
    for (int i = 0; i < k.rows(); ++i) {
        Poly l(1);
        for (int j = 0; j < k.cols(); ++j) l = poly_lcm(l, k.at(i, j).den());
        for (int j = 0; j < k.cols(); ++j) {
            out.rows[std::size_t(i)][std::size_t(j)] = k.at(i, j).num() * (l / k.at(i, j).den());
            out.maxdeg = std::max(out.maxdeg, out.rows[std::size_t(i)][std::size_t(j)].degree());
        }
    }
    return out;
}

// Modular prescreen: if the coefficient system has full column rank mod p,
// it has full column rank over Q and there is no kernel vector at this
// degree. (Rank can only drop under reduction mod p, never grow.)
inline bool plain_kernel_possible(const ClearedRows& kp, int delta) {
    static constexpr std::uint64_t p = 2305843009213693951ull;  // 2^61 - 1
    auto modval = [&](const Rat& v) -> std::uint64_t {
        Int num = v.get_num() % Int(p);
        Int den = v.get_den() % Int(p);
        if (num < 0) num += Int(p);
        Int inv;
        if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), Int(p).get_mpz_t()) == 0)
            return p;  // unlucky prime marker
        Int r = (num * inv) % Int(p);
        return static_cast<std::uint64_t>(mpz_get_ui(r.get_mpz_t()));
    };
    const int rows = static_cast<int>(kp.rows.size());
    const int cols = static_cast<int>(kp.rows.empty() ? 0 : kp.rows[0].size());
    const int unknowns = cols * (delta + 1);
    const int eqs = rows * (kp.maxdeg + delta + 1);
    if (unknowns > eqs) return true;
    std::vector<std::vector<std::uint64_t>> a(
        static_cast<std::size_t>(eqs), std::vector<std::uint64_t>(static_cast<std::size_t>(unknowns), 0));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const Poly& e = kp.rows[std::size_t(i)][std::size_t(j)];
            for (int de = 0; de <= e.degree(); ++de) {
                const std::uint64_t v = modval(e.coeff(de));
                if (v == p) return true;  // could not reduce, fall back to exact
                if (v == 0) continue;
                for (int du = 0; du <= delta; ++du) {
                    std::uint64_t& slot = a[std::size_t(i * (kp.maxdeg + delta + 1) + de + du)]
                                           [std::size_t(j * (delta + 1) + du)];
                    slot = (slot + v) % p;
                }
            }
        }
    // column rank mod p via 128-bit modular elimination
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
            if (a[std::size_t(i)][std::size_t(col)] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return true;  // rank deficit mod p: kernel plausible
        std::swap(a[std::size_t(rk)], a[std::size_t(piv)]);
        const std::uint64_t inv = invmod(a[std::size_t(rk)][std::size_t(col)]);
        for (int j = col; j < unknowns; ++j)
            a[std::size_t(rk)][std::size_t(j)] = mulmod(inv, a[std::size_t(rk)][std::size_t(j)]);
        for (int i = rk + 1; i < eqs; ++i) {
            const std::uint64_t f = a[std::size_t(i)][std::size_t(col)];
            if (f == 0) continue;
            for (int j = col; j < unknowns; ++j) {
                std::uint64_t sub = mulmod(f, a[std::size_t(rk)][std::size_t(j)]);
                std::uint64_t& slot = a[std::size_t(i)][std::size_t(j)];
                slot = (slot >= sub) ? slot - sub : slot + p - sub;
            }
        }
        ++rk;
    }
    return false;  // full column rank mod p: certified no kernel over Q
}

// self-contained Gauss-Jordan kernel search over Q for a polynomial kernel
// vector of K with all component degrees <= delta; empty if none
inline std::vector<Poly> plain_poly_kernel(const ClearedRows& kp, int delta) {
    const int rows = static_cast<int>(kp.rows.size());
    const int cols = static_cast<int>(kp.rows.empty() ? 0 : kp.rows[0].size());
    const int maxdeg = kp.maxdeg;
    // unknowns: coefficient vectors of eta_j, degree <= delta
    const int unknowns = cols * (delta + 1);
    const int eqs = rows * (maxdeg + delta + 1);
    std::vector<std::vector<Rat>> a(static_cast<std::size_t>(eqs), std::vector<Rat>(static_cast<std::size_t>(unknowns)));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const Poly& e = kp.rows[std::size_t(i)][std::size_t(j)];
            for (int de = 0; de <= e.degree(); ++de)
                for (int du = 0; du <= delta; ++du)
                    a[std::size_t(i * (maxdeg + delta + 1) + de + du)]
                     [std::size_t(j * (delta + 1) + du)] += e.coeff(de);
        }
    // Gauss-Jordan; record pivot columns
    std::vector<int> pivot_of_col(static_cast<std::size_t>(unknowns), -1);
    int rk = 0;
    for (int col = 0; col < unknowns && rk < eqs; ++col) {
        int piv = -1;
        for (int i = rk; i < eqs; ++i)
            if (a[std::size_t(i)][std::size_t(col)] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[std::size_t(rk)], a[std::size_t(piv)]);
        const Rat inv = Rat(1) / a[std::size_t(rk)][std::size_t(col)];
        for (int j = 0; j < unknowns; ++j) a[std::size_t(rk)][std::size_t(j)] *= inv;
        for (int i = 0; i < eqs; ++i) {
            if (i == rk || a[std::size_t(i)][std::size_t(col)] == 0) continue;
            const Rat f = a[std::size_t(i)][std::size_t(col)];
            for (int j = 0; j < unknowns; ++j)
                a[std::size_t(i)][std::size_t(j)] -= f * a[std::size_t(rk)][std::size_t(j)];
        }
        pivot_of_col[std::size_t(col)] = rk;
        ++rk;
    }
    // first free column gives a kernel vector
    for (int col = 0; col < unknowns; ++col) {
        if (pivot_of_col[std::size_t(col)] >= 0) continue;
        std::vector<Rat> sol(static_cast<std::size_t>(unknowns));
        sol[std::size_t(col)] = 1;
        for (int c2 = 0; c2 < unknowns; ++c2) {
            const int pr = pivot_of_col[std::size_t(c2)];
            if (pr >= 0) sol[std::size_t(c2)] = -a[std::size_t(pr)][std::size_t(col)];
        }
        std::vector<Poly> eta(static_cast<std::size_t>(cols));
        for (int j = 0; j < cols; ++j) {
            std::vector<Rat> cv(static_cast<std::size_t>(delta) + 1);
            for (int du = 0; du <= delta; ++du) cv[std::size_t(du)] = sol[std::size_t(j * (delta + 1) + du)];
            eta[std::size_t(j)] = Poly(std::move(cv));
        }
        return eta;
    }
    return {};
}

}  // namespace detail

// Unstructured reference path for Problem 1: plain elimination for the first
// dependency, exhaustive degree sweep for the minimal-degree kernel vector.
inline Relation brute_force_relation(const PseudoLinearMap& theta, const KrylovSeed& seed) {
    if (seed.is_zero()) throw std::invalid_argument("zero Krylov seed");
    int rho = -1;
    for (int m = 0; m <= theta.dim(); ++m) {
        RatMatrix k = krylov_matrix(theta, seed, m);
        if (detail::plain_rank(k) < m + 1) {
            rho = m;
            break;
        }
    }
    if (rho < 0) throw std::logic_error("no dependency within the ambient dimension");
    const detail::ClearedRows kp = detail::clear_rows(krylov_matrix(theta, seed, rho));
    for (int delta = 0; delta <= 2000; ++delta) {
        if (!detail::plain_kernel_possible(kp, delta)) continue;
        std::vector<Poly> eta = detail::plain_poly_kernel(kp, delta);
        if (!eta.empty()) return make_relation(std::move(eta));
    }
    throw std::logic_error("degree sweep exhausted");
}

// φ_rank by brute minor enumeration; the McMillan degree is its degree plus
// the pole order at infinity, read off after x -> 1/x.
namespace detail {

inline Poly minor_denominator_lcm(const RatMatrix& r) {
    Poly acc(1);
    const int n = std::min(r.rows(), r.cols());
    for (int size = 1; size <= n; ++size)
        for (const auto& rows : index_subsets(r.rows(), size))
            for (const auto& cols : index_subsets(r.cols(), size)) {
                RatFunc d = field_det(r.submatrix(rows, cols));
                if (!d.is_zero()) acc = poly_lcm(acc, d.den());
            }
    return acc;
}

}  // namespace detail

inline int mcmillan_degree_minor_oracle(const RatMatrix& r) {
    const Poly phi = detail::minor_denominator_lcm(r);
    RatMatrix rinv = r.map<RatFunc>([](const RatFunc& f) {
        if (f.is_zero()) return RatFunc();
        const int dn = f.num().degree();
        const int dd = f.den().degree();
        if (dd >= dn) return RatFunc(f.num().reversed() * Poly::x(dd - dn), f.den().reversed());
        return RatFunc(f.num().reversed(), f.den().reversed() * Poly::x(dn - dd));
    });
    const Poly phi_inf = detail::minor_denominator_lcm(rinv);
    return std::max(phi.degree(), 0) + multiplicity(phi_inf, Poly::x());
}

// L(f) for f = p/q with q square-free in y: remainder of the Hermite reduction
// must vanish; the accumulated certificate h satisfies L(f) = dy(h).
struct TelescoperCheck {
    bool ok = false;
    YRat certificate;
};

inline TelescoperCheck verify_telescoper(const OrePoly& l, const BivarPoly& p,
                                         const BivarPoly& q) {
    if (!l.kind().is_diff() || !l.kind().p().is_one())
        throw std::invalid_argument("telescoper must use the usual derivation");
    if (l.is_zero()) throw std::invalid_argument("zero operator");
    const int r = l.order();
    // f^{(i)} = n_i / q^{i+1} with n_{i+1} = dx(n_i) q - (i+1) n_i q_x
    std::vector<BivarPoly> nums{p};
    BivarPoly qx = q.dx();
    for (int i = 0; i < r; ++i)
        nums.push_back(nums.back().dx() * q - BivarPoly(Poly(Rat(i + 1))) * nums.back() * qx);
    // L(f) = (sum_i c_i n_i q^{r-i}) / q^{r+1}
    YPoly num;
    YPoly qy = q.to_ypoly();
    for (int i = 0; i <= r; ++i) {
        if (l.coeff(i).is_zero()) continue;
        YPoly t = nums[std::size_t(i)].to_ypoly();
        for (int e = 0; e < r - i; ++e) t = t * qy;
        num += l.coeff(i) * t;
    }
    TelescoperCheck out;
    if (num.is_zero()) {
        out.ok = true;
        return out;
    }
    HermiteResult h = hermite_reduce(num, qy, r + 1);
    out.ok = h.r.is_zero();
    out.certificate = h.cert;
    return out;
}

}  // namespace orekrylov
