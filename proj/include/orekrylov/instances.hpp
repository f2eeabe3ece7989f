#pragma once

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "orekrylov/bivar.hpp"
#include "orekrylov/pseudokrylov.hpp"

namespace orekrylov {

struct InstanceReport {
    OrePoly op;            // polynomial coefficients, content-free, sign-normalized
    int order = 0;         // rho
    int degree = 0;        // max coefficient degree
    int bound = 0;         // theorem degree bound at m = rho
    int degmm_T = 0;       // computed McMillan degree of T
    int degmm_T_bound = 0; // closed-form bound for degMM(T)
    double elapsed_ms = 0;
    std::string notes;
    // underlying map and seed where a single pseudo-Krylov solve produced the
    // operator; absent for combined or shortcut constructions
    std::optional<PseudoLinearMap> theta;
    std::optional<KrylovSeed> krylov_seed;

    InstanceReport() : op(OreKind::diff()) {}
};

// (actual, bound) for degMM(T); the inequality is asserted.
inline std::pair<int, int> instance_degmm_report(const InstanceReport& rep) {
    if (rep.degmm_T > rep.degmm_T_bound)
        throw std::logic_error("McMillan degree exceeds its closed-form bound");
    return {rep.degmm_T, rep.degmm_T_bound};
}

namespace detail {

class Stopwatch {
  public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration<double, std::milli>(d).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

// fills op/order/degree from a solved relation and checks the degree bound
inline void finish_report(InstanceReport& rep, const Relation& rel, const OreKind& kind,
                          int bound, const Stopwatch& sw) {
    rep.op = ore_normalized(relation_to_operator(rel, kind));
    rep.order = rel.order;
    rep.degree = std::max(ore_degree(rep.op), 0);
    rep.bound = bound;
    rep.elapsed_ms = sw.ms();
    if (rep.degree > rep.bound) throw std::logic_error("operator degree exceeds theorem bound");
}

}  // namespace detail

// Companion matrix of L in cleared polynomial form: subdiagonal ones, last
// column -p_j/p_r. Shared by every closure construction.
inline RatMatrix companion_matrix(const OrePoly& l) {
    const int r = l.order();
    if (r < 1) throw std::invalid_argument("operator of order zero has no companion matrix");
    std::vector<Poly> p = cleared_coefficients(l);
    RatMatrix c(r, r);
    for (int j = 0; j + 1 < r; ++j) c.at(j + 1, j) = RatFunc(1);
    for (int j = 0; j < r; ++j) c.at(j, r - 1) = -RatFunc(p[std::size_t(j)], p[std::size_t(r)]);
    return c;
}

// ---- LCLM ----

inline InstanceReport lclm(const std::vector<OrePoly>& ls) {
    if (ls.empty()) throw std::invalid_argument("empty operator list");
    detail::Stopwatch sw;
    const OreKind kind = ls[0].kind();
    int n = 0;
    int dmax = 0;
    for (const OrePoly& l : ls) {
        if (l.kind() != kind) throw std::invalid_argument("Ore kind mismatch");
        if (l.is_zero() || l.order() < 1)
            throw std::invalid_argument("operators must have positive order");
        n += l.order();
        dmax = std::max(dmax, std::max(ore_degree(l), 0));
    }
    const int s = static_cast<int>(ls.size());
    const int degmm_bound = s * dmax;

    RatMatrix t(n, n);
    KrylovSeed seed;
    seed.a.assign(std::size_t(n), Poly());
    int off = 0;
    for (const OrePoly& l : ls) {
        RatMatrix c = companion_matrix(l);
        for (int i = 0; i < c.rows(); ++i)
            for (int j = 0; j < c.cols(); ++j) t.at(off + i, off + j) = c.at(i, j);
        seed.a[std::size_t(off)] = Poly(1);
        off += l.order();
    }

    PseudoLinearMap theta(kind, t);
    Relation rel = min_relation(theta, seed);
    InstanceReport rep;
    rep.degmm_T = theta.degmm_T();
    rep.theta = theta;
    rep.krylov_seed = seed;
    rep.degmm_T_bound = degmm_bound;
    instance_degmm_report(rep);
    detail::finish_report(rep, rel, kind, s * rel.order * dmax, sw);
    return rep;
}

// ---- symmetric product ----

inline InstanceReport symmetric_product(const std::vector<OrePoly>& ls) {
    if (ls.empty()) throw std::invalid_argument("empty operator list");
    detail::Stopwatch sw;
    const OreKind kind = ls[0].kind();
    std::vector<RatMatrix> comps;
    std::vector<int> rs, ds;
    for (const OrePoly& l : ls) {
        if (l.kind() != kind) throw std::invalid_argument("Ore kind mismatch");
        if (l.is_zero() || l.order() < 1)
            throw std::invalid_argument("operators must have positive order");
        comps.push_back(companion_matrix(l));
        rs.push_back(l.order());
        ds.push_back(std::max(ore_degree(l), 0));
    }
    const int s = static_cast<int>(ls.size());
    int big_r = 1;
    for (int r : rs) big_r *= r;

    RatMatrix t;
    if (kind.is_diff()) {
        // sum of I x ... x C_i x ... x I
        t = RatMatrix(big_r, big_r);
        for (int i = 0; i < s; ++i) {
            RatMatrix term = RatMatrix::identity(1);
            for (int j = 0; j < s; ++j)
                term = kron(term, j == i ? comps[std::size_t(j)]
                                         : RatMatrix::identity(rs[std::size_t(j)]));
            t = t + term;
        }
    } else {
        // every factor index shifts at once
        t = RatMatrix::identity(1);
        for (int i = 0; i < s; ++i) t = kron(t, comps[std::size_t(i)]);
    }

    // degMM(T) <= sum_i d_i prod_{j != i} r_j, for both kinds
    int degmm_bound = 0;
    int coeff_bound = 0;  // same quantity, reused for the degree bound
    for (int i = 0; i < s; ++i) {
        int prod = 1;
        for (int j = 0; j < s; ++j)
            if (j != i) prod *= rs[std::size_t(j)];
        degmm_bound += ds[std::size_t(i)] * prod;
    }
    coeff_bound = degmm_bound;

    KrylovSeed seed;
    seed.a.assign(std::size_t(big_r), Poly());
    seed.a[0] = Poly(1);
    PseudoLinearMap theta(kind, t);
    Relation rel = min_relation(theta, seed);
    InstanceReport rep;
    rep.degmm_T = theta.degmm_T();
    rep.theta = theta;
    rep.krylov_seed = seed;
    rep.degmm_T_bound = degmm_bound;
    instance_degmm_report(rep);
    detail::finish_report(rep, rel, kind, rel.order * coeff_bound, sw);
    return rep;
}

// ---- polynomial closure ----

// Monomial in x and the variables y_{i,j} (j = derivative or shift order of
// the i-th solution); exps[i] is the sorted multiset of orders used from
// group i, so |exps[i]| is the degree in that group of variables.
struct ClosureTerm {
    Poly coeff;
    std::vector<std::vector<int>> exps;
};

struct ClosurePoly {
    int groups = 0;
    std::vector<ClosureTerm> terms;

    bool is_zero() const {
        for (const ClosureTerm& t : terms)
            if (!t.coeff.is_zero()) return false;
        return true;
    }
    int deg_x() const {
        int d = 0;
        for (const ClosureTerm& t : terms)
            if (!t.coeff.is_zero()) d = std::max(d, std::max(t.coeff.degree(), 0));
        return d;
    }
};

namespace detail {

using ExpTuple = std::vector<std::vector<int>>;  // sorted multiset per group

inline ExpTuple canonical_exps(ExpTuple e) {
    for (auto& g : e) std::sort(g.begin(), g.end());
    return e;
}

// all sorted multisets of given size with values in [0, r), graded-lex order
inline void enumerate_multisets(int size, int r, int minval, std::vector<int>& cur,
                                std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == size) {
        out.push_back(cur);
        return;
    }
    for (int v = minval; v < r; ++v) {
        cur.push_back(v);
        enumerate_multisets(size, r, v, cur, out);
        cur.pop_back();
    }
}

inline std::vector<std::vector<int>> group_basis(int k, int r) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    enumerate_multisets(k, r, 0, cur, out);
    std::sort(out.begin(), out.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
        int sa = 0, sb = 0;
        for (int v : a) sa += v;
        for (int v : b) sb += v;
        if (sa != sb) return sa < sb;
        return a < b;
    });
    return out;
}

struct ClosureBasis {
    std::vector<ExpTuple> elements;
    std::map<ExpTuple, int> index;
};

inline ClosureBasis closure_basis(const std::vector<int>& ks, const std::vector<int>& rs) {
    const int s = static_cast<int>(ks.size());
    std::vector<std::vector<std::vector<int>>> per_group;
    for (int i = 0; i < s; ++i)
        per_group.push_back(group_basis(ks[std::size_t(i)], rs[std::size_t(i)]));
    ClosureBasis b;
    ExpTuple cur(static_cast<std::size_t>(s));
    // cartesian product, group 0 outermost
    std::vector<std::size_t> pos(std::size_t(s), 0);
    while (true) {
        for (int i = 0; i < s; ++i) cur[std::size_t(i)] = per_group[std::size_t(i)][pos[std::size_t(i)]];
        b.index[cur] = static_cast<int>(b.elements.size());
        b.elements.push_back(cur);
        int i = s - 1;
        while (i >= 0 && ++pos[std::size_t(i)] == per_group[std::size_t(i)].size()) {
            pos[std::size_t(i)] = 0;
            --i;
        }
        if (i < 0) break;
    }
    return b;
}

// rewriting coefficients: order r maps to sum_j coeff[j] * (order j)
inline std::vector<RatFunc> top_rewrite(const OrePoly& l) {
    std::vector<Poly> p = cleared_coefficients(l);
    const int r = l.order();
    std::vector<RatFunc> out(static_cast<std::size_t>(r));
    for (int j = 0; j < r; ++j)
        out[std::size_t(j)] = -RatFunc(p[std::size_t(j)], p[std::size_t(r)]);
    return out;
}

}  // namespace detail

// Closure instance for a J homogeneous per variable group.
inline InstanceReport closure_homogeneous(const std::vector<ClosureTerm>& terms,
                                          const std::vector<OrePoly>& ls, int deg_x_j) {
    detail::Stopwatch sw;
    const OreKind kind = ls[0].kind();
    const int s = static_cast<int>(ls.size());
    std::vector<int> rs, ds, ks;
    for (const OrePoly& l : ls) {
        rs.push_back(l.order());
        ds.push_back(std::max(ore_degree(l), 0));
    }
    for (int i = 0; i < s; ++i) ks.push_back(static_cast<int>(terms[0].exps[std::size_t(i)].size()));
    std::vector<std::vector<RatFunc>> rewrites;
    for (const OrePoly& l : ls) rewrites.push_back(detail::top_rewrite(l));

    detail::ClosureBasis basis = detail::closure_basis(ks, rs);
    const int big_r = static_cast<int>(basis.elements.size());

    RatMatrix t(big_r, big_r);
    auto add_entry = [&](detail::ExpTuple e, int col, const RatFunc& v) {
        e = detail::canonical_exps(std::move(e));
        t.at(basis.index.at(e), col) += v;
    };

    for (int col = 0; col < big_r; ++col) {
        const detail::ExpTuple& e = basis.elements[std::size_t(col)];
        if (kind.is_diff()) {
            // product rule: raise one order in one slot, rewriting at the top
            for (int i = 0; i < s; ++i)
                for (std::size_t slot = 0; slot < e[std::size_t(i)].size(); ++slot) {
                    const int v = e[std::size_t(i)][slot];
                    detail::ExpTuple raised = e;
                    if (v + 1 < rs[std::size_t(i)]) {
                        raised[std::size_t(i)][slot] = v + 1;
                        add_entry(std::move(raised), col, RatFunc(1));
                    } else {
                        for (int j = 0; j < rs[std::size_t(i)]; ++j) {
                            const RatFunc& c = rewrites[std::size_t(i)][std::size_t(j)];
                            if (c.is_zero()) continue;
                            detail::ExpTuple repl = e;
                            repl[std::size_t(i)][slot] = j;
                            add_entry(std::move(repl), col, c);
                        }
                    }
                }
        } else {
            // every slot shifts by one simultaneously; expand the product of
            // the per-slot rewrites
            std::map<detail::ExpTuple, RatFunc> acc;
            detail::ExpTuple empty(static_cast<std::size_t>(s));
            acc[empty] = RatFunc(1);
            for (int i = 0; i < s; ++i)
                for (std::size_t slot = 0; slot < e[std::size_t(i)].size(); ++slot) {
                    const int v = e[std::size_t(i)][slot];
                    std::map<detail::ExpTuple, RatFunc> next;
                    for (const auto& [part, coeff] : acc) {
                        if (v + 1 < rs[std::size_t(i)]) {
                            detail::ExpTuple grown = part;
                            grown[std::size_t(i)].push_back(v + 1);
                            next[grown] += coeff;
                        } else {
                            for (int j = 0; j < rs[std::size_t(i)]; ++j) {
                                const RatFunc& c = rewrites[std::size_t(i)][std::size_t(j)];
                                if (c.is_zero()) continue;
                                detail::ExpTuple grown = part;
                                grown[std::size_t(i)].push_back(j);
                                next[grown] += coeff * c;
                            }
                        }
                    }
                    acc = std::move(next);
                }
            for (const auto& [tuple, coeff] : acc)
                if (!coeff.is_zero()) add_entry(tuple, col, coeff);
        }
    }

    KrylovSeed seed;
    seed.a.assign(std::size_t(big_r), Poly());
    for (const ClosureTerm& term : terms) {
        detail::ExpTuple e = detail::canonical_exps(term.exps);
        seed.a[std::size_t(basis.index.at(e))] =
            seed.a[std::size_t(basis.index.at(e))] + term.coeff;
    }

    // degMM(T) <= R sum_i k_i d_i / (k_i + r_i - 1)
    Rat degmm_bound(0);
    for (int i = 0; i < s; ++i) {
        if (ks[std::size_t(i)] == 0) continue;
        degmm_bound += make_rat(long(big_r) * ks[std::size_t(i)] * ds[std::size_t(i)],
                                long(ks[std::size_t(i)]) + rs[std::size_t(i)] - 1);
    }

    PseudoLinearMap theta(kind, t);
    Relation rel = min_relation(theta, seed);
    InstanceReport rep;
    rep.degmm_T = theta.degmm_T();
    rep.theta = theta;
    rep.krylov_seed = seed;
    rep.degmm_T_bound = static_cast<int>(floor_rat(degmm_bound));
    instance_degmm_report(rep);
    const long bound = floor_rat(Rat(rel.order) * Rat(deg_x_j) + Rat(rel.order) * degmm_bound);
    detail::finish_report(rep, rel, kind, static_cast<int>(bound), sw);
    return rep;
}

inline InstanceReport polynomial_closure(const ClosurePoly& j, const std::vector<OrePoly>& ls) {
    if (j.is_zero()) throw std::invalid_argument("zero closure polynomial");
    if (ls.empty() || j.groups != static_cast<int>(ls.size()))
        throw std::invalid_argument("variable group count does not match operator count");
    const OreKind kind = ls[0].kind();
    for (const OrePoly& l : ls) {
        if (l.kind() != kind) throw std::invalid_argument("Ore kind mismatch");
        if (l.is_zero() || l.order() < 1)
            throw std::invalid_argument("operators must have positive order");
    }
    for (const ClosureTerm& t : j.terms)
        for (int i = 0; i < j.groups; ++i)
            for (int v : t.exps[std::size_t(i)])
                if (v < 0 || v >= ls[std::size_t(i)].order())
                    throw std::invalid_argument("variable order exceeds operator order");

    // split J into parts homogeneous per variable group
    std::map<std::vector<int>, std::vector<ClosureTerm>> parts;
    for (const ClosureTerm& t : j.terms) {
        if (t.coeff.is_zero()) continue;
        std::vector<int> key;
        for (const auto& g : t.exps) key.push_back(static_cast<int>(g.size()));
        parts[key].push_back(t);
    }

    std::vector<InstanceReport> solved;
    for (const auto& [key, terms] : parts)
        solved.push_back(closure_homogeneous(terms, ls, j.deg_x()));
    if (solved.size() == 1) return solved.front();

    // non-homogeneous J: combine the homogeneous parts with an LCLM
    detail::Stopwatch sw;
    std::vector<OrePoly> part_ops;
    int dmax = 0;
    for (const InstanceReport& r : solved) {
        part_ops.push_back(r.op);
        dmax = std::max(dmax, r.degree);
    }
    InstanceReport rep = lclm(part_ops);
    rep.bound = static_cast<int>(part_ops.size()) * rep.order * dmax;
    rep.elapsed_ms = sw.ms();
    rep.notes = "non-homogeneous: combined " + std::to_string(part_ops.size()) +
                " homogeneous parts via LCLM";
    if (rep.degree > rep.bound) throw std::logic_error("operator degree exceeds theorem bound");
    return rep;
}

inline InstanceReport sym_power(const OrePoly& l, int ell) {
    if (ell < 1) throw std::invalid_argument("power must be positive");
    ClosurePoly j;
    j.groups = 1;
    j.terms.push_back({Poly(1), {std::vector<int>(static_cast<std::size_t>(ell), 0)}});
    return polynomial_closure(j, {l});
}

inline InstanceReport associate(const OrePoly& l, const OrePoly& a) {
    if (a.is_zero() || a.order() >= l.order())
        throw std::invalid_argument("associate operator must have order below the annihilator");
    std::vector<Poly> ac = cleared_coefficients(a);
    ClosurePoly j;
    j.groups = 1;
    for (int i = 0; i <= a.order(); ++i)
        if (!ac[std::size_t(i)].is_zero()) j.terms.push_back({ac[std::size_t(i)], {{i}}});
    return polynomial_closure(j, {l});
}

inline InstanceReport wronskian_annihilator(const std::vector<OrePoly>& ls) {
    const int r = static_cast<int>(ls.size());
    for (const OrePoly& l : ls)
        if (l.order() != r)
            throw std::invalid_argument("Wronskian needs operator orders equal to their count");
    // J = det(y_{i,j-1}): sum over permutations
    ClosurePoly j;
    j.groups = r;
    std::vector<int> perm(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) perm[std::size_t(i)] = i;
    do {
        int sign = 1;
        for (int a = 0; a < r; ++a)
            for (int b = a + 1; b < r; ++b)
                if (perm[std::size_t(a)] > perm[std::size_t(b)]) sign = -sign;
        ClosureTerm t;
        t.coeff = Poly(sign);
        for (int i = 0; i < r; ++i) t.exps.push_back({perm[std::size_t(i)]});
        j.terms.push_back(std::move(t));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return polynomial_closure(j, ls);
}

// ---- differential resolvent ----

// multiplication by g modulo m in the monomial basis of k(x)[y]/(m)
inline RatMatrix multiplication_matrix(const YPoly& g, const YPoly& m) {
    const int r = m.degree();
    RatMatrix out(r, r);
    for (int j = 0; j < r; ++j) {
        YPoly img = ymod(g * YPoly::y(j), m);
        for (int i = 0; i < r; ++i) out.at(i, j) = img.coeff(i);
    }
    return out;
}

inline InstanceReport differential_resolvent(const BivarPoly& p_in) {
    if (p_in.is_zero() || p_in.deg_y() < 1)
        throw std::invalid_argument("polynomial must be nonconstant in y");
    detail::Stopwatch sw;
    InstanceReport rep;
    YPoly py_full = p_in.to_ypoly();
    YPoly p = y_squarefree_part(py_full);
    BivarPoly pb = to_bivar_primitive(p);
    if (p.degree() != py_full.degree())
        rep.notes = "input not square-free in y; square-free part taken";

    const int r = pb.deg_y();
    const int d = std::max(pb.deg_x(), 0);
    const OreKind kind = OreKind::diff();

    if (r == 1) {
        // the root is rational: alpha = -p0/p1, and the resolvent is read off
        // the logarithmic derivative; degree at most 2d before normalization
        const Poly p0 = pb.coeff(0);
        const Poly p1 = pb.coeff(1);
        Relation rel = make_relation({p0.derivative() * p1 - p0 * p1.derivative(), -(p0 * p1)});
        if (p0.is_zero()) rel = make_relation({Poly(), Poly(1)});  // alpha = 0
        rep.degmm_T = 0;
        rep.degmm_T_bound = (2 * r - 1) * d;
        detail::finish_report(rep, rel, kind, 2 * d, sw);
        return rep;
    }

    YPoly ypoly = pb.to_ypoly();
    YPoly px = pb.dx().to_ypoly();
    YPoly py = pb.dy().to_ypoly();
    YPoly pyinv = yinv_mod(py, ypoly);
    YPoly w = ymod(-(px * pyinv), ypoly);

    // T: a -> -dy(a) Px/Py mod P, on the basis (1, y, ..., y^{r-1})
    RatMatrix t(r, r);
    for (int j = 1; j < r; ++j) {
        YPoly img = ymod(RatFunc(Rat(j)) * (w * YPoly::y(j - 1)), ypoly);
        for (int i = 0; i < r; ++i) t.at(i, j) = img.coeff(i);
    }

    KrylovSeed seed;
    seed.a.assign(std::size_t(r), Poly());
    seed.a[1] = Poly(1);  // D_0 = y

    PseudoLinearMap theta(kind, t);
    Relation rel = min_relation(theta, seed);
    rep.degmm_T = theta.degmm_T();
    rep.theta = theta;
    rep.krylov_seed = seed;
    rep.degmm_T_bound = (2 * r - 1) * d;
    instance_degmm_report(rep);
    detail::finish_report(rep, rel, kind, rel.order * (2 * r - 1) * d, sw);
    return rep;
}

// Lemma-style Sylvester realisation T = X M^{-1} Y for the resolvent map;
// used to certify the degMM(T) bound independently.
inline Realisation resolvent_realisation(const BivarPoly& p) {
    const int r = p.deg_y();
    if (r < 2) throw std::invalid_argument("realisation needs degree at least 2 in y");
    BivarPoly py = p.dy();
    BivarPoly px = p.dx();
    // M: (U, V) -> U P + V P_y on k(x)[y]_{<2r-1}, U of y-degree < r-1, V < r
    PolyMatrix m(2 * r - 1, 2 * r - 1);
    for (int j = 0; j < r - 1; ++j)
        for (int i = 0; i <= r; ++i) m.at(i + j, j) = p.coeff(i);
    for (int j = 0; j < r; ++j)
        for (int i = 0; i <= r - 1; ++i) m.at(i + j, r - 1 + j) = py.coeff(i);
    // Y: a -> -dy(a) Px, columnwise from the polynomial product
    PolyMatrix y(2 * r - 1, r);
    for (int j = 1; j < r; ++j) {
        BivarPoly img = BivarPoly(Poly(Rat(-j))) * px * BivarPoly::y(j - 1);
        for (int i = 0; i < 2 * r - 1; ++i) y.at(i, j) = img.coeff(i);
    }
    // X: projection onto the last r coordinates (the V block)
    PolyMatrix x(r, 2 * r - 1);
    for (int i = 0; i < r; ++i) x.at(i, r - 1 + i) = Poly(1);
    return {x, m, y};
}

// ---- composition of algebraic and D-finite functions ----

inline InstanceReport compose_annihilator(const BivarPoly& p, const OrePoly& l) {
    if (p.is_zero() || p.deg_y() < 1)
        throw std::invalid_argument("polynomial must be nonconstant in y");
    if (!l.kind().is_diff() || !l.kind().p().is_one())
        throw std::invalid_argument("operator must be differential with the usual derivation");
    if (l.is_zero() || l.order() < 1)
        throw std::invalid_argument("operator must have positive order");
    detail::Stopwatch sw;

    YPoly py_full = p.to_ypoly();
    if (!y_squarefree(py_full)) throw std::domain_error("polynomial not square-free in y");
    BivarPoly pb = to_bivar_primitive(py_full);
    YPoly pp = pb.to_ypoly();

    const int rp = pb.deg_y();
    const int dp = std::max(pb.deg_x(), 0);
    std::vector<Poly> lc = cleared_coefficients(l);
    const int rl = l.order();
    const int dl = std::max(ore_degree(l), 0);

    // l(y): substitute x -> y in the leading coefficient
    const Poly& lead = lc[std::size_t(rl)];
    std::vector<RatFunc> ly_coeffs;
    for (int i = 0; i <= lead.degree(); ++i) ly_coeffs.emplace_back(lead.coeff(i));
    YPoly ly(std::move(ly_coeffs));
    if (ygcd(pp, ly).degree() != 0)
        throw std::domain_error("leading coefficient of the operator shares a root with P");

    YPoly pyinv = yinv_mod(pb.dy().to_ypoly(), pp);
    YPoly w = ymod(-(pb.dx().to_ypoly() * pyinv), pp);
    RatMatrix mw = multiplication_matrix(w, pp);
    YPoly lyinv = yinv_mod(ly, pp);

    const int n = rp * rl;
    // T2 = Dy + Tpartial in the basis (y^j d^i), index = i * rp + j
    RatMatrix t2(n, n);
    for (int i = 0; i < rl; ++i)
        for (int j = 0; j < rp; ++j) {
            const int col = i * rp + j;
            if (j >= 1) t2.at(i * rp + (j - 1), col) += RatFunc(Rat(j));  // d/dy
            if (i + 1 < rl) {
                t2.at((i + 1) * rp + j, col) += RatFunc(1);  // multiply by d
            } else {
                // y^j d^{r_L} = sum_i' (-l_i'(y)/l(y)) y^j d^{i'} mod P
                for (int i2 = 0; i2 < rl; ++i2) {
                    const Poly& li = lc[std::size_t(i2)];
                    if (li.is_zero()) continue;
                    std::vector<RatFunc> lic;
                    for (int u = 0; u <= li.degree(); ++u) lic.emplace_back(li.coeff(u));
                    YPoly liy(std::move(lic));
                    YPoly img = ymod(-(liy * lyinv) * YPoly::y(j), pp);
                    for (int u = 0; u < rp; ++u) t2.at(i2 * rp + u, col) += img.coeff(u);
                }
            }
        }
    // T = (I_{r_L} (x) M_w) * T2
    RatMatrix t1 = kron(RatMatrix::identity(rl), mw);
    RatMatrix t = t1 * t2;

    KrylovSeed seed;
    seed.a.assign(std::size_t(n), Poly());
    seed.a[0] = Poly(1);  // V_0 = 1

    PseudoLinearMap theta(OreKind::diff(), t);
    Relation rel = min_relation(theta, seed);
    InstanceReport rep;
    rep.degmm_T = theta.degmm_T();
    rep.theta = theta;
    rep.krylov_seed = seed;
    rep.degmm_T_bound = dp * (rl * (2 * rp - 1) + dl);
    instance_degmm_report(rep);
    detail::finish_report(rep, rel, OreKind::diff(), rel.order * rep.degmm_T_bound, sw);
    return rep;
}

// ---- Hermite-reduction telescoper ----

inline InstanceReport telescoper(const BivarPoly& p, const BivarPoly& q) {
    if (q.is_zero() || q.deg_y() < 1)
        throw std::invalid_argument("denominator must be nonconstant in y");
    if (p.is_zero()) throw std::invalid_argument("zero integrand");
    if (p.deg_y() >= q.deg_y())
        throw std::invalid_argument("numerator degree in y must be below the denominator's");
    if (p.deg_x() > q.deg_x())
        throw std::invalid_argument("numerator degree in x must not exceed the denominator's");
    YPoly qy = q.to_ypoly();
    if (!y_squarefree(qy)) throw std::domain_error("denominator not square-free in y");
    detail::Stopwatch sw;

    const int r = q.deg_y();
    const int d = std::max(q.deg_x(), 0);
    YPoly qx = q.dx().to_ypoly();

    // T: a -> -herm(q_x a / q^2) on the basis (1, y, ..., y^{r-1})
    RatMatrix t(r, r);
    for (int j = 0; j < r; ++j) {
        YPoly img = -hermite_reduce(qx * YPoly::y(j), qy, 2).r;
        for (int i = 0; i < r; ++i) t.at(i, j) = img.coeff(i);
    }

    KrylovSeed seed;
    seed.a.assign(std::size_t(r), Poly());
    for (int i = 0; i < r && i <= p.deg_y(); ++i) seed.a[std::size_t(i)] = p.coeff(i);

    PseudoLinearMap theta(OreKind::diff(), t);
    Relation rel = min_relation(theta, seed);
    InstanceReport rep;
    rep.degmm_T = theta.degmm_T();
    rep.theta = theta;
    rep.krylov_seed = seed;
    rep.degmm_T_bound = 2 * r * d;
    instance_degmm_report(rep);
    detail::finish_report(rep, rel, OreKind::diff(), rel.order * (d + 2 * r * d), sw);
    return rep;
}

}  // namespace orekrylov
