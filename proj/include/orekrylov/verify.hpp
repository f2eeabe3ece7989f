#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "orekrylov/instances.hpp"
#include "orekrylov/oracle.hpp"

namespace orekrylov {

struct VerifyOutcome {
    bool checked = false;  // false: no independent oracle applied
    bool ok = false;
    std::string method;
};

namespace detail {

inline TruncSeries series_derivative(const TruncSeries& s, int k) {
    TruncSeries out = s;
    for (int step = 0; step < k; ++step) {
        const int n = out.prec();
        std::vector<Rat> c(static_cast<std::size_t>(std::max(n - 1, 1)));
        for (int i = 0; i + 1 < n; ++i) c[std::size_t(i)] = Rat(i + 1) * out.coeff(i + 1);
        out = TruncSeries(std::move(c));
    }
    return out;
}

// rational roots of a y-polynomial with rational coefficients, by a small
// candidate grid; enough for verification branch hunting at desk scale
inline std::vector<Rat> small_rational_roots(const YPoly& p) {
    std::vector<Rat> roots;
    for (int den = 1; den <= 4; ++den)
        for (int num = -12; num <= 12; ++num) {
            const Rat c = make_rat(num, den);
            bool seen = false;
            for (const Rat& r : roots)
                if (r == c) seen = true;
            if (!seen && p.eval(RatFunc(c)) == RatFunc())
                roots.push_back(c);
        }
    return roots;
}

inline BivarPoly bivar_shift_x(const BivarPoly& p, const Rat& c) {
    std::vector<Poly> out;
    for (int i = 0; i <= p.deg_y(); ++i) out.push_back(p.coeff(i).shift(c));
    return BivarPoly(std::move(out));
}

inline OrePoly ore_shift_coeffs(const OrePoly& l, const Rat& c) {
    std::vector<RatFunc> out;
    for (const RatFunc& f : l.coeffs()) out.emplace_back(f.num().shift(c), f.den().shift(c));
    return OrePoly(l.kind(), std::move(out));
}

}  // namespace detail

// Evaluates J on random solution combinations of the input operators and
// applies the candidate annihilator; truncated-series oracle for the Diff
// kind, unrolled-sequence oracle for the Shift kind.
inline VerifyOutcome verify_closure(const ClosurePoly& j, const std::vector<OrePoly>& ls,
                                    const OrePoly& op, int prec = 60,
                                    std::uint64_t seed = 0x5eed) {
    VerifyOutcome out;
    if (ls.empty()) return out;
    const OreKind kind = ls[0].kind();
    std::mt19937_64 eng(seed);
    auto small = [&eng]() { return Rat(std::uniform_int_distribution<long>(-3, 3)(eng)); };

    if (kind.is_diff() && kind.p().is_one()) {
        std::vector<TruncSeries> fs;
        for (const OrePoly& l : ls) {
            SeriesBasis sb;
            try {
                sb = series_solution_basis(l, prec);
            } catch (const std::domain_error&) {
                return out;
            }
            if (sb.shift != 0) return out;  // expansion point moved: no oracle here
            TruncSeries f = TruncSeries::constant(Rat(0), prec);
            bool nonzero = false;
            for (const TruncSeries& b : sb.basis) {
                Rat c = small();
                if (c == 0) c = 1;
                f = f + TruncSeries::constant(c, prec) * b;
                nonzero = true;
            }
            if (!nonzero) return out;
            fs.push_back(std::move(f));
        }
        TruncSeries v = TruncSeries::constant(Rat(0), prec);
        for (const ClosureTerm& t : j.terms) {
            TruncSeries term = TruncSeries::from_poly(t.coeff, prec);
            for (std::size_t g = 0; g < t.exps.size(); ++g)
                for (int h : t.exps[g]) term = term * detail::series_derivative(fs[g], h);
            v = v + term;
        }
        out.checked = true;
        out.method = "series oracle";
        out.ok = ore_apply(op, v).is_zero();
        return out;
    }
    if (kind.is_shift()) {
        int maxshift = 0;
        for (const ClosureTerm& t : j.terms)
            for (const auto& e : t.exps)
                for (int h : e) maxshift = std::max(maxshift, h);
        const int n = prec + maxshift + op.order() + 1;
        std::vector<std::vector<Rat>> us;
        for (const OrePoly& l : ls) {
            std::vector<Rat> init;
            for (int i = 0; i < l.order(); ++i) {
                Rat c = small();
                if (c == 0) c = 1;
                init.push_back(c);
            }
            us.push_back(sequence_solution(l, init, n));
        }
        std::vector<Rat> v(static_cast<std::size_t>(n - maxshift));
        for (std::size_t k = 0; k < v.size(); ++k)
            for (const ClosureTerm& t : j.terms) {
                Rat term = t.coeff.eval(Rat(static_cast<long>(k)));
                for (std::size_t g = 0; g < t.exps.size(); ++g)
                    for (int h : t.exps[g]) term *= us[g][k + std::size_t(h)];
                v[k] += term;
            }
        out.checked = true;
        out.method = "sequence oracle";
        out.ok = true;
        for (const Rat& r : ore_apply(op, v))
            if (r != 0) out.ok = false;
        return out;
    }
    return out;
}

inline VerifyOutcome verify_lclm(const std::vector<OrePoly>& ls, const OrePoly& op) {
    VerifyOutcome out;
    out.checked = true;
    out.method = "right-division oracle";
    out.ok = true;
    for (const OrePoly& l : ls)
        if (!ore_right_divrem(op, l).second.is_zero()) out.ok = false;
    return out;
}

inline VerifyOutcome verify_symprod(const std::vector<OrePoly>& ls, const OrePoly& op,
                                    int prec = 60) {
    ClosurePoly j;
    j.groups = static_cast<int>(ls.size());
    ClosureTerm t;
    t.coeff = Poly(1);
    t.exps.assign(static_cast<std::size_t>(j.groups), {0});
    j.terms.push_back(std::move(t));
    return verify_closure(j, ls, op, prec);
}

inline VerifyOutcome verify_sym_power(const OrePoly& l, int ell, const OrePoly& op,
                                      int prec = 60) {
    ClosurePoly j;
    j.groups = 1;
    ClosureTerm t;
    t.coeff = Poly(1);
    t.exps.assign(1, std::vector<int>(static_cast<std::size_t>(ell), 0));
    j.terms.push_back(std::move(t));
    return verify_closure(j, {l}, op, prec);
}

inline VerifyOutcome verify_associate(const OrePoly& l, const OrePoly& a, const OrePoly& op,
                                      int prec = 60) {
    ClosurePoly j;
    j.groups = 1;
    std::vector<Poly> ac = cleared_coefficients(a);
    for (int i = 0; i < static_cast<int>(ac.size()); ++i) {
        if (ac[std::size_t(i)].is_zero()) continue;
        ClosureTerm t;
        t.coeff = ac[std::size_t(i)];
        t.exps.assign(1, {i});
        j.terms.push_back(std::move(t));
    }
    return verify_closure(j, {l}, op, prec);
}

inline VerifyOutcome verify_wronskian(const std::vector<OrePoly>& ls, const OrePoly& op,
                                      int prec = 60) {
    const int r = static_cast<int>(ls.size());
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
    return verify_closure(j, ls, op, prec);
}

// Hunts for a simple rational branch (c, y0) of P with small coordinates and
// checks annihilation of its Newton expansion.
inline VerifyOutcome verify_resolvent(const BivarPoly& p, const OrePoly& op, int prec = 60) {
    VerifyOutcome out;
    for (long c = 0; c <= 10; ++c) {
        const BivarPoly pc = detail::bivar_shift_x(p, Rat(c));
        const YPoly at0 = pc.to_ypoly();
        YPoly slice;
        {
            std::vector<RatFunc> cs;
            for (int i = 0; i <= pc.deg_y(); ++i) cs.emplace_back(Rat(pc.coeff(i).eval(Rat(0))));
            slice = YPoly(std::move(cs));
        }
        for (const Rat& y0 : detail::small_rational_roots(slice)) {
            TruncSeries g;
            try {
                g = newton_algebraic_series(pc, y0, prec);
            } catch (const std::domain_error&) {
                continue;  // not a simple root
            }
            out.checked = true;
            out.method = "Newton-series oracle at x = " + std::to_string(c);
            out.ok = ore_apply(detail::ore_shift_coeffs(op, Rat(c)), g).is_zero();
            return out;
        }
    }
    return out;
}

inline VerifyOutcome verify_compose(const BivarPoly& p, const OrePoly& l, const OrePoly& op,
                                    int prec = 60) {
    VerifyOutcome out;
    for (long c = 0; c <= 10; ++c) {
        const BivarPoly pc = detail::bivar_shift_x(p, Rat(c));
        YPoly slice;
        {
            std::vector<RatFunc> cs;
            for (int i = 0; i <= pc.deg_y(); ++i) cs.emplace_back(Rat(pc.coeff(i).eval(Rat(0))));
            slice = YPoly(std::move(cs));
        }
        for (const Rat& y0 : detail::small_rational_roots(slice)) {
            TruncSeries g;
            try {
                g = newton_algebraic_series(pc, y0, prec);
            } catch (const std::domain_error&) {
                continue;
            }
            SeriesBasis sb;
            try {
                sb = series_solution_basis(detail::ore_shift_coeffs(l, y0), prec);
            } catch (const std::domain_error&) {
                continue;
            }
            if (sb.shift != 0) continue;
            TruncSeries gm = g - TruncSeries::constant(y0, g.prec());
            const OrePoly opc = detail::ore_shift_coeffs(op, Rat(c));
            out.checked = true;
            out.method = "series-composition oracle at x = " + std::to_string(c);
            out.ok = true;
            for (const TruncSeries& u : sb.basis)
                if (!ore_apply(opc, u.composed_with(gm)).is_zero()) out.ok = false;
            return out;
        }
    }
    return out;
}

inline VerifyOutcome verify_telescope(const BivarPoly& p, const BivarPoly& q,
                                      const OrePoly& op) {
    VerifyOutcome out;
    out.checked = true;
    out.method = "exact Hermite certificate";
    out.ok = verify_telescoper(op, p, q).ok;
    return out;
}

}  // namespace orekrylov
