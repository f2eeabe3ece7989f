#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "orekrylov/series.hpp"

namespace orekrylov {

// Diff: theta = p(x) d/dx with deg p <= 1 (p = 1 usual, p = x Euler).
// Shift: theta = sigma_x, x -> x + 1.
class OreKind {
  public:
    static OreKind diff(Poly p = Poly(1)) {
        if (p.is_zero() || p.degree() > 1)
            throw std::invalid_argument("derivation polynomial must have degree <= 1");
        OreKind k;
        k.diff_ = true;
        k.p_ = std::move(p);
        return k;
    }
    static OreKind shift() { return OreKind(); }

    bool is_diff() const { return diff_; }
    bool is_shift() const { return !diff_; }
    const Poly& p() const {
        if (!diff_) throw std::logic_error("shift kind has no derivation polynomial");
        return p_;
    }

    // Dx for p = 1, Ex for p = x, Sx for shift
    std::string symbol() const {
        if (!diff_) return "Sx";
        if (p_.is_one()) return "Dx";
        if (p_ == Poly::x()) return "Ex";
        throw std::logic_error("no text symbol for this derivation");
    }

    friend bool operator==(const OreKind& a, const OreKind& b) {
        return a.diff_ == b.diff_ && a.p_ == b.p_;
    }
    friend bool operator!=(const OreKind& a, const OreKind& b) { return !(a == b); }

  private:
    OreKind() : diff_(false) {}
    bool diff_;
    Poly p_;
};

// theta applied to a scalar coefficient (no additive T term at this level).
inline RatFunc theta_scalar(const OreKind& k, const RatFunc& f) {
    if (k.is_diff()) return apply_derivation({k.p()}, f);
    return apply_shift(f);
}

// Skew polynomial sum c_i(x) * theta^i, dense in theta.
class OrePoly {
  public:
    explicit OrePoly(OreKind kind) : kind_(std::move(kind)) {}
    OrePoly(OreKind kind, std::vector<RatFunc> coeffs)
        : kind_(std::move(kind)), c_(std::move(coeffs)) {
        trim();
    }

    static OrePoly theta(const OreKind& kind, int power = 1) {
        std::vector<RatFunc> c(static_cast<std::size_t>(power) + 1);
        c.back() = RatFunc(1);
        return OrePoly(kind, std::move(c));
    }

    const OreKind& kind() const { return kind_; }
    const std::vector<RatFunc>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int order() const { return c_.empty() ? Poly::kNegInf : static_cast<int>(c_.size()) - 1; }
    RatFunc coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return RatFunc();
        return c_[static_cast<std::size_t>(i)];
    }
    const RatFunc& leading() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero operator");
        return c_.back();
    }

    friend bool operator==(const OrePoly& a, const OrePoly& b) {
        return a.kind_ == b.kind_ && a.c_ == b.c_;
    }
    friend bool operator!=(const OrePoly& a, const OrePoly& b) { return !(a == b); }

    friend OrePoly operator+(const OrePoly& a, const OrePoly& b) {
        a.check_kind(b);
        std::vector<RatFunc> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(int(i)) + b.coeff(int(i));
        return OrePoly(a.kind_, std::move(c));
    }
    friend OrePoly operator-(const OrePoly& a, const OrePoly& b) {
        a.check_kind(b);
        std::vector<RatFunc> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(int(i)) - b.coeff(int(i));
        return OrePoly(a.kind_, std::move(c));
    }
    // left multiplication by a scalar function
    friend OrePoly operator*(const RatFunc& f, const OrePoly& a) {
        std::vector<RatFunc> c = a.c_;
        for (RatFunc& v : c) v = f * v;
        return OrePoly(a.kind_, std::move(c));
    }
    OrePoly operator-() const { return RatFunc(-1) * *this; }

    void check_kind(const OrePoly& o) const {
        if (kind_ != o.kind_) throw std::invalid_argument("Ore kind mismatch");
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    OreKind kind_;
    std::vector<RatFunc> c_;
};

// theta * M, using the commutation rule of the kind.
inline OrePoly theta_left_mul(const OrePoly& m) {
    const int n = m.order();
    std::vector<RatFunc> c(static_cast<std::size_t>(std::max(n + 2, 1)));
    if (m.kind().is_diff()) {
        // theta * (f theta^j) = f theta^{j+1} + p f' theta^j
        for (int j = 0; j <= n; ++j) {
            c[std::size_t(j) + 1] += m.coeff(j);
            c[std::size_t(j)] += theta_scalar(m.kind(), m.coeff(j));
        }
    } else {
        // sigma * (f sigma^j) = sigma(f) sigma^{j+1}
        for (int j = 0; j <= n; ++j) c[std::size_t(j) + 1] = apply_shift(m.coeff(j));
    }
    return OrePoly(m.kind(), std::move(c));
}

inline OrePoly ore_mul(const OrePoly& a, const OrePoly& b) {
    a.check_kind(b);
    OrePoly result(a.kind());
    OrePoly cur = b;  // theta^i * b
    for (int i = 0; i <= a.order(); ++i) {
        if (!a.coeff(i).is_zero()) result = result + a.coeff(i) * cur;
        if (i < a.order()) cur = theta_left_mul(cur);
    }
    return result;
}

// A = Q * B + R with order(R) < order(B).
inline std::pair<OrePoly, OrePoly> ore_right_divrem(const OrePoly& a, const OrePoly& b) {
    a.check_kind(b);
    if (b.is_zero()) throw std::domain_error("Ore division by zero operator");
    OrePoly q(a.kind());
    OrePoly r = a;
    const int nb = b.order();
    while (!r.is_zero() && r.order() >= nb) {
        const int k = r.order() - nb;
        // leading coefficient of theta^k * B
        RatFunc blead = b.leading();
        if (b.kind().is_shift()) blead = apply_shift(blead, k);
        RatFunc t = r.leading() / blead;
        std::vector<RatFunc> tc(static_cast<std::size_t>(k) + 1);
        tc.back() = t;
        OrePoly term(a.kind(), std::move(tc));
        q = q + term;
        r = r - ore_mul(term, b);
    }
    return {q, r};
}

// Diff kind: image of a truncated power series at 0. Output precision is
// carried by the result (drops by one per theta application).
inline TruncSeries ore_apply(const OrePoly& a, const TruncSeries& s) {
    if (!a.kind().is_diff()) throw std::invalid_argument("series application needs Diff kind");
    if (a.is_zero()) return TruncSeries(std::max(s.prec() - 0, 0));
    const Poly& p = a.kind().p();
    TruncSeries cur = s;  // theta^i s
    TruncSeries acc(std::max(s.prec() - a.order(), 0));
    for (int i = 0; i <= a.order(); ++i) {
        if (!a.coeff(i).is_zero())
            acc += series_of_ratfunc(a.coeff(i), cur.prec()) * cur;
        if (i < a.order())
            cur = TruncSeries::from_poly(p, cur.prec()) * cur.derivative();
    }
    return acc;
}

// Shift kind: image of the sequence (u_0, ..., u_{N-1}); entry k of the result
// is sum_i c_i(k) u_{k+i}. Coefficient denominators must not vanish at the
// integer points used.
inline std::vector<Rat> ore_apply(const OrePoly& a, const std::vector<Rat>& u) {
    if (!a.kind().is_shift()) throw std::invalid_argument("sequence application needs Shift kind");
    const int n = static_cast<int>(u.size());
    const int ord = std::max(a.order(), 0);
    if (n < ord) throw std::invalid_argument("sequence shorter than operator order");
    std::vector<Rat> out(static_cast<std::size_t>(n - ord));
    for (int k = 0; k + ord < n; ++k) {
        Rat acc(0);
        for (int i = 0; i <= a.order(); ++i) {
            if (a.coeff(i).is_zero()) continue;
            acc += a.coeff(i).eval(Rat(k)) * u[std::size_t(k + i)];
        }
        out[std::size_t(k)] = acc;
    }
    return out;
}

// Polynomial-coefficient form: multiply through by the monic lcm of the
// coefficient denominators, then remove content and make the result
// integer-primitive with a positive leading coefficient on the top term.
inline std::vector<Poly> cleared_coefficients(const OrePoly& a) {
    Poly l(1);
    for (const RatFunc& f : a.coeffs()) l = poly_lcm(l, f.den());
    std::vector<Poly> c;
    c.reserve(a.coeffs().size());
    for (const RatFunc& f : a.coeffs()) c.push_back(f.num() * (l / f.den()));
    Poly g;
    for (const Poly& p : c) g = poly_gcd(g, p);
    if (!g.is_zero() && !g.is_one())
        for (Poly& p : c) p = p / g;
    Int den_lcm = 1;
    Int num_gcd = 0;
    for (const Poly& p : c)
        for (int i = 0; i <= std::max(p.degree(), 0); ++i) {
            const Rat& v = p.coeff(i);
            if (v == 0) continue;
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), v.get_den().get_mpz_t());
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), v.get_num().get_mpz_t());
        }
    if (num_gcd != 0) {
        Rat scale = make_rat(den_lcm, num_gcd);
        if (scale < 0) scale = -scale;
        for (Poly& p : c) p = scale * p;
        if (!c.empty() && c.back().leading() < 0)
            for (Poly& p : c) p = Rat(-1) * p;
    }
    return c;
}

// Max coefficient degree in cleared polynomial form; the "d" of the bounds.
inline int ore_degree(const OrePoly& a) {
    if (a.is_zero()) return Poly::kNegInf;
    int d = 0;
    for (const Poly& p : cleared_coefficients(a))
        if (!p.is_zero()) d = std::max(d, p.degree());
    return d;
}

inline OrePoly ore_normalized(const OrePoly& a) {
    std::vector<Poly> c = cleared_coefficients(a);
    std::vector<RatFunc> rc;
    rc.reserve(c.size());
    for (Poly& p : c) rc.emplace_back(std::move(p));
    return OrePoly(a.kind(), std::move(rc));
}

inline std::string ore_to_string(const OrePoly& a) {
    if (a.is_zero()) return "0";
    const std::string sym = a.kind().symbol();
    std::vector<Poly> c = cleared_coefficients(a);
    std::string out;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
        const Poly& p = c[std::size_t(i)];
        if (p.is_zero()) continue;
        std::string term = p.to_string();
        bool negated = false;
        if (!out.empty() && term.size() > 0 && term[0] == '-' && p.terms() == 1) {
            term = term.substr(1);
            negated = true;
        }
        if (i > 0) {
            if (term == "1")
                term.clear();
            else if (p.terms() > 1)
                term = "(" + term + ")*";
            else
                term += "*";
            term += sym;
            if (i > 1) term += "^" + std::to_string(i);
        }
        if (out.empty())
            out = (negated ? "-" : "") + term;
        else
            out += (negated ? " - " : " + ") + term;
    }
    return out;
}

}  // namespace orekrylov
