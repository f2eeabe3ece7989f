#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "orekrylov/matrix.hpp"

namespace orekrylov {

// ---- polynomials in y over k(x) ----

// Dense polynomial in y with rational-function coefficients; index = y power.
// Always trimmed.
class YPoly {
  public:
    YPoly() = default;
    explicit YPoly(RatFunc c) {
        if (!c.is_zero()) c_.push_back(std::move(c));
    }
    explicit YPoly(std::vector<RatFunc> coeffs) : c_(std::move(coeffs)) { trim(); }

    static YPoly y(int power = 1) {
        std::vector<RatFunc> c(static_cast<std::size_t>(power) + 1);
        c.back() = RatFunc(1);
        return YPoly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? Poly::kNegInf : static_cast<int>(c_.size()) - 1; }
    RatFunc coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return RatFunc();
        return c_[static_cast<std::size_t>(i)];
    }
    const RatFunc& leading() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }
    const std::vector<RatFunc>& coeffs() const { return c_; }

    friend bool operator==(const YPoly& a, const YPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const YPoly& a, const YPoly& b) { return !(a == b); }

    friend YPoly operator+(const YPoly& a, const YPoly& b) {
        std::vector<RatFunc> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return YPoly(std::move(c));
    }
    friend YPoly operator-(const YPoly& a, const YPoly& b) {
        std::vector<RatFunc> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
        return YPoly(std::move(c));
    }
    YPoly operator-() const {
        std::vector<RatFunc> c = c_;
        for (RatFunc& v : c) v = -v;
        return YPoly(std::move(c));
    }
    friend YPoly operator*(const YPoly& a, const YPoly& b) {
        if (a.is_zero() || b.is_zero()) return YPoly();
        std::vector<RatFunc> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        }
        return YPoly(std::move(c));
    }
    friend YPoly operator*(const RatFunc& s, const YPoly& a) {
        std::vector<RatFunc> c = a.c_;
        for (RatFunc& v : c) v = s * v;
        return YPoly(std::move(c));
    }
    YPoly& operator+=(const YPoly& o) { return *this = *this + o; }
    YPoly& operator-=(const YPoly& o) { return *this = *this - o; }
    YPoly& operator*=(const YPoly& o) { return *this = *this * o; }

    // d/dy
    YPoly dy() const {
        if (c_.size() <= 1) return YPoly();
        std::vector<RatFunc> c(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = RatFunc(Rat(long(i))) * c_[i];
        return YPoly(std::move(c));
    }
    // d/dx, coefficientwise
    YPoly dx() const {
        std::vector<RatFunc> c(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i)
            c[i] = apply_derivation(Derivation::usual(), c_[i]);
        return YPoly(std::move(c));
    }
    // termwise antiderivative in y
    YPoly integrate_y() const {
        std::vector<RatFunc> c(c_.size() + 1);
        for (std::size_t i = 0; i < c_.size(); ++i)
            c[i + 1] = (RatFunc(1) / RatFunc(Rat(long(i + 1)))) * c_[i];
        return YPoly(std::move(c));
    }

    YPoly monic() const {
        if (is_zero()) return *this;
        return (RatFunc(1) / leading()) * *this;
    }

    RatFunc eval(const RatFunc& v) const {
        RatFunc acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * v + *it;
        return acc;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<RatFunc> c_;
};

inline std::pair<YPoly, YPoly> divrem(const YPoly& a, const YPoly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    std::vector<RatFunc> q(a.degree() >= b.degree()
                               ? static_cast<std::size_t>(a.degree() - b.degree()) + 1
                               : 0);
    YPoly r = a;
    const RatFunc inv = RatFunc(1) / b.leading();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        const int k = r.degree() - b.degree();
        RatFunc f = inv * r.leading();
        q[static_cast<std::size_t>(k)] = f;
        r -= f * (YPoly::y(k) * b);
    }
    return {YPoly(std::move(q)), r};
}

inline YPoly ygcd(YPoly a, YPoly b) {
    while (!b.is_zero()) {
        YPoly r = divrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// g = gcd(a, b) monic, with s a + t b = g.
struct YBezout {
    YPoly g, s, t;
};

inline YBezout yxgcd(const YPoly& a, const YPoly& b) {
    YPoly r0 = a, r1 = b;
    YPoly s0{RatFunc(1)}, s1;
    YPoly t0, t1{RatFunc(1)};
    while (!r1.is_zero()) {
        auto [q, r2] = divrem(r0, r1);
        YPoly s2 = s0 - q * s1;
        YPoly t2 = t0 - q * t1;
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (r0.is_zero()) return {YPoly(), s0, t0};
    RatFunc inv = RatFunc(1) / r0.leading();
    return {inv * r0, inv * s0, inv * t0};
}

inline YPoly ymod(const YPoly& a, const YPoly& m) { return divrem(a, m).second; }

// inverse of a modulo m; requires gcd(a, m) = 1
inline YPoly yinv_mod(const YPoly& a, const YPoly& m) {
    YBezout bz = yxgcd(a, m);
    if (bz.g.degree() != 0) throw std::domain_error("element not invertible modulo m");
    return ymod(bz.s, m);
}

inline YPoly ypow(const YPoly& base, int e) {
    YPoly r{RatFunc(1)};
    YPoly b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline bool y_squarefree(const YPoly& p) {
    if (p.degree() <= 0) return true;
    return ygcd(p, p.dy()).degree() == 0;
}

inline YPoly y_squarefree_part(const YPoly& p) {
    if (p.degree() <= 0) return p.monic();
    YPoly g = ygcd(p, p.dy());
    if (g.degree() == 0) return p.monic();
    return divrem(p, g).first.monic();
}

// ---- polynomials in x and y with polynomial coefficients ----

// Element of k[x][y]; index = y power, each coefficient a Poly in x. Trimmed.
class BivarPoly {
  public:
    BivarPoly() = default;
    explicit BivarPoly(Poly c) {
        if (!c.is_zero()) c_.push_back(std::move(c));
    }
    explicit BivarPoly(std::vector<Poly> ycoeffs) : c_(std::move(ycoeffs)) { trim(); }

    static BivarPoly y(int power = 1) {
        std::vector<Poly> c(static_cast<std::size_t>(power) + 1);
        c.back() = Poly(1);
        return BivarPoly(std::move(c));
    }
    static BivarPoly x(int power = 1) { return BivarPoly(Poly::x(power)); }

    bool is_zero() const { return c_.empty(); }
    int deg_y() const { return c_.empty() ? Poly::kNegInf : static_cast<int>(c_.size()) - 1; }
    int deg_x() const {
        int d = Poly::kNegInf;
        for (const Poly& p : c_)
            if (!p.is_zero()) d = std::max(d, p.degree());
        return d;
    }
    Poly coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return Poly();
        return c_[static_cast<std::size_t>(i)];
    }
    const Poly& leading_y() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }
    const std::vector<Poly>& coeffs() const { return c_; }

    friend bool operator==(const BivarPoly& a, const BivarPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const BivarPoly& a, const BivarPoly& b) { return !(a == b); }

    friend BivarPoly operator+(const BivarPoly& a, const BivarPoly& b) {
        std::vector<Poly> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] + b.c_[i];
        return BivarPoly(std::move(c));
    }
    friend BivarPoly operator-(const BivarPoly& a, const BivarPoly& b) {
        std::vector<Poly> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] - b.c_[i];
        return BivarPoly(std::move(c));
    }
    BivarPoly operator-() const {
        std::vector<Poly> c = c_;
        for (Poly& p : c) p = -p;
        return BivarPoly(std::move(c));
    }
    friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
        if (a.is_zero() || b.is_zero()) return BivarPoly();
        std::vector<Poly> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        }
        return BivarPoly(std::move(c));
    }

    BivarPoly dx() const {
        std::vector<Poly> c(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) c[i] = c_[i].derivative();
        return BivarPoly(std::move(c));
    }
    BivarPoly dy() const {
        if (c_.size() <= 1) return BivarPoly();
        std::vector<Poly> c(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = Rat(long(i)) * c_[i];
        return BivarPoly(std::move(c));
    }

    // evaluate y at a rational function
    RatFunc eval_y(const RatFunc& v) const {
        RatFunc acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * v + RatFunc(*it);
        return acc;
    }

    YPoly to_ypoly() const {
        std::vector<RatFunc> c;
        c.reserve(c_.size());
        for (const Poly& p : c_) c.emplace_back(p);
        return YPoly(std::move(c));
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = deg_y(); i >= 0; --i) {
            const Poly& p = coeff(i);
            if (p.is_zero()) continue;
            std::string term = p.to_string();
            bool negated = false;
            if (!out.empty() && term[0] == '-' && p.terms() == 1) {
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
                term += "y";
                if (i > 1) term += "^" + std::to_string(i);
            }
            if (out.empty())
                out = (negated ? "-" : "") + term;
            else
                out += (negated ? " - " : " + ") + term;
        }
        return out;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Poly> c_;
};

// clear coefficient denominators, then remove the k[x] content
inline BivarPoly to_bivar_primitive(const YPoly& a) {
    Poly l(1);
    for (const RatFunc& f : a.coeffs()) l = poly_lcm(l, f.den());
    std::vector<Poly> c;
    c.reserve(a.coeffs().size());
    for (const RatFunc& f : a.coeffs()) c.push_back(f.num() * (l / f.den()));
    Poly g;
    for (const Poly& p : c) g = poly_gcd(g, p);
    if (!g.is_zero() && !g.is_one())
        for (Poly& p : c) p = p / g;
    return BivarPoly(std::move(c));
}

// Sylvester matrix of a and b with respect to y, entries in k[x];
// square of size deg_y(a) + deg_y(b).
inline PolyMatrix sylvester_matrix(const BivarPoly& a, const BivarPoly& b) {
    const int m = a.deg_y();
    const int n = b.deg_y();
    if (m < 0 || n < 0) throw std::invalid_argument("Sylvester matrix of zero polynomial");
    PolyMatrix s(m + n, m + n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s.at(i, i + j) = a.coeff(m - j);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s.at(n + i, i + j) = b.coeff(n - j);
    return s;
}

inline Poly resultant_y(const BivarPoly& a, const BivarPoly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    if (a.deg_y() == 0 && b.deg_y() == 0) return Poly(1);
    return poly_det(sylvester_matrix(a, b));
}

// ---- rational functions in y over k(x) ----

// num/den with den monic in y; reduced to lowest terms except when built by
// the fraction factory.
class YRat {
  public:
    YRat() : den_{RatFunc(1)} {}
    explicit YRat(YPoly num) : num_(std::move(num)), den_{RatFunc(1)} {}
    YRat(YPoly num, YPoly den) {
        if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
        YPoly g = ygcd(num, den);
        if (g.degree() > 0) {
            num = divrem(num, g).first;
            den = divrem(den, g).first;
        }
        RatFunc inv = RatFunc(1) / den.leading();
        num_ = inv * num;
        den_ = inv * den;
    }

    // fraction kept as given (denominator made monic, no gcd pass); for
    // results like Hermite certificates where reducing to lowest terms can
    // cost more than the computation itself
    static YRat fraction(YPoly num, YPoly den) {
        if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
        RatFunc inv = RatFunc(1) / den.leading();
        YRat r;
        r.num_ = inv * num;
        r.den_ = inv * den;
        return r;
    }

    const YPoly& num() const { return num_; }
    const YPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend bool operator==(const YRat& a, const YRat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    friend YRat operator+(const YRat& a, const YRat& b) {
        return YRat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend YRat operator-(const YRat& a, const YRat& b) {
        return YRat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend YRat operator*(const YRat& a, const YRat& b) {
        return YRat(a.num_ * b.num_, a.den_ * b.den_);
    }
    YRat operator-() const { return YRat(-num_, den_); }
    YRat& operator+=(const YRat& o) { return *this = *this + o; }
    YRat& operator-=(const YRat& o) { return *this = *this - o; }

    // total x-derivative (y treated as an independent variable)
    YRat dx() const {
        return YRat(num_.dx() * den_ - num_ * den_.dx(), den_ * den_);
    }
    YRat dy() const {
        return YRat(num_.dy() * den_ - num_ * den_.dy(), den_ * den_);
    }

  private:
    YPoly num_, den_;
};

// ---- Hermite reduction in y ----

struct HermiteResult {
    YPoly r;    // deg_y r < deg_y q
    YRat cert;  // num/q^k = dy(cert) + r/q
};

// Reduction of num/q^k with q square-free in y, via the Bezout identity
// s q + t q_y = 1, lowering the pole order one step at a time.
inline HermiteResult hermite_reduce(const YPoly& num, const YPoly& q, int k) {
    if (k < 1) throw std::invalid_argument("pole order must be at least 1");
    if (q.degree() < 1) throw std::invalid_argument("denominator constant in y");
    if (!y_squarefree(q)) throw std::domain_error("denominator not square-free in y");
    YBezout bz = yxgcd(q, q.dy());
    if (bz.g.degree() != 0) throw std::domain_error("denominator not square-free in y");
    const YPoly& s = bz.s;
    const YPoly& t = bz.t;

    YPoly cur = num;
    // certificate numerator over the common denominator q^{k-1}; reducing the
    // t-cofactor mod q each level keeps every degree bounded by deg q
    YPoly certnum;
    for (int level = k; level >= 2; --level) {
        // with cur t = u q + b:
        // cur/q^level = dy(-b/((level-1) q^{level-1}))
        //             + (cur s + u q_y + dy(b)/(level-1))/q^{level-1}
        RatFunc inv{Rat(1, level - 1)};
        auto [u, b] = divrem(cur * t, q);
        certnum += -(inv * b) * ypow(q, k - level);
        cur = cur * s + u * q.dy() + inv * b.dy();
    }
    auto [u, r] = divrem(cur, q);
    YPoly den = ypow(q, k - 1);
    // a leftover polynomial part is itself a y-derivative
    if (!u.is_zero()) certnum += u.integrate_y() * den;
    YRat cert = certnum.is_zero() ? YRat() : YRat::fraction(std::move(certnum), std::move(den));
    return {r, cert};
}

inline BivarPoly hermite_reduce_primitive(const BivarPoly& num, const BivarPoly& q, int k) {
    return to_bivar_primitive(hermite_reduce(num.to_ypoly(), q.to_ypoly(), k).r);
}

}  // namespace orekrylov
