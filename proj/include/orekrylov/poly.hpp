#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "orekrylov/rat.hpp"

namespace orekrylov {

// Dense univariate polynomial over Q. Coefficient i is the coefficient of x^i;
// the vector is always trimmed so the leading coefficient is nonzero.
class Poly {
  public:
    // Degree of the zero polynomial. Kept far away from any real degree so that
    // callers mixing it into arithmetic by mistake fail loudly.
    static constexpr int kNegInf = std::numeric_limits<int>::min() / 2;

    Poly() = default;
    explicit Poly(const Rat& c) {
        if (c != 0) c_.push_back(c);
    }
    explicit Poly(long c) : Poly(Rat(c)) {}
    explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly x(int power = 1) {
        std::vector<Rat> c(static_cast<std::size_t>(power) + 1, Rat(0));
        c.back() = 1;
        return Poly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    bool is_constant() const { return c_.size() <= 1; }

    int degree() const { return c_.empty() ? kNegInf : static_cast<int>(c_.size()) - 1; }

    const Rat& coeff(int i) const {
        static const Rat zero(0);
        if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
        return c_[static_cast<std::size_t>(i)];
    }
    const Rat& leading() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }
    const std::vector<Rat>& coeffs() const { return c_; }

    int terms() const {
        int n = 0;
        for (const Rat& v : c_)
            if (v != 0) ++n;
        return n;
    }

    // human-readable form, highest power first, e.g. "2*x^3 - x + 1/2"
    std::string to_string() const {
        if (c_.empty()) return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            const Rat& v = coeff(i);
            if (v == 0) continue;
            const bool neg = v < 0;
            Rat mag = neg ? Rat(-v) : v;
            std::string term;
            if (i == 0 || mag != 1) {
                term = rat_to_string(mag);
                if (i > 0) term += "*";
            }
            if (i > 0) {
                term += "x";
                if (i > 1) term += "^" + std::to_string(i);
            }
            if (out.empty())
                out = (neg ? "-" : "") + term;
            else
                out += (neg ? " - " : " + ") + term;
        }
        return out;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
        return Poly(std::move(c));
    }
    Poly operator-() const {
        std::vector<Rat> c(c_);
        for (auto& v : c) v = -v;
        Poly r;
        r.c_ = std::move(c);
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Rat> c(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(c));
    }
    friend Poly operator*(const Rat& s, const Poly& a) {
        if (s == 0) return Poly();
        std::vector<Rat> c(a.c_);
        for (auto& v : c) v *= s;
        Poly r;
        r.c_ = std::move(c);
        return r;
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    // Euclidean division: a = q*b + r, deg r < deg b.
    friend std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw std::domain_error("polynomial division by zero");
        Poly q;
        std::vector<Rat> r(a.c_);
        const int db = b.degree();
        std::vector<Rat> qc;
        int dr = static_cast<int>(r.size()) - 1;
        while (dr >= 0 && r[static_cast<std::size_t>(dr)] == 0) --dr;
        if (dr >= db) qc.assign(static_cast<std::size_t>(dr - db) + 1, Rat(0));
        while (dr >= db) {
            Rat f = r[static_cast<std::size_t>(dr)] / b.leading();
            qc[static_cast<std::size_t>(dr - db)] = f;
            for (int i = 0; i <= db; ++i)
                r[static_cast<std::size_t>(dr - db + i)] -= f * b.coeff(i);
            r[static_cast<std::size_t>(dr)] = 0;
            while (dr >= 0 && r[static_cast<std::size_t>(dr)] == 0) --dr;
        }
        return {Poly(std::move(qc)), Poly(std::move(r))};
    }

    friend Poly operator/(const Poly& a, const Poly& b) {
        auto [q, r] = divrem(a, b);
        if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
        return q;
    }

    // d/dx
    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<Rat> c(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = Rat(static_cast<long>(i)) * c_[i];
        return Poly(std::move(c));
    }

    Rat eval(const Rat& v) const {
        Rat acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * v + c_[i];
        return acc;
    }

    // p(x + s), Horner on the shifted variable.
    Poly shift(const Rat& s) const {
        Poly acc;
        Poly lin(std::vector<Rat>{s, Rat(1)});
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * lin + Poly(c_[i]);
        return acc;
    }

    // x^deg * p(1/x): the reversed coefficient vector.
    Poly reversed() const {
        std::vector<Rat> c(c_.rbegin(), c_.rend());
        return Poly(std::move(c));
    }

    Poly monic() const {
        if (is_zero()) return Poly();
        return (Rat(1) / leading()) * *this;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rat> c_;
};

inline Poly pow(const Poly& base, int e) {
    if (e < 0) throw std::invalid_argument("negative polynomial power");
    Poly r(1);
    Poly b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

namespace detail {

// Integer-coefficient scratch representation used for gcd computation by
// primitive pseudo-remainder sequences, which keeps coefficient growth tame
// compared to naive Euclid over Q.
using ZPoly = std::vector<Int>;

inline void ztrim(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Int zcontent(const ZPoly& p) {
    Int g = 0;
    for (const auto& c : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

inline void zprimitive(ZPoly& p) {
    Int g = zcontent(p);
    if (g == 0 || g == 1) return;
    for (auto& c : p) c /= g;
}

// Pseudo-remainder of a by b (lc(b)^(da-db+1) * a mod b).
inline ZPoly zprem(ZPoly a, const ZPoly& b) {
    const int db = static_cast<int>(b.size()) - 1;
    const Int& lb = b.back();
    int da = static_cast<int>(a.size()) - 1;
    while (da >= db) {
        Int top = a[static_cast<std::size_t>(da)];
        for (auto& c : a) c *= lb;
        for (int i = 0; i <= db; ++i)
            a[static_cast<std::size_t>(da - db + i)] -= top * b[static_cast<std::size_t>(i)];
        ztrim(a);
        da = static_cast<int>(a.size()) - 1;
    }
    return a;
}

inline ZPoly to_zpoly(const Poly& p) {
    Int den = 1;
    for (const auto& c : p.coeffs()) {
        Int d = c.get_den();
        Int g;
        mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
        den = den / g * d;
    }
    ZPoly z(p.coeffs().size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        const Rat& c = p.coeffs()[i];
        z[i] = c.get_num() * (den / c.get_den());
    }
    zprimitive(z);
    return z;
}

inline Poly from_zpoly(const ZPoly& z) {
    std::vector<Rat> c(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) c[i] = Rat(z[i]);
    return Poly(std::move(c));
}

}  // namespace detail

// Monic gcd; gcd(0, 0) = 0.
inline Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    detail::ZPoly u = detail::to_zpoly(a);
    detail::ZPoly v = detail::to_zpoly(b);
    if (u.size() < v.size()) std::swap(u, v);
    while (!v.empty()) {
        detail::ZPoly r = detail::zprem(u, v);
        detail::zprimitive(r);
        u = std::move(v);
        v = std::move(r);
    }
    return detail::from_zpoly(u).monic();
}

// Monic lcm; zero if either argument is zero.
inline Poly poly_lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    return ((a * b) / poly_gcd(a, b)).monic();
}

// Yun's square-free decomposition: p = c * prod f_i^i with the f_i square-free
// and pairwise coprime. Returns the f_i (index 0 has multiplicity 1).
inline std::vector<Poly> squarefree_decomposition(const Poly& p) {
    std::vector<Poly> parts;
    if (p.degree() <= 0) return parts;
    Poly a = p.monic();
    Poly g = poly_gcd(a, a.derivative());
    Poly w = a / g;
    Poly y = a.derivative() / g;
    while (!(w.degree() <= 0)) {
        Poly z = y - w.derivative();
        Poly f = poly_gcd(w, z);
        parts.push_back(f.monic());
        w = w / f;
        y = z / f;
    }
    return parts;
}

inline Poly squarefree_part(const Poly& p) {
    if (p.degree() <= 0) return Poly(1);
    return (p / poly_gcd(p, p.derivative())).monic();
}

namespace detail {

// Inserts a square-free polynomial into a pairwise-coprime square-free basis,
// splitting existing elements as needed. Terminates because every recursive
// call strictly decreases degree.
inline void coprime_insert(std::vector<Poly>& basis, const Poly& n) {
    if (n.degree() <= 0) return;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        Poly g = poly_gcd(n, basis[i]);
        if (g.degree() <= 0) continue;
        Poly b = basis[i];
        basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
        coprime_insert(basis, g);
        coprime_insert(basis, b / g);
        coprime_insert(basis, n / g);
        return;
    }
    basis.push_back(n.monic());
}

}  // namespace detail

// Refines a set of polynomials into pairwise-coprime square-free factors so
// that every input is (up to constant) a product of powers of basis elements.
inline std::vector<Poly> coprime_squarefree_basis(const std::vector<Poly>& inputs) {
    std::vector<Poly> basis;
    for (const Poly& p : inputs)
        for (const Poly& sf : squarefree_decomposition(p)) detail::coprime_insert(basis, sf);
    return basis;
}

// Multiplicity of the (nonconstant) factor f in p.
inline int multiplicity(const Poly& p, const Poly& f) {
    if (p.is_zero()) throw std::domain_error("multiplicity in zero polynomial");
    int m = 0;
    Poly cur = p;
    while (true) {
        auto [q, r] = divrem(cur, f);
        if (!r.is_zero()) break;
        cur = q;
        ++m;
    }
    return m;
}

}  // namespace orekrylov
