#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "orekrylov/poly.hpp"

namespace orekrylov {

// Normalized rational function: gcd(num, den) = 1 and den monic.
class RatFunc {
  public:
    RatFunc() : num_(), den_(1) {}
    RatFunc(const Rat& c) : num_(c), den_(1) {}
    RatFunc(long c) : num_(c), den_(1) {}
    explicit RatFunc(Poly num) : num_(std::move(num)), den_(1) {}
    RatFunc(Poly num, Poly den) {
        if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
        Poly g = poly_gcd(num, den);
        if (!g.is_one() && !g.is_zero()) {
            num = num / g;
            den = den / g;
        }
        Rat lead = den.leading();
        num_ = (Rat(1) / lead) * num;
        den_ = (Rat(1) / lead) * den;
    }

    static RatFunc x() { return RatFunc(Poly::x()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_one(); }
    // deg num <= deg den (finite limit at infinity).
    bool is_proper() const { return num_.is_zero() || num_.degree() <= den_.degree(); }
    bool is_strictly_proper() const { return num_.is_zero() || num_.degree() < den_.degree(); }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    RatFunc operator-() const {
        RatFunc r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw std::domain_error("division by zero rational function");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    Rat eval(const Rat& v) const {
        Rat d = den_.eval(v);
        if (d == 0) throw std::domain_error("evaluation at a pole");
        return num_.eval(v) / d;
    }

    // Polynomial part W and strictly proper part: *this = W + proper.
    std::pair<Poly, RatFunc> split_polynomial_part() const {
        auto [q, r] = divrem(num_, den_);
        RatFunc proper;
        proper.num_ = r;
        proper.den_ = den_;
        return {q, proper};
    }

  private:
    Poly num_;
    Poly den_;
};

inline RatFunc pow(const RatFunc& base, int e) {
    if (e < 0) return RatFunc(1) / pow(base, -e);
    RatFunc r(1);
    RatFunc b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// The derivation Delta = p(x) d/dx. At the pseudo-linear-map level p must have
// degree <= 1; plain rational-function differentiation accepts any p.
struct Derivation {
    Poly p;

    static Derivation usual() { return {Poly(1)}; }
    static Derivation euler() { return {Poly::x()}; }
};

inline RatFunc apply_derivation(const Derivation& delta, const RatFunc& f) {
    // quotient rule, then scale by p
    Poly num = f.num().derivative() * f.den() - f.num() * f.den().derivative();
    return RatFunc(delta.p * num, f.den() * f.den());
}

inline RatFunc apply_shift(const RatFunc& f, long steps = 1) {
    Rat s(steps);
    return RatFunc(f.num().shift(s), f.den().shift(s));
}

// mu(x) = (a x + b) / (c x + d), with c != 0 so infinity is moved to a finite
// point (a/c) and -d/c is sent to infinity.
struct Mobius {
    Rat a, b, c, d;

    Mobius(Rat a_, Rat b_, Rat c_, Rat d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
        if (a * d - b * c == 0) throw std::invalid_argument("singular Mobius transformation");
        if (c == 0) throw std::invalid_argument("Mobius transformation must move infinity");
    }

    static Mobius inverse_x() { return Mobius(Rat(0), Rat(1), Rat(1), Rat(0)); }

    Rat det() const { return a * d - b * c; }
    // u(x) = c x + d
    Poly denominator() const { return Poly(std::vector<Rat>{d, c}); }
    Poly numerator() const { return Poly(std::vector<Rat>{b, a}); }
};

// p(mu(x)) * u(x)^deg(p): a polynomial of degree <= deg(p).
inline Poly mobius_homogenize(const Poly& p, const Mobius& mu) {
    if (p.is_zero()) return Poly();
    const Poly un = mu.numerator();
    const Poly ud = mu.denominator();
    const int d = p.degree();
    Poly acc;
    // Horner in (a x + b), multiplying by u per level.
    for (int i = d; i >= 0; --i) acc = acc * un + p.coeff(i) * pow(ud, d - i);
    return acc;
}

inline RatFunc mobius_substitute(const RatFunc& f, const Mobius& mu) {
    if (f.is_zero()) return RatFunc();
    Poly nh = mobius_homogenize(f.num(), mu);
    Poly dh = mobius_homogenize(f.den(), mu);
    const Poly u = mu.denominator();
    const int dn = f.num().degree();
    const int dd = f.den().degree();
    if (dn > dd) return RatFunc(nh, dh * pow(u, dn - dd));
    return RatFunc(nh * pow(u, dd - dn), dh);
}

}  // namespace orekrylov
