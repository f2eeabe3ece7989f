#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "orekrylov/ratfunc.hpp"

namespace orekrylov {

// Truncated power series in x over Q. `prec()` coefficients are known, i.e.
// the series is correct modulo x^prec. Binary operations truncate to the
// smaller precision of the two operands.
class TruncSeries {
  public:
    TruncSeries() = default;
    explicit TruncSeries(int prec) : c_(static_cast<std::size_t>(prec)) {
        if (prec < 0) throw std::invalid_argument("negative series precision");
    }
    TruncSeries(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {}

    static TruncSeries constant(const Rat& v, int prec) {
        TruncSeries s(prec);
        if (prec > 0) s.c_[0] = v;
        return s;
    }
    static TruncSeries x(int prec) {
        TruncSeries s(prec);
        if (prec > 1) s.c_[1] = 1;
        return s;
    }
    static TruncSeries from_poly(const Poly& p, int prec) {
        TruncSeries s(prec);
        for (int i = 0; i < prec; ++i) s.c_[static_cast<std::size_t>(i)] = p.coeff(i);
        return s;
    }

    int prec() const { return static_cast<int>(c_.size()); }
    const Rat& coeff(int i) const {
        if (i < 0 || i >= prec()) throw std::out_of_range("series coefficient index");
        return c_[static_cast<std::size_t>(i)];
    }
    Rat& coeff(int i) {
        if (i < 0 || i >= prec()) throw std::out_of_range("series coefficient index");
        return c_[static_cast<std::size_t>(i)];
    }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const Rat& v : c_)
            if (v != 0) return false;
        return true;
    }
    // order of vanishing; prec() if zero to the known precision
    int valuation() const {
        for (int i = 0; i < prec(); ++i)
            if (c_[static_cast<std::size_t>(i)] != 0) return i;
        return prec();
    }

    TruncSeries truncated(int prec) const {
        if (prec > this->prec()) throw std::invalid_argument("cannot extend series precision");
        return TruncSeries(std::vector<Rat>(c_.begin(), c_.begin() + prec));
    }

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
        const int n = std::min(a.prec(), b.prec());
        TruncSeries r(n);
        for (int i = 0; i < n; ++i) r.c_[std::size_t(i)] = a.coeff(i) + b.coeff(i);
        return r;
    }
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
        const int n = std::min(a.prec(), b.prec());
        TruncSeries r(n);
        for (int i = 0; i < n; ++i) r.c_[std::size_t(i)] = a.coeff(i) - b.coeff(i);
        return r;
    }
    TruncSeries operator-() const {
        TruncSeries r = *this;
        for (Rat& v : r.c_) v = -v;
        return r;
    }
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        const int n = std::min(a.prec(), b.prec());
        TruncSeries r(n);
        for (int i = 0; i < n; ++i) {
            if (a.coeff(i) == 0) continue;
            for (int j = 0; j + i < n; ++j)
                r.c_[std::size_t(i + j)] += a.coeff(i) * b.coeff(j);
        }
        return r;
    }
    friend TruncSeries operator*(const Rat& s, const TruncSeries& a) {
        TruncSeries r = a;
        for (Rat& v : r.c_) v = s * v;
        return r;
    }
    TruncSeries& operator+=(const TruncSeries& o) { return *this = *this + o; }
    TruncSeries& operator-=(const TruncSeries& o) { return *this = *this - o; }
    TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }

    TruncSeries derivative() const {
        if (prec() == 0) return *this;
        TruncSeries r(prec() - 1);
        for (int i = 1; i < prec(); ++i)
            r.c_[std::size_t(i - 1)] = Rat(i) * c_[std::size_t(i)];
        return r;
    }

    // multiplicative inverse; requires a unit constant term
    TruncSeries inverted() const {
        if (prec() == 0 || c_[0] == 0)
            throw std::domain_error("series inverse needs nonzero constant term");
        TruncSeries r(prec());
        r.c_[0] = Rat(1) / c_[0];
        for (int i = 1; i < prec(); ++i) {
            Rat acc(0);
            for (int j = 1; j <= i; ++j) acc += c_[std::size_t(j)] * r.c_[std::size_t(i - j)];
            r.c_[std::size_t(i)] = -acc / c_[0];
        }
        return r;
    }

    // this(g(x)); requires g(0) = 0 so the composition is well defined
    TruncSeries composed_with(const TruncSeries& g) const {
        if (g.prec() > 0 && g.coeff(0) != 0)
            throw std::domain_error("series composition needs zero constant term");
        const int n = std::min(prec(), g.prec());
        TruncSeries acc(n);
        // Horner over the outer coefficients
        for (int i = std::min(prec(), n) - 1; i >= 0; --i)
            acc = acc * g.truncated(n) + TruncSeries::constant(coeff(i), n);
        return acc;
    }

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.c_ == b.c_; }

  private:
    std::vector<Rat> c_;
};

inline TruncSeries pow(const TruncSeries& base, int e) {
    if (e < 0) return pow(base.inverted(), -e);
    TruncSeries r = TruncSeries::constant(Rat(1), base.prec());
    TruncSeries b = base;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// Expansion of f at 0; the denominator must not vanish there.
inline TruncSeries series_of_ratfunc(const RatFunc& f, int prec) {
    TruncSeries den = TruncSeries::from_poly(f.den(), prec);
    if (prec > 0 && den.coeff(0) == 0)
        throw std::domain_error("rational function has a pole at the expansion point");
    return TruncSeries::from_poly(f.num(), prec) * den.inverted();
}

}  // namespace orekrylov
