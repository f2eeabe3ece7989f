#pragma once

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "orekrylov/instances.hpp"

namespace orekrylov {

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

namespace parsing {

struct Token {
    enum Kind { Number, Name, Op, End } kind = End;
    std::string text;
    std::size_t pos = 0;
};

inline std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Token::Number, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            out.push_back({Token::Name, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        if (std::string("+-*/^()").find(c) != std::string::npos) {
            out.push_back({Token::Op, std::string(1, c), i});
            ++i;
            continue;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    out.push_back({Token::End, "", s.size()});
    return out;
}

// Commutative monomial key: theta power, plain-y power and closure variables
// y<i>_<j>. Multiplication keeps theta symbols rightmost.
struct Key {
    int theta = 0;
    int ypow = 0;
    std::map<std::pair<int, int>, int> yv;

    friend bool operator<(const Key& a, const Key& b) {
        if (a.theta != b.theta) return a.theta < b.theta;
        if (a.ypow != b.ypow) return a.ypow < b.ypow;
        return a.yv < b.yv;
    }
};

struct Expr {
    char sym = 0;  // 'D', 'E' or 'S' once a theta symbol has been seen
    std::map<Key, RatFunc> terms;

    void add_term(const Key& k, const RatFunc& c) {
        if (c.is_zero()) return;
        RatFunc& slot = terms[k];
        slot += c;
        if (slot.is_zero()) terms.erase(k);
    }
};

inline char merge_sym(char a, char b, std::size_t pos) {
    if (a == 0) return b;
    if (b == 0 || a == b) return a;
    throw ParseError("mixed Dx/Ex/Sx symbols", pos);
}

inline Expr expr_add(const Expr& a, const Expr& b, std::size_t pos) {
    Expr r;
    r.sym = merge_sym(a.sym, b.sym, pos);
    r.terms = a.terms;
    for (const auto& [k, c] : b.terms) r.add_term(k, c);
    return r;
}

inline Expr expr_neg(const Expr& a) {
    Expr r;
    r.sym = a.sym;
    for (const auto& [k, c] : a.terms) r.terms.emplace(k, -c);
    return r;
}

inline Expr expr_mul(const Expr& a, const Expr& b, std::size_t pos) {
    Expr r;
    r.sym = merge_sym(a.sym, b.sym, pos);
    for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms) {
            const bool cb_const = cb.num().degree() <= 0 && cb.den().degree() <= 0;
            if (ka.theta > 0 && !(cb_const && kb.ypow == 0 && kb.yv.empty()))
                throw ParseError("coefficients must appear to the left of the operator symbol",
                                 pos);
            Key k;
            k.theta = ka.theta + kb.theta;
            k.ypow = ka.ypow + kb.ypow;
            k.yv = ka.yv;
            for (const auto& [v, e] : kb.yv) k.yv[v] += e;
            r.add_term(k, ca * cb);
        }
    return r;
}

inline Expr expr_div(const Expr& a, const Expr& b, std::size_t pos) {
    if (b.terms.size() != 1) throw ParseError("division only by a scalar factor", pos);
    const auto& [k, c] = *b.terms.begin();
    if (k.theta != 0 || k.ypow != 0 || !k.yv.empty())
        throw ParseError("division only by a scalar factor", pos);
    Expr r;
    r.sym = a.sym;
    for (const auto& [ka, ca] : a.terms) r.terms.emplace(ka, ca / c);
    return r;
}

inline Expr expr_pow(const Expr& a, int e, std::size_t pos) {
    if (e < 0) throw ParseError("negative exponent", pos);
    Expr r;
    r.sym = a.sym;
    r.add_term(Key(), RatFunc(1));
    for (int i = 0; i < e; ++i) r = expr_mul(r, a, pos);
    return r;
}

class Parser {
  public:
    explicit Parser(const std::string& s) : toks_(tokenize(s)) {}

    Expr parse() {
        Expr e = expression();
        if (cur().kind != Token::End) throw ParseError("trailing input", cur().pos);
        return e;
    }

  private:
    const Token& cur() const { return toks_[i_]; }
    void advance() { ++i_; }
    bool accept_op(const char* op) {
        if (cur().kind == Token::Op && cur().text == op) {
            advance();
            return true;
        }
        return false;
    }

    Expr expression() {
        bool neg = false;
        if (accept_op("-"))
            neg = true;
        else
            accept_op("+");
        Expr e = term();
        if (neg) e = expr_neg(e);
        while (true) {
            const std::size_t pos = cur().pos;
            if (accept_op("+"))
                e = expr_add(e, term(), pos);
            else if (accept_op("-"))
                e = expr_add(e, expr_neg(term()), pos);
            else
                break;
        }
        return e;
    }

    Expr term() {
        Expr e = factor();
        while (true) {
            const std::size_t pos = cur().pos;
            if (accept_op("*"))
                e = expr_mul(e, factor(), pos);
            else if (accept_op("/"))
                e = expr_div(e, factor(), pos);
            else
                break;
        }
        return e;
    }

    Expr factor() {
        Expr base = atom();
        const std::size_t pos = cur().pos;
        if (accept_op("^")) {
            if (cur().kind != Token::Number) throw ParseError("exponent must be a number", cur().pos);
            const int e = std::stoi(cur().text);
            advance();
            base = expr_pow(base, e, pos);
        }
        return base;
    }

    Expr atom() {
        const Token t = cur();
        if (t.kind == Token::Number) {
            advance();
            Expr e;
            e.add_term(Key(), RatFunc(Rat(t.text)));
            return e;
        }
        if (t.kind == Token::Op && t.text == "(") {
            advance();
            Expr e = expression();
            if (!accept_op(")")) throw ParseError("expected ')'", cur().pos);
            return e;
        }
        if (t.kind == Token::Op && t.text == "-") {
            advance();
            return expr_neg(factor());
        }
        if (t.kind == Token::Name) {
            advance();
            Expr e;
            if (t.text == "x") {
                e.add_term(Key(), RatFunc::x());
                return e;
            }
            if (t.text == "y") {
                Key k;
                k.ypow = 1;
                e.add_term(k, RatFunc(1));
                return e;
            }
            if (t.text == "Dx" || t.text == "Ex" || t.text == "Sx") {
                e.sym = t.text[0];
                Key k;
                k.theta = 1;
                e.add_term(k, RatFunc(1));
                return e;
            }
            // closure variable y<group>_<order>
            if (t.text.size() >= 4 && t.text[0] == 'y') {
                const std::size_t us = t.text.find('_');
                if (us != std::string::npos && us > 1) {
                    const std::string g = t.text.substr(1, us - 1);
                    const std::string o = t.text.substr(us + 1);
                    bool digits = !g.empty() && !o.empty();
                    for (char c : g + o)
                        if (!std::isdigit(static_cast<unsigned char>(c))) digits = false;
                    if (digits) {
                        Key k;
                        k.yv[{std::stoi(g), std::stoi(o)}] = 1;
                        e.add_term(k, RatFunc(1));
                        return e;
                    }
                }
            }
            throw ParseError("unknown symbol '" + t.text + "'", t.pos);
        }
        throw ParseError("unexpected token", t.pos);
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
};

}  // namespace parsing

// Operator text -> OrePoly; constants default to the Diff kind.
inline OrePoly parse_operator(const std::string& text) {
    parsing::Expr e = parsing::Parser(text).parse();
    OreKind kind = OreKind::diff();
    if (e.sym == 'E') kind = OreKind::diff(Poly::x());
    if (e.sym == 'S') kind = OreKind::shift();
    int order = 0;
    for (const auto& [k, c] : e.terms) {
        if (k.ypow != 0 || !k.yv.empty())
            throw ParseError("operator input must not contain y variables", 0);
        order = std::max(order, k.theta);
    }
    std::vector<RatFunc> coeffs(static_cast<std::size_t>(order) + 1);
    for (const auto& [k, c] : e.terms) coeffs[std::size_t(k.theta)] += c;
    return OrePoly(kind, std::move(coeffs));
}

// Bivariate polynomial text in x and y, integer or rational coefficients.
inline BivarPoly parse_bivar(const std::string& text) {
    parsing::Expr e = parsing::Parser(text).parse();
    if (e.sym != 0) throw ParseError("polynomial input must not contain operator symbols", 0);
    std::vector<Poly> coeffs;
    for (const auto& [k, c] : e.terms) {
        if (!k.yv.empty()) throw ParseError("polynomial input must not contain y<i>_<j>", 0);
        if (c.den().degree() > 0)
            throw ParseError("polynomial input must not contain rational functions", 0);
        if (static_cast<int>(coeffs.size()) <= k.ypow)
            coeffs.resize(static_cast<std::size_t>(k.ypow) + 1);
        coeffs[std::size_t(k.ypow)] = coeffs[std::size_t(k.ypow)] + c.num();
    }
    return BivarPoly(std::move(coeffs));
}

// Rational function of x alone.
inline RatFunc parse_ratfunc(const std::string& text) {
    parsing::Expr e = parsing::Parser(text).parse();
    if (e.sym != 0) throw ParseError("rational input must not contain operator symbols", 0);
    RatFunc out;
    for (const auto& [k, c] : e.terms) {
        if (k.ypow != 0 || !k.yv.empty())
            throw ParseError("rational input must not contain y variables", 0);
        out += c;
    }
    return out;
}

// Closure polynomial text in x and y<i>_<j>, for the given group count.
inline ClosurePoly parse_closure(const std::string& text, int groups) {
    parsing::Expr e = parsing::Parser(text).parse();
    if (e.sym != 0) throw ParseError("closure input must not contain operator symbols", 0);
    ClosurePoly j;
    j.groups = groups;
    for (const auto& [k, c] : e.terms) {
        if (k.ypow != 0) throw ParseError("closure input uses y<i>_<j>, not a bare y", 0);
        if (c.den().degree() > 0)
            throw ParseError("closure input must not contain rational functions", 0);
        ClosureTerm t;
        t.coeff = c.num();
        t.exps.assign(static_cast<std::size_t>(groups), {});
        for (const auto& [var, exp] : k.yv) {
            if (var.first < 1 || var.first > groups)
                throw ParseError("variable group out of range: y" + std::to_string(var.first) +
                                     "_" + std::to_string(var.second),
                                 0);
            for (int rep = 0; rep < exp; ++rep)
                t.exps[std::size_t(var.first - 1)].push_back(var.second);
        }
        j.terms.push_back(std::move(t));
    }
    return j;
}

}  // namespace orekrylov
