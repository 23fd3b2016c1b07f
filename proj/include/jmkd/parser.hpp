// Recursive-descent parser and canonical printer for the small expression
// grammar used to bind parameter functions and constants:
//
//   expr     := term { ('+' | '-') term }
//   term     := unary { ('*' | '/') unary }
//   unary    := '-' unary | power
//   power    := atom [ '^' exponent ]
//   exponent := ['-'] INT | '(' ['-'] INT ['/' INT] ')'
//   atom     := INT | IDENT | FUNC '(' expr ')' | '(' expr ')'
//   FUNC     := 'exp' | 'log' | 'sin' | 'cos'
//
// IDENT must be a declared formal (variable) or a declared named constant.
// Chained '^' requires parentheses.  Errors carry the byte offset into the
// source string.  print() emits the canonical form; parse(print(e)) == e for
// every canonical grammar-expressible expression.
#pragma once

#include "expr.hpp"

#include <set>
#include <string>
#include <vector>

namespace jmkd {

struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(std::size_t off, const std::string& msg)
        : std::runtime_error("at byte " + std::to_string(off) + ": " + msg), offset(off) {}
};

namespace detail {

class Parser {
  public:
    Parser(const std::string& src, const std::vector<std::string>& formals,
           const std::set<std::string>& consts)
        : src_(src), consts_(consts) {
        for (auto& f : formals) formals_.insert(f);
    }

    Expr run() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError(pos_, "empty expression");
        Expr e = expr();
        skip_ws();
        if (pos_ < src_.size())
            throw ParseError(pos_, "unexpected trailing input '" + std::string(1, src_[pos_]) + "'");
        return e;
    }

  private:
    Expr expr() {
        Expr e = term();
        for (;;) {
            skip_ws();
            if (peek() == '+') {
                ++pos_;
                e = add({e, term()});
            } else if (peek() == '-') {
                ++pos_;
                e = sub(e, term());
            } else {
                return e;
            }
        }
    }

    Expr term() {
        Expr e = unary();
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                e = mul({e, unary()});
            } else if (peek() == '/') {
                ++pos_;
                e = divide(e, unary());
            } else {
                return e;
            }
        }
    }

    Expr unary() {
        skip_ws();
        if (peek() == '-') {
            ++pos_;
            return neg(unary());
        }
        return power();
    }

    Expr power() {
        Expr base = atom();
        skip_ws();
        if (peek() != '^') return base;
        ++pos_;
        Rational e = exponent();
        skip_ws();
        if (peek() == '^')
            throw ParseError(pos_, "chained '^' requires parentheses");
        return rpow(base, e);
    }

    Rational exponent() {
        skip_ws();
        std::size_t start = pos_;
        if (peek() == '(') {
            ++pos_;
            skip_ws();
            bool negd = false;
            if (peek() == '-') negd = true, ++pos_;
            Rational p = integer_literal("exponent numerator");
            Rational q = 1;
            skip_ws();
            if (peek() == '/') {
                ++pos_;
                q = integer_literal("exponent denominator");
                if (q == 0) throw ParseError(start, "zero exponent denominator");
            }
            skip_ws();
            if (peek() != ')') throw ParseError(pos_, "expected ')' closing exponent");
            ++pos_;
            Rational r = p / q;
            return negd ? Rational(-r) : r;
        }
        bool negd = false;
        if (peek() == '-') negd = true, ++pos_;
        Rational p = integer_literal("integer exponent");
        return negd ? Rational(-p) : p;
    }

    Expr atom() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError(pos_, "unexpected end of input");
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return rat(integer_literal("integer"));
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            skip_ws();
            if (peek() != ')') throw ParseError(pos_, "expected ')'");
            ++pos_;
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            std::string id = identifier();
            skip_ws();
            bool called = peek() == '(';
            if (id == "exp" || id == "log" || id == "sin" || id == "cos") {
                if (!called)
                    throw ParseError(start, "'" + id + "' must be called with one argument");
                ++pos_;
                Expr arg = expr();
                skip_ws();
                if (peek() != ')') throw ParseError(pos_, "expected ')' closing call");
                ++pos_;
                if (id == "exp") return exp_e(arg);
                if (id == "log") return log_e(arg);
                if (id == "sin") return sin_e(arg);
                return cos_e(arg);
            }
            if (called)
                throw ParseError(start, "unknown function '" + id + "'");
            if (formals_.count(id)) return var(id);
            if (consts_.count(id)) return named_const(id);
            throw ParseError(start, "unknown identifier '" + id + "'");
        }
        throw ParseError(pos_, std::string("unexpected character '") + c + "'");
    }

    Rational integer_literal(const char* what) {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError(start, std::string("expected ") + what);
        return Rational(Int(src_.substr(start, pos_ - start)));
    }

    std::string identifier() {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        return src_.substr(start, pos_ - start);
    }

    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' ||
                                      src_[pos_] == '\n' || src_[pos_] == '\r'))
            ++pos_;
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    std::set<std::string> formals_;
    const std::set<std::string>& consts_;
};

}  // namespace detail

inline Expr parse_expr(const std::string& src, const std::vector<std::string>& formals,
                       const std::set<std::string>& consts = {}) {
    return detail::Parser(src, formals, consts).run();
}

// ---------------------------------------------------------------------------
// Canonical printer.  Covers the grammar-expressible node kinds; Antideriv
// and ParamCall are rejected (use to_debug_string for diagnostics).

namespace detail {

enum PrintLevel { LVL_ADD = 0, LVL_MUL = 1, LVL_POW = 2, LVL_ATOM = 3 };

inline std::string print_at(Expr e, int min_level);

inline std::string print_rational(const Rational& r, int min_level) {
    std::string s = to_string(r);
    int lvl = LVL_ATOM;
    if (denominator(r) != 1) lvl = LVL_MUL;  // reads as a division
    if (r < 0) lvl = LVL_ADD;                // leading '-' reads as unary minus
    if (lvl < min_level) return "(" + s + ")";
    return s;
}

inline std::string print_at(Expr e, int min_level) {
    switch (e->kind) {
        case Kind::Rational: return print_rational(e->rat, min_level);
        case Kind::NamedConst:
        case Kind::Var: return sym_name(e->sym);
        case Kind::Sum: {
            std::string s = print_at(e->kids[0], LVL_ADD);
            for (std::size_t i = 1; i < e->kids.size(); ++i) {
                auto [c, core] = detail::coeff_core(e->kids[i]);
                if (c < 0) {
                    Expr flipped = core ? mul({rat(-c), core}) : rat(-c);
                    s += " - " + print_at(flipped, LVL_MUL);
                } else {
                    s += " + " + print_at(e->kids[i], LVL_MUL);
                }
            }
            return min_level > LVL_ADD ? "(" + s + ")" : s;
        }
        case Kind::Product: {
            std::string s;
            for (std::size_t i = 0; i < e->kids.size(); ++i)
                s += (i ? "*" : "") + print_at(e->kids[i], LVL_POW);
            return min_level > LVL_MUL ? "(" + s + ")" : s;
        }
        case Kind::IntPow: {
            std::string b = print_at(e->kids[0], LVL_ATOM);
            std::string ex = e->ipow < 0 ? "(" + std::to_string(e->ipow) + ")"
                                         : std::to_string(e->ipow);
            return b + "^" + ex;
        }
        case Kind::RatPow: {
            std::string b = print_at(e->kids[0], LVL_ATOM);
            return b + "^(" + to_string(e->rat) + ")";
        }
        case Kind::Exp: return "exp(" + print_at(e->kids[0], LVL_ADD) + ")";
        case Kind::Log: return "log(" + print_at(e->kids[0], LVL_ADD) + ")";
        case Kind::Sin: return "sin(" + print_at(e->kids[0], LVL_ADD) + ")";
        case Kind::Cos: return "cos(" + print_at(e->kids[0], LVL_ADD) + ")";
        default:
            throw std::invalid_argument("expression contains nodes outside the printable grammar: " +
                                        to_debug_string(e).substr(0, 80));
    }
}

}  // namespace detail

inline std::string print(Expr e) { return detail::print_at(e, detail::LVL_ADD); }

}  // namespace jmkd
