// Exact sparse multivariate polynomials over the rationals.  These back every
// coefficient recurrence: descending x-power chains, travelling-wave tails,
// logarithmic flag polynomials.  Terms live in a std::map keyed by exponent
// vector, so iteration order (and hence printing) is deterministic.
#pragma once

#include "expr.hpp"

#include <map>
#include <string>
#include <vector>

namespace jmkd {

class PolyRing {
  public:
    explicit PolyRing(std::vector<std::string> vars) : vars_(std::move(vars)) {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            for (std::size_t j = i + 1; j < vars_.size(); ++j)
                if (vars_[i] == vars_[j]) throw std::invalid_argument("duplicate ring variable");
    }
    std::size_t arity() const { return vars_.size(); }
    const std::string& name(std::size_t i) const { return vars_.at(i); }
    std::size_t index(const std::string& v) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == v) return i;
        throw std::invalid_argument("unknown ring variable '" + v + "'");
    }

  private:
    std::vector<std::string> vars_;
};

class Poly {
  public:
    using Monomial = std::vector<int>;

    explicit Poly(const PolyRing* ring) : ring_(ring) {}

    static Poly constant(const PolyRing* ring, const Rational& c) {
        Poly p(ring);
        if (c != 0) p.terms_[Monomial(ring->arity(), 0)] = c;
        return p;
    }
    static Poly variable(const PolyRing* ring, const std::string& v) {
        Poly p(ring);
        Monomial m(ring->arity(), 0);
        m[ring->index(v)] = 1;
        p.terms_[m] = 1;
        return p;
    }

    const PolyRing* ring() const { return ring_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    Rational coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (m.size() != ring_->arity()) throw std::invalid_argument("monomial arity mismatch");
        Rational& slot = terms_[m];
        slot += c;
        if (slot == 0) terms_.erase(m);
    }

    Poly& operator+=(const Poly& o) {
        check(o);
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        check(o);
        for (auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check(b);
        Poly r(a.ring_);
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) {
                Monomial m(ma);
                for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
                r.add_term(m, ca * cb);
            }
        return r;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly scaled(const Rational& c) const {
        Poly r(ring_);
        if (c == 0) return r;
        for (auto& [m, v] : terms_) r.terms_[m] = v * c;
        return r;
    }

    Poly pow(int k) const {
        if (k < 0) throw std::invalid_argument("negative polynomial power");
        Poly r = constant(ring_, 1);
        Poly b = *this;
        while (k) {
            if (k & 1) r *= b;
            b *= b;
            k >>= 1;
        }
        return r;
    }

    Poly deriv(const std::string& v) const {
        std::size_t i = ring_->index(v);
        Poly r(ring_);
        for (auto& [m, c] : terms_) {
            if (m[i] == 0) continue;
            Monomial d(m);
            --d[i];
            r.add_term(d, c * m[i]);
        }
        return r;
    }

    // Antiderivative in v with zero constant of integration.
    Poly integrate(const std::string& v) const {
        std::size_t i = ring_->index(v);
        Poly r(ring_);
        for (auto& [m, c] : terms_) {
            Monomial d(m);
            ++d[i];
            r.add_term(d, c / d[i]);
        }
        return r;
    }

    Poly substitute(const std::string& v, const Rational& val) const {
        std::size_t i = ring_->index(v);
        Poly r(ring_);
        for (auto& [m, c] : terms_) {
            Monomial d(m);
            d[i] = 0;
            r.add_term(d, c * rational_pow(val, m[i]));
        }
        return r;
    }

    Rational eval(const std::map<std::string, Rational>& env) const {
        Rational total = 0;
        for (auto& [m, c] : terms_) {
            Rational t = c;
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i] != 0) t *= rational_pow(env.at(ring_->name(i)), m[i]);
            total += t;
        }
        return total;
    }

    // Rebuilds the polynomial as an expression, mapping each ring variable to
    // a supplied expression.
    Expr to_expr(const std::map<std::string, Expr>& images) const {
        std::vector<Expr> terms;
        for (auto& [m, c] : terms_) {
            std::vector<Expr> factors{rat(c)};
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i] != 0) factors.push_back(ipow(images.at(ring_->name(i)), m[i]));
            terms.push_back(mul(std::move(factors)));
        }
        return add(std::move(terms));
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto& [m, c] : terms_) {
            if (!s.empty()) s += " + ";
            std::string mono;
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += ring_->name(i);
                if (m[i] != 1) mono += "^" + std::to_string(m[i]);
            }
            if (mono.empty())
                s += jmkd::to_string(c);
            else if (c == 1)
                s += mono;
            else
                s += jmkd::to_string(c) + "*" + mono;
        }
        return s;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.ring_ == b.ring_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  private:
    void check(const Poly& o) const {
        if (ring_ != o.ring_) throw std::invalid_argument("polynomial ring mismatch");
    }

    const PolyRing* ring_;
    std::map<Monomial, Rational> terms_;
};

}  // namespace jmkd
