// Immutable, hash-consed symbolic expression core.
//
// Nodes are interned: structurally equal expressions are the same pointer,
// so equality is pointer comparison and evaluators can memoize by node id.
// Constructors canonicalize as they build (flatten sums/products, fold
// constants, merge like terms and integer exponents, fixed child ordering);
// no other rewriting is performed.
#pragma once

#include "rational.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace jmkd {

enum class Kind : std::uint8_t {
    Rational,    // literal value
    NamedConst,  // symbolic constant bound at evaluation time (e.g. "a")
    Var,         // variable (coordinate, formal parameter or dummy)
    Sum,
    Product,
    IntPow,      // base^k, integer k, k != 0, 1
    RatPow,      // base^(p/q), non-integer rational exponent
    Exp,
    Log,
    Sin,
    Cos,
    Antideriv,   // Antideriv(g, w, c): value at w=W is integral_c^W of g|_{w=s} ds
    ParamCall,   // named parameter function applied to args, with per-formal
                 // derivative orders (chain rule bookkeeping)
};

struct ExprNode;
using Expr = const ExprNode*;

struct ExprNode {
    Kind kind;
    std::uint32_t id = 0;       // dense intern index (memoization key)
    std::size_t hash = 0;
    std::uint64_t var_mask = 0; // may-depend bitmask over symbol ids (mod 64)
    Rational rat;               // Rational value / RatPow exponent / Antideriv base point
    long long ipow = 0;         // IntPow exponent
    std::int32_t sym = -1;      // Var/NamedConst symbol, ParamCall name, Antideriv variable
    std::vector<Expr> kids;
    std::vector<int> orders;    // ParamCall: derivative order per formal slot
};

// ---------------------------------------------------------------------------
// Symbol table (global, append-only)

class SymbolTable {
  public:
    static SymbolTable& instance() {
        static SymbolTable t;
        return t;
    }
    std::uint32_t intern(const std::string& name) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = by_name_.find(name);
        if (it != by_name_.end()) return it->second;
        std::uint32_t id = static_cast<std::uint32_t>(names_.size());
        names_.push_back(name);
        by_name_.emplace(name, id);
        return id;
    }
    const std::string& name(std::uint32_t id) const {
        std::lock_guard<std::mutex> lock(mu_);
        return names_.at(id);
    }
    std::size_t size() const {
        std::lock_guard<std::mutex> lock(mu_);
        return names_.size();
    }

  private:
    mutable std::mutex mu_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint32_t> by_name_;
};

inline std::uint32_t sym(const std::string& name) { return SymbolTable::instance().intern(name); }
inline const std::string& sym_name(std::uint32_t id) { return SymbolTable::instance().name(id); }

// ---------------------------------------------------------------------------
// Intern table

namespace detail {

inline void hash_mix(std::size_t& h, std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
}

inline std::size_t rational_hash(const Rational& r) {
    // keep the residue positive: converting a negative cpp_int to an unsigned
    // type throws
    auto m = ((numerator(r) % 1000003) + 1000003).convert_to<std::size_t>();
    return std::hash<double>{}(to_double(r)) ^ m;
}

}  // namespace detail

class Interner {
  public:
    static Interner& instance() {
        static Interner t;
        return t;
    }

    Expr intern(ExprNode&& n) {
        n.hash = content_hash(n);
        std::lock_guard<std::mutex> lock(mu_);
        auto range = table_.equal_range(n.hash);
        for (auto it = range.first; it != range.second; ++it)
            if (content_equal(*it->second, n)) return it->second;
        n.id = static_cast<std::uint32_t>(arena_.size());
        arena_.push_back(std::move(n));
        Expr e = &arena_.back();
        table_.emplace(e->hash, e);
        return e;
    }

    std::size_t node_count() const {
        std::lock_guard<std::mutex> lock(mu_);
        return arena_.size();
    }

    // derivative cache: (node id, variable symbol) -> derivative
    Expr cached_derivative(std::uint32_t id, std::uint32_t var) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = deriv_cache_.find((static_cast<std::uint64_t>(id) << 32) | var);
        return it == deriv_cache_.end() ? nullptr : it->second;
    }
    void cache_derivative(std::uint32_t id, std::uint32_t var, Expr d) {
        std::lock_guard<std::mutex> lock(mu_);
        deriv_cache_.emplace((static_cast<std::uint64_t>(id) << 32) | var, d);
    }

  private:
    static std::size_t content_hash(const ExprNode& n) {
        std::size_t h = static_cast<std::size_t>(n.kind) * 1000003u;
        detail::hash_mix(h, detail::rational_hash(n.rat));
        detail::hash_mix(h, static_cast<std::size_t>(n.ipow));
        detail::hash_mix(h, static_cast<std::size_t>(n.sym + 1));
        for (Expr k : n.kids) detail::hash_mix(h, k->hash);
        for (int o : n.orders) detail::hash_mix(h, static_cast<std::size_t>(o) + 17);
        return h;
    }
    static bool content_equal(const ExprNode& a, const ExprNode& b) {
        return a.kind == b.kind && a.ipow == b.ipow && a.sym == b.sym && a.rat == b.rat &&
               a.kids == b.kids && a.orders == b.orders;
    }

    mutable std::mutex mu_;
    std::deque<ExprNode> arena_;  // stable addresses
    std::unordered_multimap<std::size_t, Expr> table_;
    std::unordered_map<std::uint64_t, Expr> deriv_cache_;
};

// ---------------------------------------------------------------------------
// Deterministic total order on canonical nodes (name-based, not id-based, so
// the order is reproducible across processes)

inline int expr_cmp(Expr a, Expr b);

namespace detail {

inline int cmp_rational(const Rational& x, const Rational& y) {
    return x < y ? -1 : (y < x ? 1 : 0);
}

inline int cmp_kids(const std::vector<Expr>& a, const std::vector<Expr>& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (int c = expr_cmp(a[i], b[i])) return c;
    return a.size() < b.size() ? -1 : (a.size() > b.size() ? 1 : 0);
}

}  // namespace detail

inline int expr_cmp(Expr a, Expr b) {
    if (a == b) return 0;
    if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
    switch (a->kind) {
        case Kind::Rational: return detail::cmp_rational(a->rat, b->rat);
        case Kind::NamedConst:
        case Kind::Var: {
            const std::string &na = sym_name(a->sym), &nb = sym_name(b->sym);
            return na < nb ? -1 : (nb < na ? 1 : 0);
        }
        case Kind::IntPow:
            if (int c = expr_cmp(a->kids[0], b->kids[0])) return c;
            return a->ipow < b->ipow ? -1 : (a->ipow > b->ipow ? 1 : 0);
        case Kind::RatPow:
            if (int c = expr_cmp(a->kids[0], b->kids[0])) return c;
            return detail::cmp_rational(a->rat, b->rat);
        case Kind::Sum:
        case Kind::Product: return detail::cmp_kids(a->kids, b->kids);
        case Kind::Exp:
        case Kind::Log:
        case Kind::Sin:
        case Kind::Cos: return expr_cmp(a->kids[0], b->kids[0]);
        case Kind::Antideriv: {
            const std::string &na = sym_name(a->sym), &nb = sym_name(b->sym);
            if (na != nb) return na < nb ? -1 : 1;
            if (int c = detail::cmp_rational(a->rat, b->rat)) return c;
            return expr_cmp(a->kids[0], b->kids[0]);
        }
        case Kind::ParamCall: {
            const std::string &na = sym_name(a->sym), &nb = sym_name(b->sym);
            if (na != nb) return na < nb ? -1 : 1;
            if (a->orders != b->orders) return a->orders < b->orders ? -1 : 1;
            return detail::cmp_kids(a->kids, b->kids);
        }
    }
    return 0;
}

struct ExprLess {
    bool operator()(Expr a, Expr b) const { return expr_cmp(a, b) < 0; }
};

// ---------------------------------------------------------------------------
// Canonicalizing constructors

inline Expr rat(Rational v) {
    ExprNode n;
    n.kind = Kind::Rational;
    n.rat = std::move(v);
    return Interner::instance().intern(std::move(n));
}
inline Expr num(long long v) { return rat(Rational(v)); }
inline Expr zero() { return num(0); }
inline Expr one() { return num(1); }

inline bool is_zero(Expr e) { return e->kind == Kind::Rational && e->rat == 0; }
inline bool is_one(Expr e) { return e->kind == Kind::Rational && e->rat == 1; }
inline bool is_rational(Expr e) { return e->kind == Kind::Rational; }

inline Expr var(std::uint32_t symbol) {
    ExprNode n;
    n.kind = Kind::Var;
    n.sym = static_cast<std::int32_t>(symbol);
    n.var_mask = 1ull << (symbol % 64);
    return Interner::instance().intern(std::move(n));
}
inline Expr var(const std::string& name) { return var(sym(name)); }

inline Expr named_const(const std::string& name) {
    ExprNode n;
    n.kind = Kind::NamedConst;
    n.sym = static_cast<std::int32_t>(sym(name));
    return Interner::instance().intern(std::move(n));
}

inline Expr add(std::vector<Expr> terms);
inline Expr mul(std::vector<Expr> factors);
inline Expr ipow(Expr base, long long e);
inline Expr rpow(Expr base, const Rational& e);

namespace detail {

inline std::uint64_t mask_of(const std::vector<Expr>& kids) {
    std::uint64_t m = 0;
    for (Expr k : kids) m |= k->var_mask;
    return m;
}

// kids must already be canonical and sorted; size >= 2
inline Expr make_sum(std::vector<Expr> kids) {
    ExprNode n;
    n.kind = Kind::Sum;
    n.var_mask = mask_of(kids);
    n.kids = std::move(kids);
    return Interner::instance().intern(std::move(n));
}
inline Expr make_product(std::vector<Expr> kids) {
    ExprNode n;
    n.kind = Kind::Product;
    n.var_mask = mask_of(kids);
    n.kids = std::move(kids);
    return Interner::instance().intern(std::move(n));
}

// Splits a canonical term into (rational coefficient, non-numeric core).
// The core is nullptr for pure rationals.
inline std::pair<Rational, Expr> coeff_core(Expr t) {
    if (t->kind == Kind::Rational) return {t->rat, nullptr};
    if (t->kind == Kind::Product && t->kids[0]->kind == Kind::Rational) {
        if (t->kids.size() == 2) return {t->kids[0]->rat, t->kids[1]};
        std::vector<Expr> rest(t->kids.begin() + 1, t->kids.end());
        return {t->kids[0]->rat, make_product(std::move(rest))};
    }
    return {Rational(1), t};
}

}  // namespace detail

inline Expr add(std::vector<Expr> terms) {
    std::vector<Expr> flat;
    flat.reserve(terms.size());
    for (Expr t : terms) {
        if (t->kind == Kind::Sum)
            flat.insert(flat.end(), t->kids.begin(), t->kids.end());
        else
            flat.push_back(t);
    }
    Rational constant = 0;
    std::map<Expr, Rational, ExprLess> by_core;
    for (Expr t : flat) {
        auto [c, core] = detail::coeff_core(t);
        if (!core)
            constant += c;
        else
            by_core[core] += c;
    }
    std::vector<Expr> out;
    if (constant != 0) out.push_back(rat(constant));
    for (auto& [core, c] : by_core) {
        if (c == 0) continue;
        if (c == 1) {
            out.push_back(core);
        } else if (core->kind == Kind::Product) {
            std::vector<Expr> kids;
            kids.reserve(core->kids.size() + 1);
            kids.push_back(rat(c));
            kids.insert(kids.end(), core->kids.begin(), core->kids.end());
            out.push_back(detail::make_product(std::move(kids)));
        } else {
            out.push_back(detail::make_product({rat(c), core}));
        }
    }
    if (out.empty()) return zero();
    if (out.size() == 1) return out[0];
    std::sort(out.begin(), out.end(), ExprLess{});
    return detail::make_sum(std::move(out));
}

inline Expr mul(std::vector<Expr> factors) {
    std::vector<Expr> flat;
    flat.reserve(factors.size());
    for (Expr f : factors) {
        if (f->kind == Kind::Product)
            flat.insert(flat.end(), f->kids.begin(), f->kids.end());
        else
            flat.push_back(f);
    }
    Rational coeff = 1;
    std::map<Expr, long long, ExprLess> by_base;  // base -> accumulated integer exponent
    for (Expr f : flat) {
        if (f->kind == Kind::Rational) {
            if (f->rat == 0) return zero();
            coeff *= f->rat;
        } else if (f->kind == Kind::IntPow && f->kids[0]->kind == Kind::Rational) {
            coeff *= rational_pow(f->kids[0]->rat, f->ipow);
        } else if (f->kind == Kind::IntPow) {
            by_base[f->kids[0]] += f->ipow;
        } else {
            by_base[f] += 1;
        }
    }
    std::vector<Expr> out;
    for (auto& [base, e] : by_base) {
        if (e == 0) continue;
        Expr f = ipow(base, e);  // e==1 returns base; merged exponent may fold further
        if (f->kind == Kind::Rational) {
            if (f->rat == 0) return zero();
            coeff *= f->rat;
        } else {
            out.push_back(f);
        }
    }
    if (coeff == 0) return zero();
    if (out.empty()) return rat(coeff);
    if (out.size() == 1 && coeff == 1) return out[0];
    std::sort(out.begin(), out.end(), ExprLess{});
    if (coeff != 1) out.insert(out.begin(), rat(coeff));
    return detail::make_product(std::move(out));
}

inline Expr ipow(Expr base, long long e) {
    if (e == 0) return one();
    if (e == 1) return base;
    if (base->kind == Kind::Rational) return rat(rational_pow(base->rat, e));
    if (base->kind == Kind::IntPow) return ipow(base->kids[0], base->ipow * e);
    if (base->kind == Kind::RatPow) return rpow(base->kids[0], base->rat * e);
    if (base->kind == Kind::Product) {
        std::vector<Expr> kids;
        kids.reserve(base->kids.size());
        for (Expr k : base->kids) kids.push_back(ipow(k, e));
        return mul(std::move(kids));
    }
    ExprNode n;
    n.kind = Kind::IntPow;
    n.ipow = e;
    n.var_mask = base->var_mask;
    n.kids = {base};
    return Interner::instance().intern(std::move(n));
}

inline Expr rpow(Expr base, const Rational& e) {
    if (denominator(e) == 1) return ipow(base, e.convert_to<long long>());
    if (base->kind == Kind::Rational) {
        if (base->rat == 0) {
            if (e < 0) throw std::domain_error("rpow: 0 to a negative power");
            return zero();
        }
        if (base->rat == 1) return one();
    }
    // (b^(p/q))^(r/s) merges only when the inner exponent is already
    // non-integer, which forces b > 0 on the evaluation domain.
    if (base->kind == Kind::RatPow) return rpow(base->kids[0], base->rat * e);
    ExprNode n;
    n.kind = Kind::RatPow;
    n.rat = e;
    n.var_mask = base->var_mask;
    n.kids = {base};
    return Interner::instance().intern(std::move(n));
}

namespace detail {
inline Expr make_unary(Kind k, Expr arg) {
    ExprNode n;
    n.kind = k;
    n.var_mask = arg->var_mask;
    n.kids = {arg};
    return Interner::instance().intern(std::move(n));
}
}  // namespace detail

inline Expr exp_e(Expr x) { return is_zero(x) ? one() : detail::make_unary(Kind::Exp, x); }
inline Expr log_e(Expr x) { return is_one(x) ? zero() : detail::make_unary(Kind::Log, x); }
inline Expr sin_e(Expr x) { return is_zero(x) ? zero() : detail::make_unary(Kind::Sin, x); }
inline Expr cos_e(Expr x) { return is_zero(x) ? one() : detail::make_unary(Kind::Cos, x); }

inline Expr neg(Expr x) { return mul({num(-1), x}); }
inline Expr sub(Expr a, Expr b) { return add({a, neg(b)}); }
inline Expr divide(Expr a, Expr b) { return mul({a, ipow(b, -1)}); }

inline Expr antideriv(Expr integrand, std::uint32_t variable, Rational base_point = Rational(0)) {
    if (is_zero(integrand)) return zero();
    if (integrand->kind == Kind::Rational)  // integral of a constant
        return mul({integrand, sub(var(variable), rat(base_point))});
    ExprNode n;
    n.kind = Kind::Antideriv;
    n.sym = static_cast<std::int32_t>(variable);
    n.rat = std::move(base_point);
    n.var_mask = integrand->var_mask | (1ull << (variable % 64));
    n.kids = {integrand};
    return Interner::instance().intern(std::move(n));
}

inline Expr param_call(const std::string& name, std::vector<Expr> args, std::vector<int> orders = {}) {
    if (orders.empty()) orders.assign(args.size(), 0);
    if (orders.size() != args.size())
        throw std::invalid_argument("param_call: orders/args size mismatch");
    ExprNode n;
    n.kind = Kind::ParamCall;
    n.sym = static_cast<std::int32_t>(sym(name));
    n.var_mask = detail::mask_of(args);
    n.kids = std::move(args);
    n.orders = std::move(orders);
    return Interner::instance().intern(std::move(n));
}

// ---------------------------------------------------------------------------
// Substitution of variables by expressions (capture-checked for Antideriv)

inline Expr substitute(Expr e, const std::map<std::uint32_t, Expr>& repl,
                       std::map<Expr, Expr>* memo = nullptr) {
    std::map<Expr, Expr> local;
    if (!memo) memo = &local;
    if (auto it = memo->find(e); it != memo->end()) return it->second;

    // fast path: no replaced symbol can occur below
    std::uint64_t rm = 0;
    for (auto& [s, _] : repl) rm |= 1ull << (s % 64);
    Expr out = e;
    bool maybe = (e->var_mask & rm) != 0;
    if (maybe) {
        switch (e->kind) {
            case Kind::Rational:
            case Kind::NamedConst: out = e; break;
            case Kind::Var: {
                auto it = repl.find(static_cast<std::uint32_t>(e->sym));
                out = (it == repl.end()) ? e : it->second;
                break;
            }
            case Kind::Antideriv: {
                auto it = repl.find(static_cast<std::uint32_t>(e->sym));
                if (it != repl.end() && it->second != var(static_cast<std::uint32_t>(e->sym)))
                    throw std::logic_error("substitute: cannot substitute through the limit "
                                           "variable of an antiderivative");
                out = antideriv(substitute(e->kids[0], repl, memo),
                                static_cast<std::uint32_t>(e->sym), e->rat);
                break;
            }
            default: {
                std::vector<Expr> kids;
                kids.reserve(e->kids.size());
                for (Expr k : e->kids) kids.push_back(substitute(k, repl, memo));
                switch (e->kind) {
                    case Kind::Sum: out = add(std::move(kids)); break;
                    case Kind::Product: out = mul(std::move(kids)); break;
                    case Kind::IntPow: out = ipow(kids[0], e->ipow); break;
                    case Kind::RatPow: out = rpow(kids[0], e->rat); break;
                    case Kind::Exp: out = exp_e(kids[0]); break;
                    case Kind::Log: out = log_e(kids[0]); break;
                    case Kind::Sin: out = sin_e(kids[0]); break;
                    case Kind::Cos: out = cos_e(kids[0]); break;
                    case Kind::ParamCall:
                        out = param_call(sym_name(e->sym), std::move(kids), e->orders);
                        break;
                    default: throw std::logic_error("substitute: unhandled node kind");
                }
            }
        }
    }
    memo->emplace(e, out);
    return out;
}

// Exact structural dependence (the var_mask is only a may-depend filter).
inline bool depends_on(Expr e, std::uint32_t symbol) {
    if (!(e->var_mask & (1ull << (symbol % 64)))) return false;
    if (e->kind == Kind::Var) return static_cast<std::uint32_t>(e->sym) == symbol;
    if (e->kind == Kind::Antideriv && static_cast<std::uint32_t>(e->sym) == symbol) return true;
    for (Expr k : e->kids)
        if (depends_on(k, symbol)) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Diagnostic printer (covers every node kind; the round-trip grammar printer
// for parseable expressions lives in parser.hpp)

inline std::string to_debug_string(Expr e) {
    auto wrap = [](const std::string& s) { return "(" + s + ")"; };
    switch (e->kind) {
        case Kind::Rational: return to_string(e->rat);
        case Kind::NamedConst:
        case Kind::Var: return sym_name(e->sym);
        case Kind::Sum: {
            std::string s;
            for (std::size_t i = 0; i < e->kids.size(); ++i)
                s += (i ? " + " : "") + to_debug_string(e->kids[i]);
            return wrap(s);
        }
        case Kind::Product: {
            std::string s;
            for (std::size_t i = 0; i < e->kids.size(); ++i)
                s += (i ? "*" : "") + to_debug_string(e->kids[i]);
            return wrap(s);
        }
        case Kind::IntPow:
            return to_debug_string(e->kids[0]) + "^(" + std::to_string(e->ipow) + ")";
        case Kind::RatPow: return to_debug_string(e->kids[0]) + "^(" + to_string(e->rat) + ")";
        case Kind::Exp: return "exp" + wrap(to_debug_string(e->kids[0]));
        case Kind::Log: return "log" + wrap(to_debug_string(e->kids[0]));
        case Kind::Sin: return "sin" + wrap(to_debug_string(e->kids[0]));
        case Kind::Cos: return "cos" + wrap(to_debug_string(e->kids[0]));
        case Kind::Antideriv:
            return "Int(" + to_debug_string(e->kids[0]) + ", " + sym_name(e->sym) + ", " +
                   to_string(e->rat) + ")";
        case Kind::ParamCall: {
            std::string s = sym_name(e->sym);
            bool any = false;
            for (int o : e->orders) any = any || o;
            if (any) {
                s += "[";
                for (std::size_t i = 0; i < e->orders.size(); ++i)
                    s += (i ? "," : "") + std::to_string(e->orders[i]);
                s += "]";
            }
            s += "(";
            for (std::size_t i = 0; i < e->kids.size(); ++i)
                s += (i ? ", " : "") + to_debug_string(e->kids[i]);
            return s + ")";
        }
    }
    return "?";
}

}  // namespace jmkd
