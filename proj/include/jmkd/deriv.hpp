// Symbolic differentiation over the expression IR.  Results are canonical
// expressions; (node, variable) pairs are memoized globally since nodes are
// interned and immutable.
#pragma once

#include "expr.hpp"

namespace jmkd {

inline Expr differentiate(Expr e, std::uint32_t v) {
    if (!(e->var_mask & (1ull << (v % 64)))) {
        // may-depend filter says no: derivative is structurally zero
        return zero();
    }
    if (Expr cached = Interner::instance().cached_derivative(e->id, v)) return cached;

    Expr d = nullptr;
    switch (e->kind) {
        case Kind::Rational:
        case Kind::NamedConst: d = zero(); break;
        case Kind::Var: d = (static_cast<std::uint32_t>(e->sym) == v) ? one() : zero(); break;
        case Kind::Sum: {
            std::vector<Expr> terms;
            terms.reserve(e->kids.size());
            for (Expr k : e->kids) terms.push_back(differentiate(k, v));
            d = add(std::move(terms));
            break;
        }
        case Kind::Product: {
            std::vector<Expr> terms;
            terms.reserve(e->kids.size());
            for (std::size_t i = 0; i < e->kids.size(); ++i) {
                Expr di = differentiate(e->kids[i], v);
                if (is_zero(di)) continue;
                std::vector<Expr> fs;
                fs.reserve(e->kids.size());
                for (std::size_t j = 0; j < e->kids.size(); ++j) fs.push_back(i == j ? di : e->kids[j]);
                terms.push_back(mul(std::move(fs)));
            }
            d = add(std::move(terms));
            break;
        }
        case Kind::IntPow:
            d = mul({num(e->ipow), ipow(e->kids[0], e->ipow - 1), differentiate(e->kids[0], v)});
            break;
        case Kind::RatPow:
            d = mul({rat(e->rat), rpow(e->kids[0], e->rat - 1), differentiate(e->kids[0], v)});
            break;
        case Kind::Exp: d = mul({e, differentiate(e->kids[0], v)}); break;
        case Kind::Log: d = mul({differentiate(e->kids[0], v), ipow(e->kids[0], -1)}); break;
        case Kind::Sin: d = mul({cos_e(e->kids[0]), differentiate(e->kids[0], v)}); break;
        case Kind::Cos: d = mul({num(-1), sin_e(e->kids[0]), differentiate(e->kids[0], v)}); break;
        case Kind::Antideriv: {
            auto w = static_cast<std::uint32_t>(e->sym);
            if (v == w) {
                // d/dw of integral_c^w g(s) ds is g evaluated at s = w, i.e. the
                // integrand itself (the dummy is the limit variable)
                d = e->kids[0];
            } else {
                // differentiation under the integral sign
                d = antideriv(differentiate(e->kids[0], v), w, e->rat);
            }
            break;
        }
        case Kind::ParamCall: {
            // chain rule: sum over argument slots of (d arg_j / dv) * p^(..+e_j)(args)
            std::vector<Expr> terms;
            for (std::size_t j = 0; j < e->kids.size(); ++j) {
                Expr dj = differentiate(e->kids[j], v);
                if (is_zero(dj)) continue;
                std::vector<int> orders = e->orders;
                orders[j] += 1;
                terms.push_back(mul({dj, param_call(sym_name(e->sym), e->kids, std::move(orders))}));
            }
            d = add(std::move(terms));
            break;
        }
    }
    Interner::instance().cache_derivative(e->id, v, d);
    return d;
}

inline Expr differentiate(Expr e, std::uint32_t v, int times) {
    for (int i = 0; i < times; ++i) e = differentiate(e, v);
    return e;
}

}  // namespace jmkd
