// Builders for the Konopelchenko-Dubrovsky solution families.  The equation
// constants a (nonzero) and b are exact rationals and are recorded on the
// built family so the verifier can assemble the matching operator.  The
// logarithmic families carry a sign of +1 or -1 selecting the mirrored branch
// W = sign (2/a) log f(sign x, sign y, sign t).
#pragma once

#include "coeffs_kd.hpp"
#include "family.hpp"

namespace jmkd {

namespace detail_family {
inline Expr reflect_xyt(Expr f) {
    return substitute(f, {{SYM_X, neg(var(SYM_X))},
                          {SYM_Y, neg(var(SYM_Y))},
                          {SYM_T, neg(var(SYM_T))}});
}

inline Rational signed_unit(const std::string& family, BindingSet& b) {
    Rational s = b.cst("sign", Rational(1));
    if (s != 1 && s != -1)
        throw FamilyError(family + ": constant \"sign\" must be +1 or -1");
    return s;
}
}  // namespace detail_family

// Mirrored branch of the logarithmic families: negating (x, y, t) in the
// plus-sign field and flipping its overall sign gives the minus-sign member.
// An involution: applying it twice returns the original field.
inline Expr kd_sign_reflect(Expr w_plus) { return neg(detail_family::reflect_xyt(w_plus)); }

// Physical pair of the Konopelchenko-Dubrovsky system from a potential field.
struct KdPair {
    Expr u, v;
};

inline KdPair kd_pair(const BuiltFamily& fam) {
    return {differentiate(fam.W, SYM_X), differentiate(fam.W, SYM_Y)};
}

// Quadratic profile in x over the slope S = a y + psi(t).
inline BuiltFamily build_kd_q1(const FamilyInputs& in) {
    reject_n("KD-Q1", in);
    BindingSet b("KD-Q1", in);
    Rational a = b.cst_nonzero("a"), bb = b.cst("b");
    Expr psi = b.fn("psi", {SYM_T});
    Expr fm1 = b.fn("fm1", {SYM_T});
    Expr f4 = b.fn("f4", {SYM_T});
    Expr phi = b.fn("phi", {SYM_T});
    Expr sigma = b.fn("sigma", {SYM_T});
    b.finish();

    Expr x = var(SYM_X), y = var(SYM_Y);
    Rational a2 = a * a;
    Expr S = add({mul({rat(a), y}), psi});
    Expr psi_t = differentiate(psi, SYM_T);
    Expr f0 = mul({rat(Rational(1) / (6 * a2)), add({psi_t, rat(12 * bb)})});
    Expr B = add({mul({fm1, ipow(S, -1)}), f0, mul({f4, ipow(S, 4)})});

    Expr c1 = mul({rat(Rational(-1) / (2 * a2)),
                   add({mul({rat(Rational(1, 3)), differentiate(fm1, SYM_T)}),
                        mul({rat(-4 * bb), f0}), mul({rat(a2), f0, f0})})});
    Expr c2 = mul({rat(Rational(-1) / (36 * rational_pow(a, 4))), differentiate(psi_t, SYM_T)});
    Expr c3 = mul({rat(Rational(1) / (3 * a)), phi});
    Expr c4 = mul({rat(Rational(1, 2)), fm1, f4});
    Expr c5 = mul({rat(Rational(1) / (10 * a2)),
                   add({mul({rat(Rational(4, 3)), f4, psi_t}), mul({rat(-4 * bb), f4}),
                        mul({rat(2 * a2), f0, f4})})});
    Expr c6 = mul({rat(Rational(1) / (54 * a2)), differentiate(f4, SYM_T)});
    Expr c9 = mul({rat(Rational(1, 54)), f4, f4});
    Expr C = add({mul({rat(Rational(1, 4)), fm1, fm1, ipow(S, -1)}), mul({c1, S}),
                  mul({c2, ipow(S, 2)}), mul({c3, ipow(S, 3)}), mul({c4, ipow(S, 4)}),
                  mul({c5, ipow(S, 5)}), mul({c6, ipow(S, 6)}), mul({c9, ipow(S, 9)}), sigma});

    BuiltFamily out;
    out.id = "KD-Q1";
    out.equation = Equation::KD;
    out.kd_a = a;
    out.kd_b = bb;
    out.W = add({mul({ipow(S, -1), ipow(x, 2)}), mul({B, x}), C});
    out.guards = {{S, GuardKind::AbsoluteFloor, "S"}};
    out.exact = exact_compatible(out.W);
    return out;
}

// Quadratic profile in x over the slope S = -2 a y + psi(t), with a
// logarithmic tail when phi is bound.
inline BuiltFamily build_kd_q2(const FamilyInputs& in) {
    reject_n("KD-Q2", in);
    BindingSet b("KD-Q2", in);
    Rational a = b.cst_nonzero("a"), bb = b.cst("b");
    Expr psi = b.fn("psi", {SYM_T});
    Expr fm1 = b.fn("fm1", {SYM_T});
    Expr f1 = b.fn("f1", {SYM_T});
    Expr phi = b.fn("phi", {SYM_T});
    Expr sigma = b.fn("sigma", {SYM_T});
    b.finish();

    Expr x = var(SYM_X), y = var(SYM_Y);
    Rational a2 = a * a;
    Expr S = add({mul({rat(-2 * a), y}), psi});
    Expr psi_t = differentiate(psi, SYM_T);
    Expr f0 = mul({rat(Rational(1) / (6 * a2)), add({psi_t, rat(12 * bb)})});
    Expr B = add({mul({fm1, ipow(S, -1)}), f0, mul({f1, S})});

    Expr c1 = mul({rat(Rational(1) / (4 * a2)),
                   add({mul({rat(Rational(1, 3)), differentiate(fm1, SYM_T)}),
                        mul({rat(-4 * bb), f0}),
                        mul({rat(a2), add({mul({f0, f0}), mul({num(2), fm1, f1})})})})});
    Expr c2 = mul({rat(Rational(1) / (16 * a2)),
                   add({mul({rat(Rational(1, 3)),
                             add({differentiate(f0, SYM_T), mul({f1, psi_t})})}),
                        mul({rat(-4 * bb), f1}), mul({rat(2 * a2), f0, f1})})});
    Expr c3 = mul({rat(Rational(1) / (36 * a2)),
                   add({mul({rat(Rational(1, 3)), differentiate(f1, SYM_T)}),
                        mul({rat(a2), f1, f1})})});
    Expr C = add({mul({rat(Rational(1, 4)), fm1, fm1, ipow(S, -1)}),
                  mul({rat(Rational(-1) / (2 * a)), phi, log_e(S)}), mul({c1, S}),
                  mul({c2, ipow(S, 2)}), mul({c3, ipow(S, 3)}), sigma});

    BuiltFamily out;
    out.id = "KD-Q2";
    out.equation = Equation::KD;
    out.kd_a = a;
    out.kd_b = bb;
    out.W = add({mul({ipow(S, -1), ipow(x, 2)}), mul({B, x}), C});
    out.guards = {{S, is_zero(phi) ? GuardKind::AbsoluteFloor : GuardKind::LowerBound, "S"}};
    out.exact = exact_compatible(out.W);
    return out;
}

// Logarithmic family over a polynomial in the travelling coordinates
// xi = x + (2b/a) y + (12 b^2/a^2) t and eta = y + (12 b/a) t.
inline BuiltFamily build_kd_lx(const FamilyInputs& in) {
    int n = require_n("KD-LX", in, 1);
    BindingSet b("KD-LX", in);
    Rational a = b.cst_nonzero("a"), bb = b.cst("b");
    Rational sign = detail_family::signed_unit("KD-LX", b);
    std::vector<Rational> seeds(n + 1);
    for (int i = 0; i <= n; ++i)
        seeds[i] = b.cst(indexed_name("b", i), i == n ? Rational(1) : Rational(0));
    b.finish();

    TravelChain tc = kd_travel_coeffs(n);
    Expr etae = add({var(SYM_Y), mul({rat(12 * bb / a), var(SYM_T)})});
    Expr xie = add({var(SYM_X), mul({rat(2 * bb / a), var(SYM_Y)}),
                    mul({rat(12 * bb * bb / (a * a)), var(SYM_T)})});
    std::map<std::string, Expr> images{{"eta", etae}, {"t", var(SYM_T)}};
    std::vector<Expr> fterms;
    for (int m = 0; m <= n; ++m) {
        Poly p = tc.a[m];
        for (int i = 0; i <= n; ++i) p = p.substitute(indexed_name("b", i), seeds[i]);
        fterms.push_back(mul({p.to_expr(images), ipow(xie, m)}));
    }
    Expr f = add(std::move(fterms));
    if (sign == -1) f = detail_family::reflect_xyt(f);

    BuiltFamily out;
    out.id = "KD-LX";
    out.equation = Equation::KD;
    out.kd_a = a;
    out.kd_b = bb;
    out.W = mul({rat(sign * 2 / a), log_e(f)});
    out.guards = {{f, GuardKind::LowerBound, "f"}};
    out.exact = false;  // the logarithm is intrinsic
    return out;
}

// Logarithmic family over an exponential times a y-polynomial with
// time-evolved x-polynomial rows.
inline BuiltFamily build_kd_ly(const FamilyInputs& in) {
    int n = require_n("KD-LY", in, 0);
    BindingSet b("KD-LY", in);
    Rational a = b.cst_nonzero("a"), bb = b.cst("b");
    Rational sign = detail_family::signed_unit("KD-LY", b);
    std::vector<Rational> seeds(n + 1);
    for (int i = 0; i <= n; ++i)
        seeds[i] = b.cst(indexed_name("c", i), i == n ? Rational(1) : Rational(0));
    b.finish();

    YPolyChain ch = kd_ypoly_coeffs(n);
    Rational w = bb / a;
    std::map<std::string, Expr> images{{"x", var(SYM_X)}, {"t", var(SYM_T)}};
    std::vector<Expr> rows;
    for (int m = 0; m <= n; ++m) {
        Poly p = ch.g[m].substitute("w", w);
        for (int i = 0; i <= n; ++i) p = p.substitute(indexed_name("c", i), seeds[i]);
        rows.push_back(mul({p.to_expr(images), ipow(var(SYM_Y), m)}));
    }
    Expr E = exp_e(add({mul({rat(2 * bb / a), var(SYM_X)}),
                        mul({rat(8 * rational_pow(bb, 3) / rational_pow(a, 3)), var(SYM_T)})}));
    Expr f = mul({E, add(std::move(rows))});
    if (sign == -1) f = detail_family::reflect_xyt(f);

    BuiltFamily out;
    out.id = "KD-LY";
    out.equation = Equation::KD;
    out.kd_a = a;
    out.kd_b = bb;
    out.W = mul({rat(sign * 2 / a), log_e(f)});
    out.guards = {{f, GuardKind::LowerBound, "f"}};
    out.exact = false;  // the logarithm is intrinsic
    return out;
}

}  // namespace jmkd
