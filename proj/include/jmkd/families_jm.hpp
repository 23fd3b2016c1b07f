// Builders for the Jimbo-Miwa solution families.  Each returns a fully
// inlined field W(t,x,y,z) together with its sampling guards and default
// domain.  Zero defaults cascade through the constant-folding constructors,
// so instances whose optional inputs are omitted stay as small as the
// mathematics allows (and rational instances stay exactly evaluable).
#pragma once

#include "coeffs_jm.hpp"
#include "family.hpp"

namespace jmkd {

// x-quadratic profile, exponential-weight branch.
inline BuiltFamily build_jm_p2a(const FamilyInputs& in) {
    reject_n("JM-P2A", in);
    BindingSet b("JM-P2A", in);
    Expr alpha = b.fn("alpha", {SYM_T, SYM_Z});
    Expr gamma = b.fn("gamma", {SYM_Y, SYM_Z});
    Expr rho = b.fn("rho", {SYM_Z, SYM_T});
    Expr eta = b.fn("eta", {SYM_Y, SYM_Z});
    Expr zeta = b.fn("zeta", {SYM_Z, SYM_T});
    b.finish();

    Expr x = var(SYM_X), y = var(SYM_Y);
    Expr A2 = differentiate(alpha, SYM_T);
    Expr K = antideriv(mul({differentiate(A2, SYM_Z), exp_e(mul({num(6), alpha}))}), SYM_T);
    Expr A1 = add({mul({exp_e(mul({num(-6), alpha})), add({gamma, mul({num(3), y, K})})}), rho});
    Expr integrand = mul({sub(differentiate(A1, SYM_Z), mul({A1, differentiate(A1, SYM_Y)})),
                          exp_e(mul({num(3), alpha}))});
    Expr dbl = antideriv(antideriv(integrand, SYM_T), SYM_Y);
    Expr A0 = add(
        {mul({exp_e(mul({num(-3), alpha})), add({eta, mul({rat(Rational(3, 2)), dbl})})}), zeta});

    BuiltFamily out;
    out.id = "JM-P2A";
    out.W = add({mul({A2, ipow(x, 2)}), mul({A1, x}), A0});
    out.exact = exact_compatible(out.W);
    return out;
}

// x-quadratic profile, shifted-time Laurent branch.
inline BuiltFamily build_jm_p2b(const FamilyInputs& in) {
    int n = require_n("JM-P2B", in, 0);
    int deepest = 2;
    for (const auto& [name, _] : in.functions)
        if (name.rfind("gamma_m", 0) == 0) deepest = std::max(deepest, std::stoi(name.substr(7)));
    LaurentChain ch = jm_laurent_coeffs(n, deepest - 2);

    BindingSet b("JM-P2B", in);
    Expr beta = b.fn("beta", {SYM_Y, SYM_Z});
    Expr eta = b.fn("eta", {SYM_Y, SYM_Z});
    Expr zeta = b.fn("zeta", {SYM_Z, SYM_T});
    std::map<std::string, Expr> images{{"beta", beta}};
    bool tail_bound = false;
    for (const auto& [m, _] : ch.B) {
        Expr seed = b.fn(indexed_name("gamma", m), {SYM_Z});
        if (m <= -2 && !is_zero(seed)) tail_bound = true;
        images.emplace(indexed_name("gamma", m), seed);
    }
    b.finish();
    // Below S^-1 the coefficient relations couple every level to the one
    // above it through beta_y, so a nonzero tail seed spawns an infinite
    // Laurent series unless beta is independent of y.
    if (tail_bound && depends_on(beta, SYM_Y))
        throw FamilyError("JM-P2B: gamma_m<j> bindings require \"beta\" independent of y "
                          "(the Laurent tail terminates only then)");

    Expr x = var(SYM_X);
    Expr S = add({mul({rat(Rational(9, 2)), var(SYM_T)}), beta});
    std::vector<Expr> a1_terms;
    for (const auto& [m, p] : ch.B) {
        Expr coeff = p.to_expr(images);
        if (m == -1)  // the bridge picks up the z-drift of beta
            coeff = add({coeff, mul({num(-2), antideriv(differentiate(beta, SYM_Z), SYM_Y)})});
        a1_terms.push_back(mul({coeff, ipow(S, m)}));
    }
    Expr A1 = add(std::move(a1_terms));
    Expr integrand = mul({rat(Rational(3, 2)),
                          sub(differentiate(A1, SYM_Z), mul({A1, differentiate(A1, SYM_Y)})),
                          rpow(S, Rational(2, 3))});
    Expr A0 = add({antideriv(mul({rpow(S, Rational(-2, 3)), eta}), SYM_Y),
                   antideriv(mul({rpow(S, Rational(-2, 3)), antideriv(integrand, SYM_T)}), SYM_Y),
                   zeta});

    BuiltFamily out;
    out.id = "JM-P2B";
    out.W = add({mul({ipow(S, -1), ipow(x, 2)}), mul({A1, x}), A0});
    out.guards = {{S, GuardKind::LowerBound, "S"}};
    out.domain.t = {0.1, 1.0};
    out.exact = exact_compatible(out.W);
    return out;
}

// Degree-n polynomial profile with poles on z = g(t).
inline BuiltFamily build_jm_pn(const FamilyInputs& in) {
    int n = require_n("JM-PN", in, 3);
    BindingSet b("JM-PN", in);
    Expr g = b.fn("g", {SYM_T});
    Expr phi = b.fn("phi", {SYM_Z, SYM_T});
    Expr h = b.fn("h", {SYM_T});
    Expr f = b.fn("f", {SYM_Z, SYM_T});
    std::map<std::string, Expr> images;
    for (int i = n; i >= 2; --i)
        images.emplace(indexed_name("gamma", i), b.fn(indexed_name("gamma", i), {SYM_T}));
    b.finish();

    Expr x = var(SYM_X), y = var(SYM_Y), z = var(SYM_Z);
    Expr D = sub(g, z);
    Expr I = antideriv(mul({phi, ipow(D, -1)}), SYM_Z);
    images.emplace("I", I);

    DescendingPowers dp = jm_xpoly_coeffs(n);
    std::vector<Expr> terms;
    for (int m = 0; m <= n - 3; ++m)
        terms.push_back(mul({dp.P[m].to_expr(images), ipow(D, -(n - m)), ipow(x, n - m)}));
    Expr A2 = add({mul({dp.P[n - 2].to_expr(images), ipow(D, -2)}),
                   mul({rat(Rational(-1, 3)), differentiate(g, SYM_T), z, ipow(D, -2)})});
    Expr eta = mul({ipow(D, -1),
                    add({mul({num(2),
                              antideriv(mul({add({mul({phi, A2}),
                                               mul({rat(Rational(1, 3)),
                                                    differentiate(phi, SYM_T)})}),
                                            D}),
                                        SYM_Z)}),
                         h})});
    terms.push_back(mul({A2, ipow(x, 2)}));
    terms.push_back(mul({add({mul({y, ipow(D, -1)}), eta}), x}));
    terms.push_back(add({mul({y, phi}), f}));

    BuiltFamily out;
    out.id = "JM-PN";
    out.W = add(std::move(terms));
    out.guards = {{D, GuardKind::AbsoluteFloor, "g - z"}};
    if (!is_zero(phi)) {  // quadrature paths in z run from 0 to z
        out.guards.push_back({D, GuardKind::LowerBound, "g - z"});
        out.guards.push_back({g, GuardKind::LowerBound, "g"});
    }
    out.domain.z = {0.05, 0.9};
    out.exact = exact_compatible(out.W);
    return out;
}

// The rational kernel of the first separable family.  Satisfies
// A_x^2 + A A_xx - A_xz = 0 identically, for any profiles c, d.
inline Expr burgers_kernel(Expr c, Expr d) {
    return mul({num(-1), sub(var(SYM_X), c), ipow(sub(var(SYM_Z), d), -1)});
}

// Separable family with an exponential of the rational kernel.
inline BuiltFamily build_jm_y1(const FamilyInputs& in) {
    reject_n("JM-Y1", in);
    BindingSet b("JM-Y1", in);
    Expr c = b.fn("c", {SYM_T});
    Expr d = b.fn("d", {SYM_T});
    Expr phi = b.fn("phi", {SYM_T});
    Expr f = b.fn("f", {SYM_T, SYM_Z});
    b.finish();

    Expr x = var(SYM_X), y = var(SYM_Y), z = var(SYM_Z);
    Expr R = mul({sub(x, c), ipow(sub(z, d), -1)});  // burgers_kernel is -R
    Expr W = add({mul({num(-1), R, y}), mul({phi, exp_e(R)}),
                  mul({rat(Rational(-1, 3)), differentiate(d, SYM_T), ipow(sub(x, c), 2),
                       ipow(sub(z, d), -1)}),
                  mul({rat(Rational(2, 3)), differentiate(c, SYM_T), x}), f});

    BuiltFamily out;
    out.id = "JM-Y1";
    out.W = W;
    out.guards = {{sub(z, d), GuardKind::AbsoluteFloor, "z - d"}};
    out.exact = exact_compatible(W);
    return out;
}

namespace detail_family {
// Shared core of the square-root separable families: W depends on y only
// through y^n, and on x through xi = phi x + phi h + g.
inline BuiltFamily build_sqrt_separable(const std::string& id, const std::string& phi_slot, int n,
                                        Expr phi, Expr h, Expr g, Expr f, Expr eta_arb) {
    if (is_zero(phi))
        throw FamilyError(id + ": function \"" + phi_slot +
                          "\" is required and must not be identically zero");
    Expr x = var(SYM_X), y = var(SYM_Y);
    Expr xi = add({mul({phi, x}), mul({phi, h}), g});
    Expr inv_phi = ipow(phi, -1);
    Expr bracket =
        mul({rat(Rational(-1, 6)),
             add({mul({rat(Rational(2, 3)), differentiate(phi, SYM_T), ipow(phi, -3), ipow(xi, 2)}),
                  mul({num(4), differentiate(mul({g, inv_phi}), SYM_T), xi, inv_phi}),
                  mul({num(-3), f, inv_phi, rpow(xi, Rational(1, 2))}),
                  mul({rat(Rational(1, 2)), phi, ipow(xi, -1)})})});
    Expr W = add({mul({rpow(xi, Rational(1, 2)), ipow(y, n)}),
                  mul({differentiate(h, SYM_Z), y}), bracket, eta_arb});

    BuiltFamily out;
    out.id = id;
    out.W = W;
    out.guards = {{xi, GuardKind::LowerBound, "xi"}, {phi, GuardKind::AbsoluteFloor, phi_slot}};
    out.exact = false;  // the square root is intrinsic
    return out;
}
}  // namespace detail_family

inline BuiltFamily build_jm_y2(const FamilyInputs& in) {
    reject_n("JM-Y2", in);
    BindingSet bnd("JM-Y2", in);
    Expr b = bnd.fn("b", {SYM_T});
    Expr h = bnd.fn("h", {SYM_Z});
    Expr eta = bnd.fn("eta", {SYM_T});
    Expr g = bnd.fn("g", {SYM_T});
    Expr l = bnd.fn("l", {SYM_Z, SYM_T});
    bnd.finish();
    return detail_family::build_sqrt_separable("JM-Y2", "b", 2, b, h, eta, g, l);
}

inline BuiltFamily build_jm_yn(const FamilyInputs& in) {
    int n = require_n("JM-YN", in, 2);
    BindingSet b("JM-YN", in);
    Expr phi = b.fn("phi", {SYM_T});
    Expr h = b.fn("h", {SYM_Z});
    Expr g = b.fn("g", {SYM_T});
    Expr f = b.fn("f", {SYM_T});
    Expr eta = b.fn("eta", {SYM_Z, SYM_T});
    b.finish();
    return detail_family::build_sqrt_separable("JM-YN", "phi", n, phi, h, g, f, eta);
}

// Logarithmic-derivative family over a time-evolved x-polynomial kernel.
inline BuiltFamily build_jm_l1(const FamilyInputs& in) {
    int n = require_n("JM-L1", in, 1);
    BindingSet b("JM-L1", in);
    Expr eta = b.fn("eta", {SYM_S});
    Rational kc = b.cst("k");
    std::vector<Rational> ks(n + 1, Rational(0));
    for (int i = 0; i <= n - 1; ++i) ks[i] = b.cst(indexed_name("k", i));
    b.finish();

    TimeChain tc = jm_log_poly_coeffs(n);
    auto coeff = [&](Poly p) {
        p = p.substitute("k", kc);
        for (int i = 0; i <= n; ++i) p = p.substitute(indexed_name("k", i), ks[i]);
        return p.to_expr({{"t", var(SYM_T)}});
    };
    Expr x = var(SYM_X);
    std::vector<Expr> fterms;
    for (int m = 1; m <= n; ++m) fterms.push_back(mul({coeff(tc.A[m]), ipow(x, m)}));
    fterms.push_back(coeff(tc.A[0]));
    fterms.push_back(
        substitute(eta, {{SYM_S, add({var(SYM_Y), mul({rat(kc), var(SYM_Z)})})}}));
    Expr f = add(std::move(fterms));

    BuiltFamily out;
    out.id = "JM-L1";
    out.W = mul({num(2), differentiate(f, SYM_X), ipow(f, -1)});
    out.guards = {{f, GuardKind::AbsoluteFloor, "f"}};
    out.exact = exact_compatible(out.W);
    return out;
}

// Logarithmic-derivative family over an affine kernel.
inline BuiltFamily build_jm_l2(const FamilyInputs& in) {
    reject_n("JM-L2", in);
    BindingSet b("JM-L2", in);
    Expr rho = b.fn("rho", {SYM_S});
    Rational C = b.cst("C"), k = b.cst("k");
    b.finish();

    Expr sarg = add({var(SYM_T), mul({rat(Rational(2, 3) * C), var(SYM_Z)})});
    Expr f = add({var(SYM_X), mul({rat(C), var(SYM_Y)}), rat(k), substitute(rho, {{SYM_S, sarg}})});

    BuiltFamily out;
    out.id = "JM-L2";
    out.W = mul({num(2), differentiate(f, SYM_X), ipow(f, -1)});
    out.guards = {{f, GuardKind::AbsoluteFloor, "f"}};
    out.exact = exact_compatible(out.W);
    return out;
}

// Logarithmic-derivative family over a y-polynomial kernel shifted in z.
inline BuiltFamily build_jm_l3(const FamilyInputs& in) {
    int n = require_n("JM-L3", in, 2);
    BindingSet b("JM-L3", in);
    Rational bb = b.cst("b");
    std::vector<Rational> ks(n + 1, Rational(0));
    for (int i = 0; i <= n; ++i) ks[i] = b.cst(indexed_name("k", i));
    b.finish();

    ShiftChain sc = jm_ypoly_g_coeffs(n);
    auto coeff = [&](Poly p) {
        p = p.substitute("b", bb);
        for (int i = 0; i <= n; ++i) p = p.substitute(indexed_name("k", i), ks[i]);
        return p.to_expr({{"z", var(SYM_Z)}});
    };
    std::vector<Expr> fterms{var(SYM_X), mul({rat(bb), var(SYM_T)})};
    for (int j = 0; j <= n; ++j) fterms.push_back(mul({coeff(sc.a[j]), ipow(var(SYM_Y), j)}));
    Expr f = add(std::move(fterms));

    BuiltFamily out;
    out.id = "JM-L3";
    out.W = mul({num(2), differentiate(f, SYM_X), ipow(f, -1)});
    out.guards = {{f, GuardKind::AbsoluteFloor, "f"}};
    out.exact = exact_compatible(out.W);
    return out;
}

// Logarithmic-derivative family over an exponential-plus-polynomial kernel.
inline BuiltFamily build_jm_l4(const FamilyInputs& in) {
    int n = require_n("JM-L4", in, 0);
    BindingSet b("JM-L4", in);
    Rational a = b.cst_nonzero("a"), bb = b.cst("b");
    b.finish();

    auto ring = std::make_shared<PolyRing>(std::vector<std::string>{"x", "t"});
    Expr phi = flag_poly(n, a, bb, ring).to_expr({{"x", var(SYM_X)}, {"t", var(SYM_T)}});
    Expr E = exp_e(add({mul({rat(a), var(SYM_X)}), mul({rat(bb), var(SYM_T)})}));
    Rational zc = (rational_pow(a, 3) + 2 * bb) / (3 * a);
    Expr f = add({mul({E, var(SYM_Y)}), mul({rat(zc), E, var(SYM_Z)}), phi});

    BuiltFamily out;
    out.id = "JM-L4";
    out.W = mul({num(2), differentiate(f, SYM_X), ipow(f, -1)});
    out.guards = {{f, GuardKind::AbsoluteFloor, "f"}};
    out.exact = false;  // the exponential kernel is intrinsic
    return out;
}

}  // namespace jmkd
