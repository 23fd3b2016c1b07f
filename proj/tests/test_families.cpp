#include "doctest.h"

#include <jmkd/eval.hpp>
#include <jmkd/families.hpp>
#include <jmkd/parser.hpp>

#include <cmath>

using namespace jmkd;

namespace {

const std::vector<std::string> TXYZ{"t", "x", "y", "z"};

Expr P(const std::string& src) { return parse_expr(src, TXYZ); }

Expr T() { return var(SYM_T); }
Expr X() { return var(SYM_X); }
Expr Y() { return var(SYM_Y); }
Expr Z() { return var(SYM_Z); }

// Left-hand side of the Jimbo-Miwa equation applied to a candidate field.
Expr jm_lhs(Expr W) {
    Expr Wx = differentiate(W, SYM_X);
    Expr Wy = differentiate(W, SYM_Y);
    return add({differentiate(differentiate(differentiate(Wx, SYM_X), SYM_X), SYM_Y),
                mul({num(3), differentiate(Wx, SYM_Y), Wx}),
                mul({num(3), Wy, differentiate(Wx, SYM_X)}),
                mul({num(2), differentiate(Wy, SYM_T)}),
                mul({num(-3), differentiate(Wx, SYM_Z)})});
}

// Potential form of the Konopelchenko-Dubrovsky equation.
Expr kd_lhs(Expr W, const Rational& a, const Rational& b) {
    Expr Wx = differentiate(W, SYM_X);
    Expr Wxx = differentiate(Wx, SYM_X);
    Expr Wy = differentiate(W, SYM_Y);
    return add({differentiate(Wx, SYM_T),
                mul({num(-1), differentiate(differentiate(Wxx, SYM_X), SYM_X)}),
                mul({rat(-6 * b), Wx, Wxx}),
                mul({rat(Rational(3, 2) * a * a), Wx, Wx, Wxx}),
                mul({num(-3), differentiate(Wy, SYM_Y)}),
                mul({rat(3 * a), Wxx, Wy})});
}

void check_exact_zero(Expr lhs, const std::vector<RatPoint>& pts) {
    for (const auto& p : pts) CHECK(evaluate_exact(lhs, p, {}) == 0);
}

void check_numeric_zero(Expr lhs, const std::vector<Point>& pts, double tol) {
    for (const auto& p : pts) CHECK(std::abs(evaluate(lhs, p, {})) < tol);
}

}  // namespace

TEST_CASE("registry lists every family with its binding surface") {
    const auto& reg = family_registry();
    REQUIRE(reg.size() == 14);
    std::vector<std::string> ids;
    for (const auto& s : reg) ids.push_back(s.id);
    CHECK(ids == std::vector<std::string>{"JM-P2A", "JM-P2B", "JM-PN", "JM-Y1", "JM-Y2", "JM-YN",
                                          "JM-L1", "JM-L2", "JM-L3", "JM-L4", "KD-Q1", "KD-Q2",
                                          "KD-LX", "KD-LY"});
    for (const auto& s : reg) {
        CHECK((s.equation == "JM" || s.equation == "KD"));
        CHECK(!s.form.empty());
    }
    CHECK(family_spec("KD-Q2").constants == "a nonzero, b");
    CHECK(family_spec("JM-YN").degree == "n >= 2");
    CHECK_THROWS_WITH_AS(family_spec("JM-XX"), "unknown family id \"JM-XX\"", FamilyError);
}

TEST_CASE("dispatcher routes every id and rejects unknown ones") {
    for (const auto& s : family_registry()) {
        FamilyInputs in;
        if (s.degree == "n >= 0")
            in.n = 0;
        else if (!s.degree.empty())
            in.n = s.degree.back() - '0';
        if (s.id[0] == 'K') in.constants["a"] = 1;
        if (s.id == "JM-Y2") in.functions["b"] = T();
        if (s.id == "JM-YN") in.functions["phi"] = T();
        if (s.id == "JM-L4") in.constants["a"] = 1;
        BuiltFamily fam = build_family(s.id, in);
        CHECK(fam.id == s.id);
        CHECK(fam.W != nullptr);
        CHECK(equation_name(fam.equation) == s.equation);
    }
    CHECK_THROWS_WITH_AS(build_family("KD-Q3", {}), "unknown family id \"KD-Q3\"", FamilyError);
}

TEST_CASE("unknown and malformed bindings are rejected by name") {
    FamilyInputs in;
    in.functions["bogus"] = X();
    CHECK_THROWS_WITH_AS(build_jm_l2(in), "JM-L2: unknown function binding \"bogus\"",
                         FamilyError);

    FamilyInputs in2;
    in2.constants["q"] = 1;
    CHECK_THROWS_WITH_AS(build_jm_l2(in2), "JM-L2: unknown constant binding \"q\"", FamilyError);

    FamilyInputs in3;
    in3.functions["c"] = Z();
    CHECK_THROWS_WITH_AS(build_jm_y1(in3), "JM-Y1: function \"c\" must not depend on \"z\"",
                         FamilyError);

    FamilyInputs in4;
    in4.constants["a"] = 1;
    in4.functions["psi"] = Y();
    CHECK_THROWS_WITH_AS(build_kd_q1(in4), "KD-Q1: function \"psi\" must not depend on \"y\"",
                         FamilyError);
}

TEST_CASE("degree argument is demanded, bounded, or refused per family") {
    CHECK_THROWS_WITH_AS(build_jm_pn({}), "JM-PN: requires degree n >= 3 (none given)",
                         FamilyError);
    FamilyInputs low;
    low.n = 1;
    low.functions["phi"] = T();
    CHECK_THROWS_WITH_AS(build_jm_yn(low), "JM-YN: requires degree n >= 2, got 1", FamilyError);
    FamilyInputs stray;
    stray.n = 2;
    CHECK_THROWS_WITH_AS(build_jm_y1(stray), "JM-Y1: does not take a degree n", FamilyError);
    CHECK_THROWS_WITH_AS(build_kd_ly({}), "KD-LY: requires degree n >= 0 (none given)",
                         FamilyError);
}

TEST_CASE("required constants and the sign slot are validated") {
    CHECK_THROWS_WITH_AS(build_kd_q1({}), "KD-Q1: constant \"a\" is required and must be nonzero",
                         FamilyError);
    FamilyInputs zero_a;
    zero_a.n = 1;
    zero_a.constants["a"] = 0;
    CHECK_THROWS_WITH_AS(build_kd_lx(zero_a),
                         "KD-LX: constant \"a\" is required and must be nonzero", FamilyError);
    FamilyInputs l4;
    l4.n = 0;
    CHECK_THROWS_WITH_AS(build_jm_l4(l4), "JM-L4: constant \"a\" is required and must be nonzero",
                         FamilyError);

    FamilyInputs bad_sign;
    bad_sign.n = 1;
    bad_sign.constants["a"] = 1;
    bad_sign.constants["sign"] = 2;
    CHECK_THROWS_WITH_AS(build_kd_lx(bad_sign), "KD-LX: constant \"sign\" must be +1 or -1",
                         FamilyError);
}

TEST_CASE("square-root families require their leading profile") {
    CHECK_THROWS_WITH_AS(build_jm_y2({}),
                         "JM-Y2: function \"b\" is required and must not be identically zero",
                         FamilyError);
    FamilyInputs in;
    in.n = 3;
    CHECK_THROWS_WITH_AS(build_jm_yn(in),
                         "JM-YN: function \"phi\" is required and must not be identically zero",
                         FamilyError);
}

TEST_CASE("shifted-time Laurent tail demands a y-independent shift") {
    FamilyInputs in;
    in.n = 0;
    in.functions["beta"] = Y();
    in.functions["gamma_m2"] = Z();
    CHECK_THROWS_WITH_AS(build_jm_p2b(in),
                         "JM-P2B: gamma_m<j> bindings require \"beta\" independent of y "
                         "(the Laurent tail terminates only then)",
                         FamilyError);

    in.functions["beta"] = Z();  // y-free shift: the tail terminates exactly
    CHECK(build_jm_p2b(in).W != nullptr);

    FamilyInputs no_tail;
    no_tail.n = 0;
    no_tail.functions["beta"] = Y();  // y-dependent shift without tail seeds is fine
    CHECK(build_jm_p2b(no_tail).W != nullptr);
}

TEST_CASE("degenerate instances collapse to frozen closed forms") {
    CHECK(build_jm_y1({}).W == P("-x*y/z"));

    FamilyInputs pn;
    pn.n = 3;
    CHECK(build_jm_pn(pn).W == P("-x*y/z"));

    CHECK(build_jm_l2({}).W == P("2/x"));

    FamilyInputs l2;
    l2.constants["C"] = 1;
    l2.functions["rho"] = var(SYM_S);
    CHECK(build_jm_l2(l2).W == P("2/(x + y + t + 2/3*z)"));

    FamilyInputs l1;
    l1.n = 1;
    l1.constants["k"] = 1;
    l1.constants["k0"] = 2;
    CHECK(build_jm_l1(l1).W == P("2/(x + 3/2*t + 2)"));

    CHECK(is_zero(build_jm_p2a({}).W));
    CHECK(build_jm_p2b(FamilyInputs{0, {}, {}}).W == P("2/9 * x^2 / t"));
}

TEST_CASE("quadratic slope family reproduces its zero-binding field") {
    FamilyInputs in;
    in.constants["a"] = 1;
    in.constants["b"] = 1;
    BuiltFamily fam = build_kd_q1(in);
    CHECK(fam.W == P("x^2/y + 2*x + 2*y"));
    CHECK(fam.exact);
    CHECK(fam.kd_a == 1);
    CHECK(fam.kd_b == 1);

    KdPair pair = kd_pair(fam);
    CHECK(pair.u == P("2*x/y + 2"));
    CHECK(pair.v == P("2 - x^2/y^2"));

    in.constants["a"] = 2;
    in.constants["b"] = 3;
    CHECK(build_kd_q1(in).W == P("1/2*x^2/y + 3/2*x + 9/4*y"));
}

TEST_CASE("travelling-coordinate log family matches frozen low-degree kernels") {
    FamilyInputs in;
    in.n = 1;
    in.constants["a"] = 2;
    in.constants["b"] = 1;
    in.constants["b0"] = 3;
    BuiltFamily lx1 = build_kd_lx(in);
    CHECK(lx1.W == P("log(x + y + 3*t + 3)"));
    CHECK(!lx1.exact);

    FamilyInputs in2;
    in2.n = 2;
    in2.constants["a"] = 2;
    in2.constants["b"] = 0;
    CHECK(build_kd_lx(in2).W == P("log(x^2 - 2*y)"));
}

TEST_CASE("mirrored log branch is the sign reflection of the plus branch") {
    FamilyInputs in;
    in.n = 1;
    in.constants["a"] = 2;
    in.constants["b"] = 1;
    in.constants["b0"] = 3;
    BuiltFamily plus = build_kd_lx(in);

    in.constants["sign"] = -1;
    BuiltFamily minus = build_kd_lx(in);
    CHECK(minus.W == kd_sign_reflect(plus.W));
    CHECK(kd_sign_reflect(minus.W) == plus.W);  // involution
    CHECK(kd_sign_reflect(kd_sign_reflect(minus.W)) == minus.W);

    FamilyInputs ly;
    ly.n = 1;
    ly.constants["a"] = 1;
    ly.constants["b"] = 1;
    BuiltFamily ly_plus = build_kd_ly(ly);
    ly.constants["sign"] = -1;
    CHECK(build_kd_ly(ly).W == kd_sign_reflect(ly_plus.W));
}

TEST_CASE("exponential-row log family matches its hand-derived degree-1 field") {
    FamilyInputs in;
    in.n = 1;
    in.constants["a"] = 1;
    in.constants["b"] = 1;
    BuiltFamily fam = build_kd_ly(in);
    // Rows descend from g0 = x + 12t: the degree-1 row is the constant -2,
    // so W = 2 log[e^(2x+8t) (x + 12t - 2y)].
    auto closed = [](double t, double x, double y) {
        return 2 * (2 * x + 8 * t) + 2 * std::log(x + 12 * t - 2 * y);
    };
    for (Point p : {Point{0.1, 1.0, 0.3, 0.0}, Point{0.25, 0.5, -0.4, 1.0},
                    Point{0.0, 2.0, 0.9, -1.0}}) {
        CHECK(evaluate(fam.W, p, {}) == doctest::Approx(closed(p.t, p.x, p.y)).epsilon(1e-12));
    }

    FamilyInputs flat;
    flat.n = 0;
    flat.constants["a"] = 1;
    flat.constants["b"] = 1;
    BuiltFamily f0 = build_kd_ly(flat);
    Point p{0.3, 0.7, 2.0, 0.0};
    CHECK(evaluate(f0.W, p, {}) == doctest::Approx(2 * (2 * 0.7 + 8 * 0.3)).epsilon(1e-12));
}

TEST_CASE("the two square-root families share one core") {
    FamilyInputs y2;
    y2.functions["b"] = add({ipow(T(), 2), num(1)});
    y2.functions["h"] = ipow(Z(), 3);
    y2.functions["eta"] = T();
    y2.functions["g"] = ipow(T(), 3);
    y2.functions["l"] = mul({Z(), T()});

    FamilyInputs yn;
    yn.n = 2;
    yn.functions["phi"] = add({ipow(T(), 2), num(1)});
    yn.functions["h"] = ipow(Z(), 3);
    yn.functions["g"] = T();
    yn.functions["f"] = ipow(T(), 3);
    yn.functions["eta"] = mul({Z(), T()});

    BuiltFamily a = build_jm_y2(y2), b = build_jm_yn(yn);
    CHECK(a.W == b.W);
    CHECK(a.guards.size() == b.guards.size());
    CHECK(a.guards[0].g == b.guards[0].g);
    CHECK(!a.exact);
}

TEST_CASE("rational kernel annihilates its defining operator identically") {
    Expr c = T(), d = mul({num(2), T()});
    CHECK(burgers_kernel(zero(), zero()) == P("-x/z"));
    CHECK(burgers_kernel(c, d) == P("-(x - t)/(z - 2*t)"));

    // A_x^2 + A A_xx - A_xz = 0 holds structurally for any profiles.
    Expr A = burgers_kernel(c, d);
    Expr Ax = differentiate(A, SYM_X);
    Expr lhs = add({mul({Ax, Ax}), mul({A, differentiate(Ax, SYM_X)}),
                    mul({num(-1), differentiate(Ax, SYM_Z)})});
    CHECK(is_zero(lhs));
}

TEST_CASE("built fields annihilate their equation exactly at rational points") {
    std::vector<RatPoint> pts{{Rational(1, 3), Rational(5, 7), Rational(2), Rational(1)},
                              {Rational(-1, 2), Rational(1), Rational(1, 5), Rational(2, 3)},
                              {Rational(2), Rational(-3, 4), Rational(-1), Rational(-1, 7)}};

    FamilyInputs y1;
    y1.functions["c"] = T();
    y1.functions["d"] = mul({num(2), T()});
    y1.functions["f"] = add({T(), Z()});
    BuiltFamily fy1 = build_jm_y1(y1);
    REQUIRE(fy1.exact);
    check_exact_zero(jm_lhs(fy1.W), pts);

    FamilyInputs l1;
    l1.n = 2;
    l1.constants["k"] = 1;
    l1.constants["k0"] = 2;
    l1.constants["k1"] = -1;
    l1.functions["eta"] = ipow(var(SYM_S), 2);
    BuiltFamily fl1 = build_jm_l1(l1);
    REQUIRE(fl1.exact);
    check_exact_zero(jm_lhs(fl1.W), pts);

    FamilyInputs l2;
    l2.constants["C"] = 3;
    l2.constants["k"] = 2;
    l2.functions["rho"] = ipow(var(SYM_S), 2);
    BuiltFamily fl2 = build_jm_l2(l2);
    REQUIRE(fl2.exact);
    check_exact_zero(jm_lhs(fl2.W), pts);

    FamilyInputs l3;
    l3.n = 2;
    l3.constants["b"] = 2;
    l3.constants["k0"] = 1;
    l3.constants["k1"] = -2;
    l3.constants["k2"] = 3;
    BuiltFamily fl3 = build_jm_l3(l3);
    REQUIRE(fl3.exact);
    check_exact_zero(jm_lhs(fl3.W), pts);

    FamilyInputs pn;
    pn.n = 3;
    pn.functions["g"] = T();
    pn.functions["gamma3"] = T();
    pn.functions["h"] = T();
    pn.functions["f"] = mul({Z(), T()});
    BuiltFamily fpn = build_jm_pn(pn);
    REQUIRE(fpn.exact);
    std::vector<RatPoint> pn_pts{{Rational(1, 3), Rational(5, 7), Rational(2), Rational(1)},
                                 {Rational(-1, 2), Rational(1), Rational(1, 5), Rational(2, 3)}};
    check_exact_zero(jm_lhs(fpn.W), pn_pts);

    FamilyInputs q1;
    q1.constants["a"] = 2;
    q1.constants["b"] = -1;
    q1.functions["psi"] = ipow(T(), 2);
    q1.functions["fm1"] = T();
    q1.functions["f4"] = T();
    q1.functions["phi"] = T();
    q1.functions["sigma"] = ipow(T(), 2);
    BuiltFamily fq1 = build_kd_q1(q1);
    REQUIRE(fq1.exact);
    check_exact_zero(kd_lhs(fq1.W, fq1.kd_a, fq1.kd_b), pts);

    FamilyInputs q2;
    q2.constants["a"] = 1;
    q2.constants["b"] = 2;
    q2.functions["psi"] = T();
    q2.functions["fm1"] = ipow(T(), 2);
    q2.functions["f1"] = T();
    q2.functions["sigma"] = T();
    BuiltFamily fq2 = build_kd_q2(q2);
    REQUIRE(fq2.exact);
    CHECK(fq2.guards[0].kind == GuardKind::AbsoluteFloor);
    check_exact_zero(kd_lhs(fq2.W, fq2.kd_a, fq2.kd_b), pts);
}

TEST_CASE("built fields annihilate their equation numerically off the exact path") {
    FamilyInputs y2;
    y2.functions["b"] = add({T(), num(2)});
    y2.functions["h"] = Z();
    y2.functions["eta"] = T();
    y2.functions["g"] = ipow(T(), 2);
    y2.functions["l"] = mul({Z(), T()});
    BuiltFamily fy2 = build_jm_y2(y2);
    CHECK(!fy2.exact);
    // xi = (t+2)(x + z) + t > 0 near these points
    check_numeric_zero(jm_lhs(fy2.W), {{0.2, 1.0, 0.4, 0.3}, {0.5, 0.8, -0.6, 0.5}}, 1e-7);

    FamilyInputs l4;
    l4.n = 1;
    l4.constants["a"] = 1;
    l4.constants["b"] = 1;
    BuiltFamily fl4 = build_jm_l4(l4);
    CHECK(!fl4.exact);
    check_numeric_zero(jm_lhs(fl4.W), {{0.1, 0.3, 1.0, 0.5}, {0.4, -0.2, 0.7, 1.1}}, 1e-7);

    FamilyInputs q2;
    q2.constants["a"] = 1;
    q2.constants["b"] = 1;
    q2.functions["psi"] = ipow(T(), 2);
    q2.functions["phi"] = T();
    BuiltFamily fq2 = build_kd_q2(q2);
    CHECK(!fq2.exact);
    CHECK(fq2.guards[0].kind == GuardKind::LowerBound);  // log demands S > 0
    // S = -2y + t^2 > 0 at y < 0
    check_numeric_zero(kd_lhs(fq2.W, fq2.kd_a, fq2.kd_b),
                       {{0.5, 1.0, -1.0, 0.0}, {1.0, -0.5, -2.0, 0.0}}, 1e-7);

    FamilyInputs lx;
    lx.n = 3;
    lx.constants["a"] = 2;
    lx.constants["b"] = 1;
    lx.constants["b0"] = 5;
    lx.constants["b1"] = 1;
    BuiltFamily flx = build_kd_lx(lx);
    check_numeric_zero(kd_lhs(flx.W, flx.kd_a, flx.kd_b), {{0.1, 1.0, 0.2, 0.0}}, 1e-6);

    FamilyInputs ly;
    ly.n = 2;
    ly.constants["a"] = 1;
    ly.constants["b"] = -1;
    ly.constants["c0"] = 4;
    BuiltFamily fly = build_kd_ly(ly);
    check_numeric_zero(kd_lhs(fly.W, fly.kd_a, fly.kd_b), {{0.1, 0.4, 0.2, 0.0}}, 1e-6);

    // Iterated-integral branch: quadrature-backed evaluation of the residual.
    FamilyInputs p2a;
    p2a.functions["alpha"] = mul({T(), Z()});
    p2a.functions["gamma"] = mul({Y(), Z()});
    p2a.functions["rho"] = ipow(Z(), 2);
    BuiltFamily fp2a = build_jm_p2a(p2a);
    CHECK(!fp2a.exact);
    check_numeric_zero(jm_lhs(fp2a.W), {{0.3, 0.7, 0.4, 0.6}}, 1e-6);

    FamilyInputs p2b;
    p2b.n = 1;
    p2b.functions["beta"] = add({Y(), Z()});
    p2b.functions["gamma1"] = Z();
    p2b.functions["eta"] = mul({Y(), Z()});
    BuiltFamily fp2b = build_jm_p2b(p2b);
    CHECK(!fp2b.exact);
    // domain keeps S = 9/2 t + y + z positive
    check_numeric_zero(jm_lhs(fp2b.W), {{0.4, 0.5, 0.3, 0.2}}, 1e-6);
}

TEST_CASE("guards and domains carry the constructions' validity conditions") {
    FamilyInputs p2b;
    p2b.n = 0;
    BuiltFamily fp2b = build_jm_p2b(p2b);
    REQUIRE(fp2b.guards.size() == 1);
    CHECK(fp2b.guards[0].kind == GuardKind::LowerBound);
    CHECK(fp2b.guards[0].label == "S");
    CHECK(fp2b.domain.t.lo == 0.1);
    CHECK(fp2b.domain.t.hi == 1.0);

    FamilyInputs pn;
    pn.n = 3;
    BuiltFamily fpn = build_jm_pn(pn);
    CHECK(fpn.guards.size() == 1);  // no quadrature path without phi
    CHECK(fpn.guards[0].kind == GuardKind::AbsoluteFloor);
    pn.functions["phi"] = mul({Z(), T()});
    BuiltFamily fpn2 = build_jm_pn(pn);
    CHECK(fpn2.guards.size() == 3);
    CHECK(fpn2.domain.z.lo == 0.05);

    BuiltFamily fy1 = build_jm_y1({});
    REQUIRE(fy1.guards.size() == 1);
    CHECK(fy1.guards[0].label == "z - d");
    CHECK(fy1.guards[0].g == Z());

    FamilyInputs q1;
    q1.constants["a"] = 1;
    BuiltFamily fq1 = build_kd_q1(q1);
    REQUIRE(fq1.guards.size() == 1);
    CHECK(fq1.guards[0].kind == GuardKind::AbsoluteFloor);
    CHECK(fq1.guards[0].g == Y());

    FamilyInputs lx;
    lx.n = 1;
    lx.constants["a"] = 1;
    BuiltFamily flx = build_kd_lx(lx);
    REQUIRE(flx.guards.size() == 1);
    CHECK(flx.guards[0].kind == GuardKind::LowerBound);
    CHECK(flx.guards[0].label == "f");
}

TEST_CASE("fields of the slope families never touch the spectator coordinate") {
    FamilyInputs q1;
    q1.constants["a"] = 2;
    q1.constants["b"] = 1;
    q1.functions["psi"] = ipow(T(), 2);
    q1.functions["phi"] = T();
    CHECK(!depends_on(build_kd_q1(q1).W, SYM_Z));

    FamilyInputs lx;
    lx.n = 2;
    lx.constants["a"] = 1;
    lx.constants["b"] = 1;
    CHECK(!depends_on(build_kd_lx(lx).W, SYM_Z));

    FamilyInputs ly;
    ly.n = 1;
    ly.constants["a"] = 1;
    ly.constants["b"] = 1;
    CHECK(!depends_on(build_kd_ly(ly).W, SYM_Z));
}
