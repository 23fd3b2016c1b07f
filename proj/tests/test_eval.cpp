#include <doctest.h>

#include <jmkd/eval.hpp>

#include <numbers>

using namespace jmkd;

static Expr X = var("x");
static Expr Y = var("y");
static Expr T = var("t");

static double eval0(Expr e, const Point& p) {
    Bindings b;
    return evaluate(e, p, b);
}

TEST_CASE("polynomial evaluation at a point") {
    Expr e = add({ipow(X, 2), num(3)});
    CHECK(eval0(e, {.x = 2}) == doctest::Approx(7.0).epsilon(1e-15));
    CHECK(eval0(mul({X, Y}), {.x = 3, .y = -2}) == doctest::Approx(-6.0));
}

TEST_CASE("named constants come from bindings") {
    Bindings b;
    b.consts["a"] = Rational(5, 2);
    Expr e = mul({named_const("a"), X});
    CHECK(evaluate(e, {.x = 2}, b) == doctest::Approx(5.0));
    Bindings empty;
    CHECK_THROWS_AS(evaluate(e, {.x = 2}, empty), EvalError);
}

TEST_CASE("antiderivative of 2t from 0 to 3 is 9") {
    Expr a = antideriv(mul({num(2), T}), SYM_T);
    CHECK(eval0(a, {.t = 3}) == doctest::Approx(9.0).epsilon(1e-12));
    // lower limit above the evaluation point flips the sign
    Expr shifted = antideriv(mul({num(2), T}), SYM_T, Rational(4));
    CHECK(eval0(shifted, {.t = 3}) == doctest::Approx(9.0 - 16.0).epsilon(1e-12));
}

TEST_CASE("antiderivative of exp matches the closed form") {
    Expr a = antideriv(exp_e(T), SYM_T);
    CHECK(eval0(a, {.t = 1}) == doctest::Approx(std::numbers::e - 1.0).epsilon(1e-12));
}

TEST_CASE("nested antiderivatives rebind the shared variable") {
    // integral_0^1 ( integral_0^s 1 ) ds = 1/2, both levels keyed on y
    Expr inner = antideriv(one(), SYM_Y);
    Expr outer = antideriv(inner, SYM_Y);
    CHECK(eval0(outer, {.y = 1}) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("antiderivative integrand sees outer variables") {
    // integral_0^t x*s ds = x t^2/2
    Expr a = antideriv(mul({X, T}), SYM_T);
    CHECK(eval0(a, {.t = 2, .x = 3}) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("mixed partial of sin(x)sin(y) at pi/6") {
    Expr e = mul({sin_e(X), sin_e(Y)});
    Expr d = differentiate(differentiate(e, SYM_X), SYM_Y);
    double v = eval0(d, {.x = std::numbers::pi / 6, .y = std::numbers::pi / 6});
    CHECK(v == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("parameter calls evaluate the bound body and its derivatives") {
    Bindings b;
    std::uint32_t s = sym("s");
    b.params["f"] = ParamBinding{{s}, ipow(var(s), 2)};
    Expr call = param_call("f", {X});
    CHECK(evaluate(call, {.x = 3}, b) == doctest::Approx(9.0));
    Expr dcall = param_call("f", {X}, {1});
    CHECK(evaluate(dcall, {.x = 3}, b) == doctest::Approx(6.0));
    // chain through the argument: d/dx f(x^2) = 2x f'(x^2) = 4x^3
    Expr comp = differentiate(param_call("f", {ipow(X, 2)}), SYM_X);
    CHECK(evaluate(comp, {.x = 2}, b) == doctest::Approx(32.0));
}

TEST_CASE("unbound things raise typed errors") {
    try {
        eval0(var("q"), {});
        FAIL("expected EvalError");
    } catch (const EvalError& e) {
        CHECK(e.code == EvalError::Code::UnboundVariable);
    }
    try {
        Bindings b;
        evaluate(param_call("nope", {X}), {.x = 1}, b);
        FAIL("expected EvalError");
    } catch (const EvalError& e) {
        CHECK(e.code == EvalError::Code::UnboundParam);
    }
    try {
        Bindings b;
        std::uint32_t s = sym("s");
        b.params["f"] = ParamBinding{{s}, var(s)};
        evaluate(param_call("f", {X, Y}), {.x = 1}, b);
        FAIL("expected EvalError");
    } catch (const EvalError& e) {
        CHECK(e.code == EvalError::Code::ArityMismatch);
    }
}

TEST_CASE("singular points raise typed errors") {
    try {
        eval0(ipow(X, -1), {.x = 0});
        FAIL("expected EvalError");
    } catch (const EvalError& e) {
        CHECK(e.code == EvalError::Code::SingularPoint);
    }
    CHECK_THROWS_AS(eval0(log_e(X), {.x = -1}), EvalError);
    CHECK_THROWS_AS(eval0(rpow(X, Rational(1, 2)), {.x = -4}), EvalError);
}

TEST_CASE("repeated evaluation at different points is consistent") {
    Bindings b;
    Evaluator ev(b);
    Expr e = add({ipow(X, 3), mul({num(2), X, Y})});
    CHECK(ev.at_point(e, {.x = 1, .y = 1}) == doctest::Approx(3.0));
    CHECK(ev.at_point(e, {.x = 2, .y = -1}) == doctest::Approx(4.0));
    CHECK(ev.at_point(e, {.x = 1, .y = 1}) == doctest::Approx(3.0));
}

TEST_CASE("exact evaluation over rationals") {
    Expr e = add({ipow(X, 2), rat(Rational(3, 4))});
    CHECK(evaluate_exact(e, {.x = Rational(1, 2)}, {}) == Rational(1));
    CHECK(exact_compatible(e));
    CHECK_FALSE(exact_compatible(exp_e(X)));
    CHECK_FALSE(exact_compatible(add({X, rpow(Y, Rational(1, 2))})));
    try {
        evaluate_exact(exp_e(X), {.x = 1}, {});
        FAIL("expected EvalError");
    } catch (const EvalError& e2) {
        CHECK(e2.code == EvalError::Code::ExactUnsupported);
    }
}

TEST_CASE("exact parameter calls with rational bodies") {
    Bindings b;
    std::uint32_t s = sym("s");
    b.params["g"] = ParamBinding{{s}, add({ipow(var(s), 3), num(1)})};
    Expr call = param_call("g", {X}, {1});  // g'(x) = 3x^2
    CHECK(evaluate_exact(call, {.x = Rational(2, 3)}, b) == Rational(4, 3));
}
