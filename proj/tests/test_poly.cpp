#include <doctest.h>

#include <jmkd/poly.hpp>

using namespace jmkd;

TEST_CASE("arithmetic in Q[x,t]") {
    PolyRing ring({"x", "t"});
    Poly x = Poly::variable(&ring, "x");
    Poly t = Poly::variable(&ring, "t");
    Poly one = Poly::constant(&ring, 1);

    Poly sq = (x + t) * (x + t);
    CHECK(sq == x * x + x * t + x * t + t * t);
    CHECK(sq.coeff({1, 1}) == 2);
    CHECK((x - x).is_zero());
    CHECK((x + t).pow(2) == sq);
    CHECK((x + one).pow(0) == one);
    CHECK(sq.scaled(Rational(1, 2)).coeff({2, 0}) == Rational(1, 2));
}

TEST_CASE("derivation and integration") {
    PolyRing ring({"x", "t"});
    Poly x = Poly::variable(&ring, "x");
    Poly t = Poly::variable(&ring, "t");
    Poly p = x.pow(3) + x * t;

    CHECK(p.deriv("x") == x.pow(2).scaled(3) + t);
    CHECK(p.deriv("t") == x);
    CHECK(p.deriv("x").integrate("x") == p);
    CHECK(x.pow(2).integrate("x") == x.pow(3).scaled(Rational(1, 3)));
    // integration then derivation is the identity
    CHECK(p.integrate("t").deriv("t") == p);
}

TEST_CASE("substitution and evaluation") {
    PolyRing ring({"x", "t"});
    Poly x = Poly::variable(&ring, "x");
    Poly t = Poly::variable(&ring, "t");
    Poly p = x.pow(2) + t.scaled(3) + Poly::constant(&ring, 1);

    Poly at0 = p.substitute("t", 0);
    CHECK(at0 == x.pow(2) + Poly::constant(&ring, 1));
    CHECK(p.substitute("x", Rational(1, 2)).coeff({0, 0}) == Rational(5, 4));
    CHECK(p.eval({{"x", 2}, {"t", Rational(1, 3)}}) == 6);
}

TEST_CASE("printing is deterministic and readable") {
    PolyRing ring({"x"});
    Poly x = Poly::variable(&ring, "x");
    Poly p = x.pow(2) + x.scaled(2) + Poly::constant(&ring, 1);
    CHECK(p.to_string() == "1 + 2*x + x^2");
    CHECK(Poly(&ring).to_string() == "0");
    CHECK(x.pow(2).scaled(Rational(-1, 3)).to_string() == "-1/3*x^2");
}

TEST_CASE("expression export matches directly built expressions") {
    PolyRing ring({"x", "t"});
    Poly x = Poly::variable(&ring, "x");
    Poly t = Poly::variable(&ring, "t");
    Poly p = (x + t).pow(2);

    Expr ex = var("x"), et = var("t");
    Expr built = p.to_expr({{"x", ex}, {"t", et}});
    CHECK(built == add({ipow(ex, 2), mul({num(2), ex, et}), ipow(et, 2)}));

    // images may be arbitrary expressions
    Expr shifted = p.to_expr({{"x", add({ex, num(1)})}, {"t", et}});
    CHECK(shifted == add({ipow(add({ex, num(1)}), 2), mul({num(2), add({ex, num(1)}), et}),
                          ipow(et, 2)}));
}

TEST_CASE("ring discipline") {
    PolyRing a({"x"}), b({"x"});
    Poly pa = Poly::variable(&a, "x");
    Poly pb = Poly::variable(&b, "x");
    CHECK_THROWS_AS(pa + pb, std::invalid_argument);
    CHECK_THROWS_AS(Poly::variable(&a, "nope"), std::invalid_argument);
    CHECK_THROWS_AS(PolyRing({"x", "x"}), std::invalid_argument);
    CHECK_THROWS_AS(pa.pow(-1), std::invalid_argument);
}
