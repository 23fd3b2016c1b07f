#include "doctest.h"

#include <jmkd/coeffs_jm.hpp>

using namespace jmkd;

namespace {

Poly var(const std::shared_ptr<PolyRing>& ring, const std::string& name) {
    return Poly::variable(ring.get(), name);
}

bool all_match(const DiscrepancyReport& rep) {
    for (const auto& e : rep)
        if (!e.match) return false;
    return true;
}

}  // namespace

TEST_CASE("shifted-time Laurent chain: low-order coefficients") {
    LaurentChain ch = jm_laurent_coeffs(1, 1);
    Poly beta = var(ch.ring, "beta");
    Poly g1 = var(ch.ring, "gamma1"), g0 = var(ch.ring, "gamma0");
    Poly gm1 = var(ch.ring, "gamma_m1"), gm2 = var(ch.ring, "gamma_m2");
    Poly gm3 = var(ch.ring, "gamma_m3");

    CHECK(ch.B.at(1) == g1);
    CHECK(ch.B.at(0) == g1 * beta.scaled(Rational(-1, 2)) + g0);
    CHECK(ch.B.at(-1) ==
          g1 * beta * beta.scaled(Rational(-1, 2)) + g0 * beta.scaled(2) + gm1);
    CHECK(ch.B.at(-2) == gm2);
    CHECK(ch.B.at(-3) == gm2 * beta.scaled(Rational(8, 5)) + gm3);
}

TEST_CASE("shifted-time Laurent chain: bridge at n = 0") {
    LaurentChain ch = jm_laurent_coeffs(0, 0);
    Poly expected = var(ch.ring, "gamma0") * var(ch.ring, "beta").scaled(2) +
                    var(ch.ring, "gamma_m1");
    CHECK(ch.B.at(-1) == expected);
}

TEST_CASE("shifted-time Laurent chain: closed forms agree through n = 5") {
    for (int n = 0; n <= 5; ++n) {
        DiscrepancyReport rep = jm_laurent_report(n, 3);
        CHECK(rep.size() == static_cast<std::size_t>(n + 1 + 1 + 4));
        CHECK(all_match(rep));
    }
}

TEST_CASE("descending-power chain: degree-4 coefficients") {
    DescendingPowers dp = jm_xpoly_coeffs(4);
    Poly I = var(dp.ring, "I");
    Poly g4 = var(dp.ring, "gamma4"), g3 = var(dp.ring, "gamma3"), g2 = var(dp.ring, "gamma2");
    CHECK(dp.P[0] == g4);
    CHECK(dp.P[1] == (g4 * I + g3).scaled(4));
    CHECK(dp.P[2] == g4 * I * I.scaled(6) + g3 * I.scaled(12) + g2.scaled(12));
}

TEST_CASE("descending-power chain: closed forms agree through n = 5") {
    for (int n = 3; n <= 5; ++n) CHECK(all_match(jm_xpoly_report(n)));
}

TEST_CASE("time chain for the x-polynomial kernel: small degrees") {
    TimeChain tc1 = jm_log_poly_coeffs(1);
    {
        Poly t = var(tc1.ring, "t"), k = var(tc1.ring, "k"), k0 = var(tc1.ring, "k0");
        CHECK(tc1.A[1] == Poly::constant(tc1.ring.get(), 1));
        CHECK(tc1.A[0] == k * t.scaled(Rational(3, 2)) + k0);
    }
    TimeChain tc2 = jm_log_poly_coeffs(2);
    {
        Poly t = var(tc2.ring, "t"), k = var(tc2.ring, "k");
        Poly k0 = var(tc2.ring, "k0"), k1 = var(tc2.ring, "k1");
        CHECK(tc2.A[2] == Poly::constant(tc2.ring.get(), 1));
        CHECK(tc2.A[1] == k * t.scaled(3) + k1.scaled(2));
        CHECK(tc2.A[0] == k * k * t * t.scaled(Rational(9, 4)) + k * k1 * t.scaled(3) +
                              k0.scaled(2));
    }
}

TEST_CASE("time chain: closed forms agree through n = 5") {
    for (int n = 1; n <= 5; ++n) CHECK(all_match(jm_log_poly_report(n)));
}

TEST_CASE("shifted y-polynomial chain: degree-2 coefficients") {
    ShiftChain sc = jm_ypoly_g_coeffs(2);
    Poly z = var(sc.ring, "z"), b = var(sc.ring, "b");
    Poly k0 = var(sc.ring, "k0"), k1 = var(sc.ring, "k1"), k2 = var(sc.ring, "k2");
    CHECK(sc.a[2] == k0);
    CHECK(sc.a[1] == (b * k0 * z + b * k1).scaled(Rational(4, 3)));
    CHECK(sc.a[0] == (b * b * k0 * z * z).scaled(Rational(4, 9)) +
                         (b * b * k1 * z).scaled(Rational(8, 9)) + (b * b * k2).scaled(Rational(8, 9)));
}

TEST_CASE("shifted y-polynomial chain: closed forms agree through n = 5") {
    for (int n = 2; n <= 5; ++n) CHECK(all_match(jm_ypoly_g_report(n)));
}

TEST_CASE("exponential-kernel polynomial: explicit low degrees") {
    auto ring = std::make_shared<PolyRing>(std::vector<std::string>{"x", "t"});
    Poly x = Poly::variable(ring.get(), "x"), t = Poly::variable(ring.get(), "t");

    CHECK(flag_poly(0, Rational(1), Rational(1), ring) == Poly::constant(ring.get(), 1));

    // degree 1: x + ((b - a^3)/a) t
    Rational a(2), b(5);
    CHECK(flag_poly(1, a, b, ring) == x + t.scaled((b - rational_pow(a, 3)) / a));

    // degree 2 with a = b = 1: the drift vanishes, leaving x^2 + 3t
    CHECK(flag_poly(2, Rational(1), Rational(1), ring) == x * x + t.scaled(3));

    // degree 2 general: x^2 + kappa t x + kappa^2 t^2 / 4 + 3 a t, kappa = 2(b-a^3)/a
    Rational kappa = 2 * (b - rational_pow(a, 3)) / a;
    CHECK(flag_poly(2, a, b, ring) ==
          x * x + (x * t).scaled(kappa) + (t * t).scaled(kappa * kappa / 4) + t.scaled(3 * a));
}

TEST_CASE("exponential-kernel polynomial: defining equation holds exactly") {
    auto ring = std::make_shared<PolyRing>(std::vector<std::string>{"x", "t"});
    std::vector<std::pair<Rational, Rational>> abs{
        {Rational(1), Rational(1)}, {Rational(2), Rational(-3)}, {Rational(1, 2), Rational(7, 3)}};
    for (const auto& [a, b] : abs)
        for (int n = 0; n <= 8; ++n) {
            Poly phi = flag_poly(n, a, b, ring);
            Poly px = phi.deriv("x");
            Poly pxx = px.deriv("x");
            Poly res = pxx.deriv("x") - pxx.scaled(3 * a) + px.scaled(3 * a * a) +
                       phi.deriv("t").scaled(2) - px.scaled((rational_pow(a, 3) + 2 * b) / a);
            CHECK(res.is_zero());
        }
}

TEST_CASE("exponential-kernel polynomial: literal closed form diverges") {
    auto ring = std::make_shared<PolyRing>(std::vector<std::string>{"x", "t"});
    Poly x = Poly::variable(ring.get(), "x");
    Rational a(1), b(1);
    CHECK(flag_poly_closed(0, a, b, ring).is_zero());
    CHECK(flag_poly_closed(1, a, b, ring).is_zero());
    CHECK(flag_poly_closed(2, a, b, ring) == (x * x).scaled(2));

    for (int n = 0; n <= 4; ++n) {
        DiscrepancyReport rep = jm_flag_report(n, a, b);
        REQUIRE(rep.size() == 1);
        CHECK_FALSE(rep[0].match);
        CHECK_FALSE(rep[0].note.empty());
    }
}

TEST_CASE("chain reports are deterministic") {
    auto dump = [](const DiscrepancyReport& rep) { return to_json(rep).dump(); };
    CHECK(dump(jm_laurent_report(3, 2)) == dump(jm_laurent_report(3, 2)));
    CHECK(dump(jm_log_poly_report(4)) == dump(jm_log_poly_report(4)));
}
