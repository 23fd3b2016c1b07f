// Coefficient recurrences for the Jimbo-Miwa solution families, computed in
// exact polynomial rings with symbolic integration seeds.  Each chain exists
// twice: the recurrence and an independent closed form; report_* functions
// cross-check them coefficient by coefficient.  Two closed forms are known to
// be defective (see the notes attached to their report entries); they are
// reported as honest mismatches, and the recurrences are authoritative.
#pragma once

#include "coeff_tables.hpp"

#include <memory>

namespace jmkd {

// seed naming: gamma3, gamma0, gamma_m1 (= index -1), gamma_m2, ...
inline std::string indexed_name(const std::string& stem, int i) {
    return i < 0 ? stem + "_m" + std::to_string(-i) : stem + std::to_string(i);
}

// ---------------------------------------------------------------------------
// Quadratic-profile family with the shifted-time Laurent chain (JM-P2B).
//
// The x-linear profile is a Laurent series sum_m B_m(beta) S^m in the shifted
// time S.  Chains:  B_n = gamma_n, then for m != 0 descending
//   B_{m-1} = -((m+1)(3m-2)/(3m+1)) * Int B_m d(beta) + gamma_{m-1},
// the bridge across m = 0 being  B_{-1} = 2 * Int B_0 d(beta) + gamma_{-1}.
// Indices run n..0, -1, and -2..-(2+neg) (the -2 chain is seeded fresh).

struct LaurentChain {
    std::shared_ptr<PolyRing> ring;
    std::map<int, Poly> B;  // coefficient index -> polynomial in beta and the seeds
};

inline LaurentChain jm_laurent_coeffs(int n, int neg) {
    if (n < 0 || neg < 0) throw std::invalid_argument("jm_laurent_coeffs: bad sizes");
    std::vector<std::string> vars{"beta"};
    for (int i = n; i >= -2 - neg; --i) vars.push_back(indexed_name("gamma", i));
    auto ring = std::make_shared<PolyRing>(vars);
    auto seed = [&](int i) { return Poly::variable(ring.get(), indexed_name("gamma", i)); };

    LaurentChain out;
    out.ring = ring;
    auto step = [](int m) {  // 3m+1 is negative on the tail, so divide
        return Rational(-(m + 1) * (3 * m - 2)) / Rational(3 * m + 1);
    };
    out.B.emplace(n, seed(n));
    for (int m = n; m >= 1; --m)
        out.B.emplace(m - 1, out.B.at(m).integrate("beta").scaled(step(m)) + seed(m - 1));
    out.B.emplace(-1, out.B.at(0).integrate("beta").scaled(2) + seed(-1));
    out.B.emplace(-2, seed(-2));
    for (int m = -2; m >= -1 - neg; --m)
        out.B.emplace(m - 1, out.B.at(m).integrate("beta").scaled(step(m)) + seed(m - 1));
    return out;
}

// Closed form of the non-negative part of the chain.
inline Poly jm_laurent_closed_upper(const LaurentChain& ch, int n, int m) {
    Poly acc(ch.ring.get());
    Poly beta = Poly::variable(ch.ring.get(), "beta");
    for (int r = 0; r <= n - m; ++r) {
        Rational c = Rational((n - m + r) % 2 == 0 ? 1 : -1) * Rational(3 * m + 1, 3 * (n - r) + 1) *
                     binomial(n + 1 - r, m + 1);
        acc += (beta.pow(n - m - r) *
                Poly::variable(ch.ring.get(), indexed_name("gamma", n - r)))
                   .scaled(c);
    }
    return acc;
}

// Closed form of the bridge coefficient B_{-1}.
inline Poly jm_laurent_closed_bridge(const LaurentChain& ch, int n) {
    Poly acc = Poly::variable(ch.ring.get(), indexed_name("gamma", -1));
    Poly beta = Poly::variable(ch.ring.get(), "beta");
    for (int r = 0; r <= n; ++r) {
        Rational c = Rational((n + r) % 2 == 0 ? 2 : -2) / Rational(3 * (n - r) + 1);
        acc += (beta.pow(n - r + 1) *
                Poly::variable(ch.ring.get(), indexed_name("gamma", n - r)))
                   .scaled(c);
    }
    return acc;
}

// Closed form of the negative tail B_{-l-2}.
inline Poly jm_laurent_closed_tail(const LaurentChain& ch, int l) {
    Poly acc(ch.ring.get());
    Poly beta = Poly::variable(ch.ring.get(), "beta");
    for (int m = 0; m <= l; ++m) {
        Rational c = Rational(3 * l + 5, 3 * m + 5) * binomial(l, m);
        acc += (beta.pow(l - m) *
                Poly::variable(ch.ring.get(), indexed_name("gamma", -2 - m)))
                   .scaled(c);
    }
    return acc;
}

inline DiscrepancyReport jm_laurent_report(int n, int neg) {
    LaurentChain ch = jm_laurent_coeffs(n, neg);
    std::string inputs = "n=" + std::to_string(n) + ", tail=" + std::to_string(neg);
    DiscrepancyReport rep;
    for (int m = n; m >= 0; --m)
        rep.push_back(compare_polys("JM-P2B", "B[" + std::to_string(m) + "]", ch.B.at(m),
                                    jm_laurent_closed_upper(ch, n, m), inputs, ""));
    rep.push_back(compare_polys("JM-P2B", "B[-1]", ch.B.at(-1),
                                jm_laurent_closed_bridge(ch, n), inputs, ""));
    for (int l = 0; l <= neg; ++l)
        rep.push_back(compare_polys("JM-P2B", "B[" + std::to_string(-l - 2) + "]",
                                    ch.B.at(-l - 2), jm_laurent_closed_tail(ch, l), inputs, ""));
    return rep;
}

// ---------------------------------------------------------------------------
// Higher-degree polynomial profile (JM-PN, degree n >= 3).
//
// With I the z-antiderivative appearing in the construction,
//   P_0 = gamma_n,   P_m = (n-m+1) * Int P_{m-1} dI + (prod_{s<m}(n-s)) gamma_{n-m}
// for m = 1..n-2.  The x^(n-m) profile coefficient is P_m scaled by the
// (-z+g)^-(n-m) prefactor, which the family layer attaches.

struct DescendingPowers {
    std::shared_ptr<PolyRing> ring;
    std::vector<Poly> P;  // P[0..n-2]
};

inline DescendingPowers jm_xpoly_coeffs(int n) {
    if (n < 3) throw std::invalid_argument("jm_xpoly_coeffs: requires degree n >= 3");
    std::vector<std::string> vars{"I"};
    for (int i = n; i >= 2; --i) vars.push_back(indexed_name("gamma", i));
    auto ring = std::make_shared<PolyRing>(vars);
    auto seed = [&](int i) { return Poly::variable(ring.get(), indexed_name("gamma", i)); };

    DescendingPowers out;
    out.ring = ring;
    out.P.push_back(seed(n));
    Rational prod = 1;
    for (int m = 1; m <= n - 2; ++m) {
        prod *= n - (m - 1);
        out.P.push_back(out.P.back().integrate("I").scaled(n - m + 1) + seed(n - m).scaled(prod));
    }
    return out;
}

inline Poly jm_xpoly_closed(const DescendingPowers& dp, int n, int m) {
    Poly acc(dp.ring.get());
    Poly I = Poly::variable(dp.ring.get(), "I");
    Rational prod = 1;
    for (int s = 0; s < m; ++s) prod *= n - s;
    for (int s = 0; s <= m; ++s)
        acc += (I.pow(m - s) * Poly::variable(dp.ring.get(), indexed_name("gamma", n - s)))
                   .scaled(prod / factorial(m - s));
    return acc;
}

inline DiscrepancyReport jm_xpoly_report(int n) {
    DescendingPowers dp = jm_xpoly_coeffs(n);
    std::string inputs = "n=" + std::to_string(n);
    DiscrepancyReport rep;
    for (int m = 0; m <= n - 2; ++m)
        rep.push_back(compare_polys("JM-PN", "P[" + std::to_string(m) + "]", dp.P[m],
                                    jm_xpoly_closed(dp, n, m), inputs, ""));
    return rep;
}

// ---------------------------------------------------------------------------
// Rational-profile family with a time-dependent x-polynomial kernel (JM-L1).
//
// Kernel f = sum_{m=1}^n A_m(t) x^m + a_0(t) + (shift term added later), with
//   A_n = k_n = 1,
//   A_m = Int_0^t [ (3/2) k (m+1) A_{m+1} - (1/2)(m+3)(m+2)(m+1) A_{m+3} ] dt
//         + (prod_{l=0}^{n-m-1}(n-l)) k_m            (A_j = 0 for j > n)
//   a_0  = Int_0^t [ (3/2) k A_1 - 3 A_3 ] dt + n! k_0.
// Everything is symbolic: ring Q[t, k, k0..kn].

struct TimeChain {
    std::shared_ptr<PolyRing> ring;
    std::vector<Poly> A;  // A[0] = a_0, A[1..n]
};

inline TimeChain jm_log_poly_coeffs(int n) {
    if (n < 1) throw std::invalid_argument("jm_log_poly_coeffs: requires degree n >= 1");
    std::vector<std::string> vars{"t", "k"};
    for (int i = 0; i <= n; ++i) vars.push_back(indexed_name("k", i));
    auto ring = std::make_shared<PolyRing>(vars);
    Poly k = Poly::variable(ring.get(), "k");
    auto seed = [&](int i) { return Poly::variable(ring.get(), indexed_name("k", i)); };
    auto at = [&](const std::vector<Poly>& A, int j) {
        return j <= n ? A[j] : Poly(ring.get());
    };

    std::vector<Poly> A(n + 1, Poly(ring.get()));
    A[n] = Poly::constant(ring.get(), 1);  // leading seed is normalized away
    Rational prod = 1;
    for (int m = n - 1; m >= 1; --m) {
        prod *= n - (n - m - 1);
        Poly rate = at(A, m + 1).scaled(Rational(3 * (m + 1), 2)) * k -
                    at(A, m + 3).scaled(Rational((m + 3) * (m + 2) * (m + 1), 2));
        A[m] = rate.integrate("t") + seed(m).scaled(prod);
    }
    Poly rate0 = at(A, 1).scaled(Rational(3, 2)) * k - at(A, 3).scaled(3);
    A[0] = rate0.integrate("t") + seed(0).scaled(factorial(n));

    return {ring, std::move(A)};
}

// Closed form for A_{n-s}; the s = n case is the polynomial part of a_0.
inline Poly jm_log_poly_closed(const TimeChain& tc, int n, int s) {
    Poly acc(tc.ring.get());
    Poly t = Poly::variable(tc.ring.get(), "t");
    Poly k = Poly::variable(tc.ring.get(), "k");
    Rational prod = 1;
    for (int l = 0; l < s; ++l) prod *= n - l;
    for (int r = 0; r <= s; ++r)
        for (int p = 0; p <= r / 2; ++p) {
            Rational c = prod * Rational(p % 2 == 0 ? 1 : -1) * binomial(s - r, p) *
                         rational_pow(Rational(1, 2), p) * rational_pow(Rational(3, 2), s - r - p) /
                         factorial(s - r);
            if (c == 0) continue;
            Poly kidx = (n - r + 2 * p == n)
                            ? Poly::constant(tc.ring.get(), 1)  // leading seed is 1
                            : Poly::variable(tc.ring.get(), indexed_name("k", n - r + 2 * p));
            acc += (t.pow(s - r) * k.pow(s - r - p) * kidx).scaled(c);
        }
    return acc;
}

inline DiscrepancyReport jm_log_poly_report(int n) {
    TimeChain tc = jm_log_poly_coeffs(n);
    std::string inputs = "n=" + std::to_string(n);
    DiscrepancyReport rep;
    for (int s = 0; s <= n; ++s) {
        std::string idx = (s == n) ? "a0 (polynomial part)" : "A[" + std::to_string(n - s) + "]";
        rep.push_back(compare_polys("JM-L1", idx, tc.A[n - s], jm_log_poly_closed(tc, n, s),
                                    inputs, ""));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Rational-profile family with a y-polynomial kernel shifted in z (JM-L3).
//
//   a_n = k_0,
//   a_{n-m} = (2b/3)(n-m+1) Int_0^z a_{n-m+1} dz
//             + (2b/3)^m (prod_{s<m}(n-s)) k_m       for m = 1..n.
// Symbolic ring Q[z, b, k0..kn]; b stays exact through the family layer.

struct ShiftChain {
    std::shared_ptr<PolyRing> ring;
    std::vector<Poly> a;  // a[j] is the y^j coefficient, j = 0..n
};

inline ShiftChain jm_ypoly_g_coeffs(int n) {
    if (n < 2) throw std::invalid_argument("jm_ypoly_g_coeffs: requires degree n >= 2");
    std::vector<std::string> vars{"z", "b"};
    for (int i = 0; i <= n; ++i) vars.push_back(indexed_name("k", i));
    auto ring = std::make_shared<PolyRing>(vars);
    Poly b = Poly::variable(ring.get(), "b");
    auto seed = [&](int i) { return Poly::variable(ring.get(), indexed_name("k", i)); };

    std::vector<Poly> a(n + 1, Poly(ring.get()));
    a[n] = seed(0);
    Rational prod = 1;
    for (int m = 1; m <= n; ++m) {
        prod *= n - (m - 1);
        a[n - m] = a[n - m + 1].integrate("z").scaled(Rational(2 * (n - m + 1), 3)) * b +
                   (b.pow(m) * seed(m)).scaled(prod * rational_pow(Rational(2, 3), m));
    }
    return {ring, std::move(a)};
}

inline Poly jm_ypoly_g_closed(const ShiftChain& sc, int n, int m) {
    Poly acc(sc.ring.get());
    Poly z = Poly::variable(sc.ring.get(), "z");
    Poly b = Poly::variable(sc.ring.get(), "b");
    Rational prod = 1;
    for (int s = 0; s < m; ++s) prod *= n - s;
    for (int r = 0; r <= m; ++r) {
        Rational c = prod * rational_pow(Rational(2, 3), m) / factorial(m - r);
        acc += (z.pow(m - r) * b.pow(m) *
                Poly::variable(sc.ring.get(), indexed_name("k", r)))
                   .scaled(c);
    }
    return acc;
}

inline DiscrepancyReport jm_ypoly_g_report(int n) {
    ShiftChain sc = jm_ypoly_g_coeffs(n);
    std::string inputs = "n=" + std::to_string(n);
    DiscrepancyReport rep;
    for (int m = 0; m <= n; ++m)
        rep.push_back(compare_polys("JM-L3", "a[" + std::to_string(n - m) + "]", sc.a[n - m],
                                    jm_ypoly_g_closed(sc, n, m), inputs, ""));
    return rep;
}

// ---------------------------------------------------------------------------
// Rational-profile family with an exponential kernel (JM-L4).
//
// Kernel f = E*y + c*E*z + phi(x,t) with E = exp(ax+bt); the polynomial
// phi = sum_j p_j(t) x^j obeys  p_n = 1  and, descending,
//   p_j' = (1/2)[ ((a^3+2b)/a - 3a^2)(j+1) p_{j+1} + 3a (j+2)(j+1) p_{j+2}
//                 - (j+3)(j+2)(j+1) p_{j+3} ],      p_j(0) = 0 for j < n.
// a and b enter denominators, so they are exact rational inputs here.

inline std::vector<Poly> flag_chain_coeffs(int n, const Rational& a, const Rational& b,
                                           const std::shared_ptr<PolyRing>& ring) {
    if (n < 0) throw std::invalid_argument("flag_chain_coeffs: degree must be >= 0");
    if (a == 0) throw std::invalid_argument("flag_chain_coeffs: exponential slope a must be nonzero");
    Rational drift = (rational_pow(a, 3) + 2 * b) / a - 3 * rational_pow(a, 2);
    auto at = [&](const std::vector<Poly>& p, int j) {
        return j <= n ? p[j] : Poly(ring.get());
    };
    std::vector<Poly> p(n + 1, Poly(ring.get()));
    p[n] = Poly::constant(ring.get(), 1);
    for (int j = n - 1; j >= 0; --j) {
        Poly rate = at(p, j + 1).scaled(drift * (j + 1)) +
                    at(p, j + 2).scaled(3 * a * Rational((j + 2) * (j + 1))) -
                    at(p, j + 3).scaled(Rational((j + 3) * (j + 2) * (j + 1)));
        p[j] = rate.scaled(Rational(1, 2)).integrate("t");
    }
    return p;
}

// phi as a bivariate polynomial in x and t.
inline Poly flag_poly(int n, const Rational& a, const Rational& b,
                      const std::shared_ptr<PolyRing>& xt_ring) {
    auto t_ring = std::make_shared<PolyRing>(std::vector<std::string>{"t"});
    auto p = flag_chain_coeffs(n, a, b, t_ring);
    Poly phi(xt_ring.get());
    Poly x = Poly::variable(xt_ring.get(), "x");
    Poly t = Poly::variable(xt_ring.get(), "t");
    for (int j = 0; j <= n; ++j)
        for (auto& [mono, c] : p[j].terms()) phi += (x.pow(j) * t.pow(mono[0])).scaled(c);
    return phi;
}

// Literal transcription of the closed-form triple sum for phi.  Known to be
// defective: its product over s runs up to 3r1+2r2+r3+1, which annihilates or
// misweights every term (the result vanishes for n <= 1 and keeps a spurious
// leading factor for n >= 2).  Kept verbatim as the cross-check target.
inline Poly flag_poly_closed(int n, const Rational& a, const Rational& b,
                             const std::shared_ptr<PolyRing>& xt_ring) {
    Poly acc(xt_ring.get());
    Poly x = Poly::variable(xt_ring.get(), "x");
    Poly t = Poly::variable(xt_ring.get(), "t");
    for (int r1 = 0; 3 * r1 <= n; ++r1)
        for (int r2 = 0; 3 * r1 + 2 * r2 <= n; ++r2)
            for (int r3 = 0; 3 * r1 + 2 * r2 + r3 <= n; ++r3) {
                Rational prod = 1;
                for (int s = 0; s <= 3 * r1 + 2 * r2 + r3 + 1; ++s) prod *= n - s;
                if (prod == 0) continue;
                Rational c = Rational((r1 + r3) % 2 == 0 ? 1 : -1) *
                             rational_pow(Rational(3), r2) * rational_pow(a, r2) *
                             rational_pow(rational_pow(a, 3) - b, r3) /
                             rational_pow(Rational(2), r1 + r2) * prod /
                             factorial(r1 + r2 + r3);
                acc += (x.pow(n - 3 * r1 - 2 * r2 - r3) * t.pow(r1 + r2 + r3)).scaled(c);
            }
    return acc;
}

inline DiscrepancyReport jm_flag_report(int n, const Rational& a, const Rational& b) {
    auto ring = std::make_shared<PolyRing>(std::vector<std::string>{"x", "t"});
    Poly rec = flag_poly(n, a, b, ring);
    Poly closed = flag_poly_closed(n, a, b, ring);
    DiscrepancyReport rep;
    rep.push_back(compare_polys(
        "JM-L4", "phi", rec, closed,
        "n=" + std::to_string(n) + ", a=" + to_string(a) + ", b=" + to_string(b),
        "closed-form product over s extends to 3r1+2r2+r3+1, annihilating or misweighting "
        "every term; the recurrence value is authoritative"));
    return rep;
}

}  // namespace jmkd
