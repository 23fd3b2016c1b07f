// Coefficient recurrences for the Konopelchenko-Dubrovsky solution families.
//
// Same contract as the Jimbo-Miwa side: the recurrence output is ground truth,
// the printed closed forms are literal transcriptions kept as cross-check
// targets, and report_* functions record agreement or the precise defect.
// The travelling-tail closed form is compared under two readings of its
// remainder helper (the printed r(m,k) = k - floor(k/m) is not the standard
// remainder), and its self-referential product bound is treated as an empty
// product -- both choices are spelled out in the report notes.
#pragma once

#include "coeffs_jm.hpp"

#include <functional>

namespace jmkd {

// Combinatorial binomial: zero outside 0 <= k <= n.  The generalized falling
// product in rational.hpp is wrong for the closed forms here, whose binomials
// come from induction counts and must vanish for negative upper index.
inline Rational choose_c(int n, int k) {
    if (k < 0 || n < 0 || k > n) return Rational(0);
    return binomial(n, k);
}

// Coefficient of var^k, as a polynomial in the remaining variables.
inline Poly poly_coeff_in(const Poly& p, const PolyRing* ring, const std::string& var, int k) {
    std::size_t vi = ring->index(var);
    Poly r(ring);
    for (const auto& [m, c] : p.terms()) {
        if (m[vi] != k) continue;
        Poly::Monomial rest(m);
        rest[vi] = 0;
        r.add_term(rest, c);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Travelling profile f = sum_m a_m(eta,t) xi^m  (KD-LX).
//
// In the shifted coordinate eta the coefficients obey the first-order system
//   d a_m / d eta = -(m+2)(m+1) a_{m+2},
//   d a_m / d t   =  4(m+3)(m+2)(m+1) a_{m+3},
// seeded by constants: a_n = b_n, a_{n-1} = b_{n-1}, and each lower level
// adds its own b_m.  The system is compatible, so integrating eta at fixed t
// plus t along eta = 0 reconstructs a_m exactly.  Ring Q[eta, t, b0..bn].

struct TravelChain {
    std::shared_ptr<PolyRing> ring;
    std::vector<Poly> a;  // a[0..n]
};

inline TravelChain kd_travel_coeffs(int n) {
    if (n < 1) throw std::invalid_argument("kd_travel_coeffs: requires degree n >= 1");
    std::vector<std::string> vars{"eta", "t"};
    for (int i = 0; i <= n; ++i) vars.push_back(indexed_name("b", i));
    auto ring = std::make_shared<PolyRing>(vars);
    auto seed = [&](int i) { return Poly::variable(ring.get(), indexed_name("b", i)); };
    auto at = [&](const std::vector<Poly>& a, int j) {
        return j <= n ? a[j] : Poly(ring.get());
    };

    std::vector<Poly> a(n + 1, Poly(ring.get()));
    a[n] = seed(n);
    if (n >= 1) a[n - 1] = seed(n - 1);
    for (int m = n - 2; m >= 0; --m) {
        Poly along_t = at(a, m + 3).substitute("eta", 0).integrate("t").scaled(
            Rational(4 * (m + 3) * (m + 2) * (m + 1)));
        Poly along_eta = at(a, m + 2).integrate("eta").scaled(Rational(-(m + 2) * (m + 1)));
        a[m] = seed(m) + along_t + along_eta;
    }
    return {ring, std::move(a)};
}

// Index helpers used by the travelling-tail closed form.  The printed
// remainder k - floor(k/m) differs from the standard k - m*floor(k/m); the
// report runs the closed form under both.
inline int kd_div_index(int m, int k) { return k / m; }
inline int kd_rem_printed(int m, int k) { return k - k / m; }
inline int kd_rem_standard(int m, int k) { return k % m; }

// Literal transcription of the closed form for a_{n-k}.  Defects kept as
// printed: the first product's upper bound is self-referential (treated as an
// empty product), the first sum's eta exponent subtracts p where its sibling
// factorial subtracts q, and the second product's lower bound subtracts the
// remainder.  b-indices outside 0..n contribute nothing.
inline Poly kd_travel_closed(const TravelChain& tc, int n, int k, bool standard_remainder) {
    auto rem = [&](int m, int kk) {
        return standard_remainder ? kd_rem_standard(m, kk) : kd_rem_printed(m, kk);
    };
    auto bseed = [&](int i) {
        return (i < 0 || i > n) ? Poly(tc.ring.get())
                                : Poly::variable(tc.ring.get(), indexed_name("b", i));
    };
    Poly eta = Poly::variable(tc.ring.get(), "eta");
    Poly t = Poly::variable(tc.ring.get(), "t");
    Poly acc(tc.ring.get());

    int d3 = kd_div_index(3, k), r3 = rem(3, k);
    for (int p = 0; p <= d3 - 1; ++p) {
        int inner = 3 * p + r3;
        int d2 = kd_div_index(2, inner), r2 = rem(2, inner);
        for (int q = 0; q <= d2; ++q) {
            Rational c = Rational((d2 - q) % 2 == 0 ? 1 : -1) *
                         rational_pow(Rational(4), d3 - p) /
                         (factorial(d3 - p) * factorial(d2 - q));
            // prod_{l=inner}^{l} (n-l): self-referential bound, taken empty.
            for (int s = 2 * q + r2; s <= inner - 1; ++s) c *= n - s;
            if (c == 0) continue;
            if (d2 - p < 0) continue;  // literal eta exponent can go negative; no such monomial
            acc += (bseed(n - 2 * q - r2) * eta.pow(d2 - p) * t.pow(d3 - p)).scaled(c);
        }
    }
    int d2k = kd_div_index(2, k), r2k = rem(2, k);
    for (int q = 0; q <= d2k; ++q) {
        Rational c = Rational((d2k - q) % 2 == 0 ? 1 : -1) / factorial(d2k - q);
        for (int l = 2 * q - r2k; l <= k - 1; ++l) c *= n - l;
        if (c == 0) continue;
        acc += (bseed(n - 2 * q - r2k) * eta.pow(d2k - q)).scaled(c);
    }
    return acc;
}

inline DiscrepancyReport kd_travel_report(int n) {
    TravelChain tc = kd_travel_coeffs(n);
    DiscrepancyReport rep;
    const std::string note =
        "closed form transcribed literally: the self-referential product bound is treated as an "
        "empty product, the first sum's eta exponent subtracts p as printed, and the second "
        "product's lower bound subtracts the remainder; the recurrence value is authoritative";
    for (int variant = 0; variant < 2; ++variant) {
        bool std_rem = variant == 1;
        std::string inputs = "n=" + std::to_string(n) +
                             (std_rem ? ", remainder=k-m*floor(k/m)" : ", remainder=k-floor(k/m) (as printed)");
        for (int k = 0; k <= n; ++k)
            rep.push_back(compare_polys("KD-LX", "a[" + std::to_string(n - k) + "]", tc.a[n - k],
                                        kd_travel_closed(tc, n, k, std_rem), inputs, note));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Exponential-times-polynomial profile in y  (KD-LY).
//
// f = exp((2b/a)x + (8b^3/a^3)t) * sum_m g_m(x,t) y^m.  With w = b/a kept as
// a ring variable the chains are exact:
//   top row      dB0_s/dt = 12w^2 (s+1) B0_{s+1} + 12w (s+2)(s+1) B0_{s+2}
//                           + 4 (s+3)(s+2)(s+1) B0_{s+3},   B0_s(0) = (n!/s!) c_s,
//   descent      g_{m+1} = -(g_m_xx + 2w g_m_x) / (m+1),    g_0 = sum_s B0_s x^s.
// Ring Q[x, t, w, c0..cn].

struct YPolyChain {
    std::shared_ptr<PolyRing> ring;
    std::vector<Poly> B0;  // B0[0..n], x-free
    std::vector<Poly> g;   // g[0..n]
};

inline YPolyChain kd_ypoly_coeffs(int n) {
    if (n < 0) throw std::invalid_argument("kd_ypoly_coeffs: degree must be >= 0");
    std::vector<std::string> vars{"x", "t", "w"};
    for (int i = 0; i <= n; ++i) vars.push_back(indexed_name("c", i));
    auto ring = std::make_shared<PolyRing>(vars);
    Poly w = Poly::variable(ring.get(), "w");
    Poly x = Poly::variable(ring.get(), "x");
    auto seed = [&](int i) { return Poly::variable(ring.get(), indexed_name("c", i)); };
    auto at = [&](const std::vector<Poly>& v, int j) {
        return j <= n ? v[j] : Poly(ring.get());
    };

    YPolyChain out;
    out.ring = ring;
    out.B0.assign(n + 1, Poly(ring.get()));
    for (int s = n; s >= 0; --s) {
        Poly rate = (at(out.B0, s + 1) * w * w).scaled(Rational(12 * (s + 1))) +
                    (at(out.B0, s + 2) * w).scaled(Rational(12 * (s + 2) * (s + 1))) +
                    at(out.B0, s + 3).scaled(Rational(4 * (s + 3) * (s + 2) * (s + 1)));
        out.B0[s] = seed(s).scaled(factorial(n) / factorial(s)) + rate.integrate("t");
    }
    out.g.assign(n + 1, Poly(ring.get()));
    for (int s = 0; s <= n; ++s) out.g[0] += out.B0[s] * x.pow(s);
    for (int m = 0; m + 1 <= n; ++m) {
        Poly gx = out.g[m].deriv("x");
        out.g[m + 1] = (gx.deriv("x") + gx * w.scaled(2)).scaled(Rational(-1, m + 1));
    }
    return out;
}

// Auxiliary combinatorics: d_m and e_{m,k}.  d_m solves the same three-term
// integral recurrence as the top row (with unit seeds); e_{m,k} are its
// t-coefficient weights.

struct DChain {
    std::shared_ptr<PolyRing> ring;  // Q[t, w]
    std::vector<Poly> d;             // d[0..mmax]
};

inline DChain kd_d_polys(int mmax) {
    if (mmax < 0) throw std::invalid_argument("kd_d_polys: bad size");
    auto ring = std::make_shared<PolyRing>(std::vector<std::string>{"t", "w"});
    Poly w = Poly::variable(ring.get(), "w");
    auto at = [&](const std::vector<Poly>& v, int j) {
        return j >= 0 ? v[j] : Poly(ring.get());
    };
    std::vector<Poly> d;
    d.push_back(Poly::constant(ring.get(), 1));
    for (int m = 1; m <= mmax; ++m) {
        Poly next = (at(d, m - 1).integrate("t") * w * w).scaled(12) +
                    (at(d, m - 2).integrate("t") * w).scaled(12) +
                    at(d, m - 3).integrate("t").scaled(4);
        d.push_back(next);
    }
    return {ring, std::move(d)};
}

inline Rational kd_e_recurrence(int m, int k) {
    if (m == 0 && k == 0) return Rational(1);
    if (m <= 0 || k < 0) return Rational(0);
    return kd_e_recurrence(m - 1, k) + kd_e_recurrence(m - 2, k - 1) +
           kd_e_recurrence(m - 3, k - 2) / 3;
}

inline Rational kd_e_closed(int m, int k) {
    Rational acc = 0;
    for (int s = 0; s <= k; ++s)
        acc += rational_pow(Rational(1, 3), s) * choose_c(k - s, s) * choose_c(m - k, k - s);
    return acc;
}

// Closed form of d_m as a polynomial in t and w.
inline Poly kd_d_closed(const DChain& dc, int m) {
    Poly t = Poly::variable(dc.ring.get(), "t");
    Poly w = Poly::variable(dc.ring.get(), "w");
    Poly acc(dc.ring.get());
    for (int k = 0; k <= 2 * m / 3; ++k)
        for (int s = 0; s <= k; ++s) {
            Rational c = rational_pow(Rational(12), m - k) * rational_pow(Rational(1, 3), s) *
                         choose_c(k - s, s) * choose_c(m - k, k - s) / factorial(m - k);
            if (c == 0) continue;
            acc += (t.pow(m - k) * w.pow(2 * m - 3 * k)).scaled(c);
        }
    return acc;
}

// Closed form of the top-row coefficient B0_{n-m} (triple sum over the seed
// convolution with d).  All surviving binomial terms have nonnegative w
// exponent; the printed summation range merely adds vanishing terms.
inline Poly kd_ypoly_closed_B0(const YPolyChain& ch, int n, int m) {
    Poly t = Poly::variable(ch.ring.get(), "t");
    Poly w = Poly::variable(ch.ring.get(), "w");
    Rational lead = 1;
    for (int l = 0; l <= m - 1; ++l) lead *= n - l;
    Poly acc(ch.ring.get());
    for (int p = 0; p <= m; ++p)
        for (int k = 0; k <= (2 * m - p) / 3; ++k)
            for (int s = 0; s <= k; ++s) {
                if (m - p - k < 0) continue;  // binomial weight is zero there
                Rational c = lead * rational_pow(Rational(12), m - p - k) *
                             rational_pow(Rational(1, 3), s) * choose_c(k - s, s) *
                             choose_c(m - p - k, k - s) / factorial(m - p - k);
                if (c == 0) continue;
                if (2 * m - 2 * p - 3 * k < 0)
                    throw std::logic_error("kd_ypoly_closed_B0: negative exponent survived");
                acc += (Poly::variable(ch.ring.get(), indexed_name("c", n - p)) *
                        t.pow(m - p - k) * w.pow(2 * m - 2 * p - 3 * k))
                           .scaled(c);
            }
    return acc;
}

// Literal transcription of the printed closed form for B_r^m (the x^r
// coefficient of g_m).  Defects kept as printed: no (-1)^m sign, the
// power of 2w uses s instead of m-s, and the product over l starts at 0,
// inserting a spurious factor r.  The binomial zeroes every s > m term, so
// the printed upper bound 2^m is finite in effect.
inline Poly kd_ypoly_closed_Brm_printed(const YPolyChain& ch, int n, int m, int r) {
    Poly w = Poly::variable(ch.ring.get(), "w");
    Poly acc(ch.ring.get());
    long upper = 1;
    for (int i = 0; i < m; ++i) upper *= 2;
    for (long s = 0; s <= upper; ++s) {
        Rational c = choose_c(m, static_cast<int>(s)) / factorial(m);
        if (c == 0) continue;
        for (long l = 0; l <= m + s; ++l) c *= Rational(r) + Rational(l);
        if (c == 0) continue;
        long idx = r + m + s;
        if (idx > n) continue;  // B0 vanishes above the top row
        acc += (ch.B0[idx] * w.pow(static_cast<int>(s))).scaled(c * rational_pow(Rational(2), static_cast<int>(s)));
    }
    return acc;
}

// Derived replacement: g_m = ((-1)^m/m!) * d_x^m (d_x + 2w)^m g_0, hence
//   B_r^m = ((-1)^m/m!) sum_{s=0}^m C(m,s) (2w)^{m-s} prod_{l=1}^{m+s}(r+l) B0_{r+m+s}.
inline Poly kd_ypoly_closed_Brm_derived(const YPolyChain& ch, int n, int m, int r) {
    Poly w = Poly::variable(ch.ring.get(), "w");
    Poly acc(ch.ring.get());
    for (int s = 0; s <= m; ++s) {
        int idx = r + m + s;
        if (idx > n) continue;
        Rational c = choose_c(m, s) * rational_pow(Rational(2), m - s);
        for (int l = 1; l <= m + s; ++l) c *= r + l;
        if (c == 0) continue;
        acc += (ch.B0[idx] * w.pow(m - s)).scaled(c);
    }
    return acc.scaled(Rational(m % 2 == 0 ? 1 : -1) / factorial(m));
}

inline DiscrepancyReport kd_ypoly_report(int n) {
    YPolyChain ch = kd_ypoly_coeffs(n);
    std::string inputs = "n=" + std::to_string(n);
    DiscrepancyReport rep;
    for (int m = 0; m <= n; ++m)
        rep.push_back(compare_polys("KD-LY", "B0[" + std::to_string(n - m) + "]",
                                    ch.B0[n - m], kd_ypoly_closed_B0(ch, n, m), inputs, ""));
    for (int m = 1; m <= n; ++m)
        for (int r = 0; r + m <= n; ++r) {
            Poly truth = poly_coeff_in(ch.g[m], ch.ring.get(), "x", r);
            std::string idx = "B[" + std::to_string(r) + "]^" + std::to_string(m);
            rep.push_back(compare_polys(
                "KD-LY", idx + " (as printed)", truth, kd_ypoly_closed_Brm_printed(ch, n, m, r),
                inputs,
                "printed closed form lacks the (-1)^m sign, raises 2w to s instead of m-s, and "
                "starts its product at l=0 (spurious factor r); the recurrence value is "
                "authoritative"));
            rep.push_back(compare_polys("KD-LY", idx + " (derived replacement)", truth,
                                        kd_ypoly_closed_Brm_derived(ch, n, m, r), inputs, ""));
        }
    return rep;
}

inline DiscrepancyReport kd_combinatorics_report(int mmax) {
    DiscrepancyReport rep;
    DChain dc = kd_d_polys(mmax);
    for (int m = 0; m <= mmax; ++m)
        rep.push_back(compare_polys("KD-LY", "d[" + std::to_string(m) + "]", dc.d[m],
                                    kd_d_closed(dc, m), "mmax=" + std::to_string(mmax), ""));
    for (int m = 0; m <= mmax; ++m)
        for (int k = 0; k <= 2 * m / 3; ++k) {
            DiscrepancyEntry e;
            e.family = "KD-LY";
            e.index = "e[" + std::to_string(m) + "," + std::to_string(k) + "]";
            e.recurrence = to_string(kd_e_recurrence(m, k));
            e.closed_form = to_string(kd_e_closed(m, k));
            e.inputs = "mmax=" + std::to_string(mmax);
            e.match = e.recurrence == e.closed_form;
            rep.push_back(std::move(e));
        }
    return rep;
}

// ---------------------------------------------------------------------------
// Quadratic profiles (KD-Q1 / KD-Q2): cross-check of the constant-term
// coefficients in the basis {S^k, log S, log^2 S}, S the linear profile in y.
//
// Our C solves the constant-term equation B_t - 12ABb + 3a^2 A B^2 - 3C_yy
// + 6aAC_y = 0 exactly; the printed coefficients diverge in a few slots.
// Both sides are evaluated exactly at rational sample times with fixed
// polynomial bindings, so agreement is an equality of rationals.

struct QuadProfileSamples {
    Rational a = Rational(2), b = Rational(3);
    std::vector<Rational> ts{Rational(1, 4), Rational(1, 3), Rational(7, 5)};
    // bindings: psi = t^2, fm1 = t, f4 = 1 + t, f1 = t, phi = t^3
    Rational psi(const Rational& t) const { return t * t; }
    Rational psi_t(const Rational& t) const { return 2 * t; }
    Rational psi_tt(const Rational&) const { return Rational(2); }
    Rational fm1(const Rational& t) const { return t; }
    Rational fm1_t(const Rational&) const { return Rational(1); }
    Rational f4(const Rational& t) const { return 1 + t; }
    Rational f4_t(const Rational&) const { return Rational(1); }
    Rational f1(const Rational& t) const { return t; }
    Rational f1_t(const Rational&) const { return Rational(1); }
    Rational phi(const Rational& t) const { return t * t * t; }
    Rational f0(const Rational& t) const { return (psi_t(t) + 12 * b) / (6 * a * a); }
    Rational f0_t(const Rational& t) const { return psi_tt(t) / (6 * a * a); }
    std::string describe() const {
        return "a=2, b=3, psi=t^2, fm1=t, f4=1+t, f1=t, phi=t^3; t in {1/4, 1/3, 7/5}";
    }
};

inline DiscrepancyEntry compare_profile_coeff(
    const std::string& family, const std::string& index, const QuadProfileSamples& s,
    const std::function<Rational(const Rational&)>& derived,
    const std::function<Rational(const Rational&)>& printed, const std::string& note_on_mismatch) {
    DiscrepancyEntry e;
    e.family = family;
    e.index = index;
    e.inputs = s.describe();
    std::string dv = "[", pv = "[";
    bool all = true;
    for (std::size_t i = 0; i < s.ts.size(); ++i) {
        Rational d = derived(s.ts[i]), p = printed(s.ts[i]);
        dv += (i ? ", " : "") + to_string(d);
        pv += (i ? ", " : "") + to_string(p);
        all = all && d == p;
    }
    e.recurrence = dv + "]";
    e.closed_form = pv + "]";
    e.match = all;
    if (!all) e.note = note_on_mismatch;
    return e;
}

inline DiscrepancyReport kd_quadratic_report() {
    QuadProfileSamples s;
    const Rational a = s.a, b = s.b;
    DiscrepancyReport rep;

    // KD-Q1: profile S = ay + psi.
    auto zero = [](const Rational&) { return Rational(0); };
    rep.push_back(compare_profile_coeff(
        "KD-Q1", "C[S^-1]", s,
        [&](const Rational& t) { return s.fm1(t) * s.fm1(t) / 4; },
        [&](const Rational& t) { return s.fm1(t) * s.fm1(t) / 4; }, ""));
    rep.push_back(compare_profile_coeff(
        "KD-Q1", "C[log S]", s, zero,
        [&](const Rational& t) {
            return -(Rational(-1, 3) * s.fm1(t) * s.f4(t) - 4 * b * s.fm1(t) +
                     2 * a * a * s.fm1(t) * s.f0(t)) /
                   (3 * a * a);
        },
        "the constant-term equation has no log forcing (its S^-2 slot cancels identically); "
        "the printed coefficient equals -(fm1/(9a^2))(psi_t - f4) and is a misprint"));
    rep.push_back(compare_profile_coeff(
        "KD-Q1", "C[S^1]", s,
        [&](const Rational& t) {
            return -(s.fm1_t(t) / 3 - 4 * b * s.f0(t) + a * a * s.f0(t) * s.f0(t)) / (2 * a * a);
        },
        [&](const Rational& t) {
            return -(s.fm1_t(t) / 3 - 4 * b * s.f0(t) + a * a * s.f0(t) * s.f0(t)) / (2 * a * a);
        },
        ""));
    rep.push_back(compare_profile_coeff(
        "KD-Q1", "C[S^2]", s,
        [&](const Rational& t) { return -s.psi_tt(t) / (36 * rational_pow(a, 4)); }, zero,
        "the printed form omits the S^2 term forced by the f0' component of B_t"));
    rep.push_back(compare_profile_coeff(
        "KD-Q1", "C[S^3]", s, [&](const Rational& t) { return s.phi(t) / (3 * a); },
        [&](const Rational& t) { return s.phi(t) / (3 * a); }, ""));
    rep.push_back(compare_profile_coeff(
        "KD-Q1", "C[S^4]", s, [&](const Rational& t) { return s.fm1(t) * s.f4(t) / 2; },
        [&](const Rational& t) { return s.fm1(t) * s.f4(t) / 2; }, ""));
    rep.push_back(compare_profile_coeff(
        "KD-Q1", "C[S^5]", s,
        [&](const Rational& t) {
            return (Rational(4, 3) * s.f4(t) * s.psi_t(t) - 4 * b * s.f4(t) +
                    2 * a * a * s.f0(t) * s.f4(t)) /
                   (10 * a * a);
        },
        [&](const Rational& t) {
            return (Rational(4, 3) * s.f4(t) * s.psi_t(t) - 4 * b * s.f4(t) +
                    2 * a * a * s.f0(t) * s.f4(t)) /
                   (10 * a * a);
        },
        ""));
    rep.push_back(compare_profile_coeff(
        "KD-Q1", "C[S^6]", s, [&](const Rational& t) { return s.f4_t(t) / (54 * a * a); },
        [&](const Rational& t) { return s.f4_t(t) / (54 * a * a); }, ""));
    rep.push_back(compare_profile_coeff(
        "KD-Q1", "C[S^9]", s, [&](const Rational& t) { return s.f4(t) * s.f4(t) / 54; },
        [&](const Rational& t) { return s.f4(t) * s.f4(t) / 54; }, ""));
    {
        DiscrepancyEntry e;
        e.family = "KD-Q1";
        e.index = "C[S^-1] (theorem restatement)";
        e.recurrence = "+1/4*fm1^2";
        e.closed_form = "-1/4*fm1^2";
        e.inputs = "structural";
        e.match = false;
        e.note = "the theorem restatement flips the sign of the S^-1 term; the construction "
                 "section's +1/4 is forced by the S^-3 slot of the constant-term equation";
        rep.push_back(std::move(e));
    }

    // KD-Q2: profile S = -2ay + psi.
    {
        DiscrepancyEntry e;
        e.family = "KD-Q2";
        e.index = "A";
        e.recurrence = "(-2*a*y + psi)^-1";
        e.closed_form = "(a*y + psi)^-1";
        e.inputs = "structural";
        e.match = false;
        e.note = "the theorem restatement reuses the first profile's leading coefficient; its "
                 "own B and C are built from -2ay+psi, so the implementation uses -2ay+psi";
        rep.push_back(std::move(e));
    }
    rep.push_back(compare_profile_coeff(
        "KD-Q2", "C[S^-1]", s,
        [&](const Rational& t) { return s.fm1(t) * s.fm1(t) / 4; },
        [&](const Rational& t) { return s.fm1(t) * s.fm1(t) / 4; }, ""));
    rep.push_back(compare_profile_coeff(
        "KD-Q2", "C[log S]", s, [&](const Rational& t) { return -s.phi(t) / (2 * a); },
        [&](const Rational& t) { return -s.phi(t) / (2 * a); }, ""));
    rep.push_back(compare_profile_coeff(
        "KD-Q2", "C[log^2 S]", s, zero,
        [&](const Rational& t) {
            return (Rational(-1, 3) * s.fm1(t) * s.psi_t(t) - 4 * b * s.fm1(t) +
                    2 * a * a * s.f0(t) * s.fm1(t)) /
                   (8 * a * a);
        },
        ""));
    rep.back().note =
        "the printed log^2 coefficient is identically zero once f0 = (psi_t + 12b)/(6a^2) is "
        "substituted, so no log^2 term appears in the assembled profile";
    rep.push_back(compare_profile_coeff(
        "KD-Q2", "C[S^1]", s,
        [&](const Rational& t) {
            return (s.fm1_t(t) / 3 - 4 * b * s.f0(t) +
                    a * a * (s.f0(t) * s.f0(t) + 2 * s.fm1(t) * s.f1(t))) /
                   (4 * a * a);
        },
        [&](const Rational& t) {
            return (s.fm1_t(t) / 3 - 4 * b * s.f0(t) +
                    a * a * (2 * s.fm1(t) * s.f1(t) + s.f0(t) * s.f0(t))) /
                   (4 * a * a);
        },
        ""));
    rep.push_back(compare_profile_coeff(
        "KD-Q2", "C[S^2]", s,
        [&](const Rational& t) {
            return ((s.f0_t(t) + s.f1(t) * s.psi_t(t)) / 3 - 4 * b * s.f1(t) +
                    2 * a * a * s.f0(t) * s.f1(t)) /
                   (16 * a * a);
        },
        [&](const Rational& t) {
            return ((s.f0_t(t) + s.f1(t) * s.psi_t(t)) / 3 - 4 * b * s.f1(t) +
                    2 * a * a * s.f0(t) * s.f1(t)) /
                   (16 * a * a);
        },
        ""));
    rep.push_back(compare_profile_coeff(
        "KD-Q2", "C[S^3]", s,
        [&](const Rational& t) { return (s.f1_t(t) / 3 + a * a * s.f1(t) * s.f1(t)) / (36 * a * a); },
        [&](const Rational& t) { return (s.f1_t(t) / 3 + a * a * s.f1(t) * s.f1(t)) / (36 * a * a); },
        ""));
    return rep;
}

}  // namespace jmkd
