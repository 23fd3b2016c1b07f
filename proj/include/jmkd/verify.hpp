// Residual verification.  The residual of each equation is assembled once by
// symbolic differentiation as a list of additive terms; points are then
// sampled from the family's guarded domain and every term is evaluated per
// point.  Keeping the terms separate gives the normalization scale
// max(1, max |term|), which prevents false passes near zeros of the field and
// false failures in large-amplitude regions.  Instances whose fields stay
// inside the rational fragment are checked in exact arithmetic instead.
#pragma once

#include "eval.hpp"
#include "family.hpp"
#include "rng.hpp"

#include <algorithm>
#include <cmath>

namespace jmkd {

// Domain or configuration defect: the caller asked for something the sampled
// geometry cannot deliver (distinct from a residual failure).
struct VerifyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Residual assembly

// W_xxxy + 3 W_xy W_x + 3 W_y W_xx + 2 W_yt - 3 W_xz
inline std::vector<Expr> jm_residual_terms(Expr W) {
    Expr Wx = differentiate(W, SYM_X);
    Expr Wy = differentiate(W, SYM_Y);
    return {differentiate(differentiate(differentiate(Wx, SYM_X), SYM_X), SYM_Y),
            mul({num(3), differentiate(Wx, SYM_Y), Wx}),
            mul({num(3), Wy, differentiate(Wx, SYM_X)}),
            mul({num(2), differentiate(Wy, SYM_T)}),
            mul({num(-3), differentiate(Wx, SYM_Z)})};
}

// W_xt - W_xxxx - 6b W_x W_xx + (3/2) a^2 W_x^2 W_xx - 3 W_yy + 3a W_xx W_y
inline std::vector<Expr> kd_potential_residual_terms(Expr W, const Rational& a,
                                                     const Rational& b) {
    Expr Wx = differentiate(W, SYM_X);
    Expr Wxx = differentiate(Wx, SYM_X);
    Expr Wy = differentiate(W, SYM_Y);
    return {differentiate(Wx, SYM_T),
            mul({num(-1), differentiate(differentiate(Wxx, SYM_X), SYM_X)}),
            mul({rat(-6 * b), Wx, Wxx}),
            mul({rat(Rational(3, 2) * a * a), Wx, Wx, Wxx}),
            mul({num(-3), differentiate(Wy, SYM_Y)}),
            mul({rat(3 * a), Wxx, Wy})};
}

// Evolution equation u_t - u_xxx - 6b u u_x + (3/2) a^2 u^2 u_x - 3 v_y
// + 3a u_x v, plus the compatibility condition u_y - v_x.
struct KdSystemTerms {
    std::vector<Expr> evolution;
    std::vector<Expr> compatibility;
};

inline KdSystemTerms kd_system_residual_terms(Expr u, Expr v, const Rational& a,
                                              const Rational& b) {
    Expr ux = differentiate(u, SYM_X);
    KdSystemTerms out;
    out.evolution = {differentiate(u, SYM_T),
                     mul({num(-1), differentiate(differentiate(ux, SYM_X), SYM_X)}),
                     mul({rat(-6 * b), u, ux}),
                     mul({rat(Rational(3, 2) * a * a), u, u, ux}),
                     mul({num(-3), differentiate(v, SYM_Y)}),
                     mul({rat(3 * a), ux, v})};
    out.compatibility = {differentiate(u, SYM_Y), mul({num(-1), differentiate(v, SYM_X)})};
    return out;
}

// ---------------------------------------------------------------------------
// Deterministic guarded sampling

struct SampleSpec {
    DomainSpec domain;
    std::vector<Guard> guards;
    double delta = 0.1;
    std::uint64_t seed = 1;
    std::size_t count = 200;
};

inline bool guards_ok(const std::vector<Guard>& guards, const Point& p, double delta,
                      const Bindings& b = {}) {
    for (const auto& g : guards) {
        double v = evaluate(g.g, p, b);
        if (g.kind == GuardKind::AbsoluteFloor ? std::abs(v) < delta : v < delta) return false;
    }
    return true;
}

// Seeded uniform draws over the box, rejecting points that sit within delta
// of a singular locus.  Fails once rejection exceeds 100x oversampling: the
// domain as configured cannot supply the requested points.
inline std::vector<Point> sample_domain(const SampleSpec& s, const Bindings& b = {}) {
    if (s.delta <= 0) throw VerifyError("sample_domain: delta must be positive");
    auto span = [](const Interval& iv, const char* name) {
        if (!(iv.lo < iv.hi))
            throw VerifyError(std::string("sample_domain: degenerate ") + name + " interval");
    };
    span(s.domain.t, "t");
    span(s.domain.x, "x");
    span(s.domain.y, "y");
    span(s.domain.z, "z");

    SplitMix64 rng(s.seed);
    std::vector<Point> out;
    out.reserve(s.count);
    for (std::size_t attempts = 0; out.size() < s.count; ++attempts) {
        if (attempts >= 100 * s.count)
            throw VerifyError("sample_domain: rejection cap hit; the guarded domain is too "
                              "singular for the requested point count");
        Point p{rng.uniform(s.domain.t.lo, s.domain.t.hi),
                rng.uniform(s.domain.x.lo, s.domain.x.hi),
                rng.uniform(s.domain.y.lo, s.domain.y.hi),
                rng.uniform(s.domain.z.lo, s.domain.z.hi)};
        if (guards_ok(s.guards, p, s.delta, b)) out.push_back(p);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reports

struct ResidualSample {
    Point p;
    std::vector<double> raw;    // one entry per residual component
    std::vector<double> scale;  // matching normalization scales
    double normalized = 0.0;    // max over components of |raw| / scale
};

struct ResidualReport {
    std::string family;
    std::string equation;  // "JM" | "KD-potential" | "KD-system"
    bool exact = false;
    double tolerance = 1e-8;
    double delta = 0.1;
    std::uint64_t seed = 0;
    std::size_t requested = 0;
    std::vector<ResidualSample> points;
    std::vector<Point> rejected;  // singular at evaluation time
    double max_normalized = 0.0;
    bool pass = false;
};

namespace detail_verify {

inline RatPoint to_rat(const Point& p) {
    return {Rational(p.t), Rational(p.x), Rational(p.y), Rational(p.z)};
}

// Evaluates one component's terms; returns {raw, scale}.  The float path
// shares one Evaluator across all terms of a point so hash-consed subtrees
// (in particular antiderivative nodes) evaluate once, not once per term;
// `fresh` is true until the point's coordinates have been bound.
inline std::pair<double, double> component_exact(const std::vector<Expr>& terms,
                                                 const RatPoint& rp, const Bindings& b) {
    double scale = 1.0;
    Rational sum = 0;
    for (Expr t : terms) {
        Rational v = evaluate_exact(t, rp, b);
        sum += v;
        scale = std::max(scale, std::abs(static_cast<double>(v)));
    }
    return {static_cast<double>(sum), scale};
}

inline std::pair<double, double> component_float(Evaluator& ev, const std::vector<Expr>& terms,
                                                 const Point& p, bool& fresh) {
    double sum = 0, scale = 1.0;
    for (Expr t : terms) {
        double v = fresh ? ev.at_point(t, p) : ev.with_env(t, {});
        fresh = false;
        sum += v;
        scale = std::max(scale, std::abs(v));
    }
    return {sum, scale};
}

}  // namespace detail_verify

// Evaluates the components at every point, recording rejections for points
// where evaluation hits a singularity the guards did not exclude.
inline ResidualReport evaluate_residual(std::string family, std::string equation,
                                        const std::vector<std::vector<Expr>>& components,
                                        const std::vector<Point>& pts, double tol,
                                        bool use_exact, const Bindings& bind = {}) {
    ResidualReport rep;
    rep.family = std::move(family);
    rep.equation = std::move(equation);
    rep.exact = use_exact;
    rep.tolerance = tol;
    rep.requested = pts.size();
    Evaluator ev(bind);
    for (const Point& p : pts) {
        ResidualSample s;
        s.p = p;
        bool fresh = true;
        try {
            for (const auto& terms : components) {
                auto [raw, scale] =
                    use_exact
                        ? detail_verify::component_exact(terms, detail_verify::to_rat(p), bind)
                        : detail_verify::component_float(ev, terms, p, fresh);
                if (!std::isfinite(raw)) throw EvalError(EvalError::Code::SingularPoint,
                                                         "non-finite residual");
                s.raw.push_back(raw);
                s.scale.push_back(scale);
                s.normalized = std::max(s.normalized, std::abs(raw) / scale);
            }
        } catch (const EvalError&) {
            rep.rejected.push_back(p);
            continue;
        }
        rep.max_normalized = std::max(rep.max_normalized, s.normalized);
        rep.points.push_back(std::move(s));
    }
    rep.pass = rep.max_normalized <= tol && !rep.points.empty();
    return rep;
}

// ---------------------------------------------------------------------------
// Family-level drivers

inline ResidualReport jm_residual(Expr W, const std::vector<Point>& pts, double tol = 1e-8,
                                  bool use_exact = false, const Bindings& bind = {}) {
    return evaluate_residual("", "JM", {jm_residual_terms(W)}, pts, tol, use_exact, bind);
}

inline ResidualReport kd_potential_residual(Expr W, const std::vector<Point>& pts,
                                            const Rational& a, const Rational& b,
                                            double tol = 1e-8, bool use_exact = false,
                                            const Bindings& bind = {}) {
    return evaluate_residual("", "KD-potential", {kd_potential_residual_terms(W, a, b)}, pts,
                             tol, use_exact, bind);
}

inline ResidualReport kd_system_residual(Expr u, Expr v, const std::vector<Point>& pts,
                                         const Rational& a, const Rational& b, double tol = 1e-8,
                                         bool use_exact = false, const Bindings& bind = {}) {
    KdSystemTerms terms = kd_system_residual_terms(u, v, a, b);
    return evaluate_residual("", "KD-system", {terms.evolution, terms.compatibility}, pts, tol,
                             use_exact, bind);
}

struct VerifyOptions {
    std::size_t points = 200;
    std::uint64_t seed = 1;
    double tol = 1e-8;
    double delta = 0.1;
    bool force_float = false;  // bypass exact arithmetic even when available
    bool system = false;       // KD families: verify the (u, v) system instead
};

// Samples the family's guarded domain and verifies its equation.  KD fields
// are checked against the potential form by default; opt.system switches to
// the two-equation system on (u, v) = (W_x, W_y).
inline ResidualReport verify_family(const BuiltFamily& fam, const VerifyOptions& opt = {}) {
    if (opt.system && fam.equation != Equation::KD)
        throw VerifyError(fam.id + ": the (u, v) system applies only to KD families");

    SampleSpec ss;
    ss.domain = fam.domain;
    ss.guards = fam.guards;
    ss.delta = opt.delta;
    ss.seed = opt.seed;
    ss.count = opt.points;
    std::vector<Point> pts = sample_domain(ss);

    bool use_exact = fam.exact && !opt.force_float;
    ResidualReport rep;
    if (fam.equation == Equation::JM) {
        rep = jm_residual(fam.W, pts, opt.tol, use_exact);
    } else if (opt.system) {
        Expr u = differentiate(fam.W, SYM_X), v = differentiate(fam.W, SYM_Y);
        rep = kd_system_residual(u, v, pts, fam.kd_a, fam.kd_b, opt.tol, use_exact);
    } else {
        rep = kd_potential_residual(fam.W, pts, fam.kd_a, fam.kd_b, opt.tol, use_exact);
    }
    rep.family = fam.id;
    rep.delta = opt.delta;
    rep.seed = opt.seed;
    return rep;
}

}  // namespace jmkd
