// Adaptive one-dimensional quadrature.
//
// Primary rule: Gauss-Kronrod 7-15 with interval bisection; the embedded
// 7-point Gauss result supplies the error estimate.  A classic adaptive
// Simpson rule is provided as an independent second integrator so callers can
// cross-check results computed by two different rules.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace jmkd {

struct QuadratureError : std::runtime_error {
    enum class Kind { SingularInterval, NoConvergence };
    Kind kind;
    QuadratureError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

namespace detail {

// Kronrod abscissae on [0,1] with Kronrod weights and (for the embedded Gauss
// rule) Gauss weights; rows with gauss weight 0 are Kronrod-only nodes.
// {abscissa, kronrod weight, gauss weight}
inline constexpr double gk15[8][3] = {
    {0.991455371120812639206854697526329, 0.022935322010529224963732008058970, 0.0},
    {0.949107912342758524526189684047851, 0.063092092629978553290700663189204, 0.129484966168869693270611432679082},
    {0.864864423359769072789712788640926, 0.104790010322250183839876322541518, 0.0},
    {0.741531185599394439863864773280788, 0.140653259715525918745189590510238, 0.279705391489276667901467771423780},
    {0.586087235467691130294144838258730, 0.169004726639267902826583426598550, 0.0},
    {0.405845151377397166906606412076961, 0.190350578064785409913256402421014, 0.381830050505118944950369775488975},
    {0.207784955007898467600689403773245, 0.204432940075298892414161999234649, 0.0},
    {0.000000000000000000000000000000000, 0.209482141084727828012999174891714, 0.417959183673469387755102040816327},
};

struct GkEstimate {
    double integral;   // 15-point Kronrod value
    double err;        // estimated error of the Kronrod value
};

template <class F>
GkEstimate gk15_panel(F&& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double k = 0.0, g = 0.0;
    for (const auto& row : gk15) {
        const double x = row[0], wk = row[1], wg = row[2];
        double fv;
        if (x == 0.0) {
            fv = f(c);
        } else {
            fv = f(c - h * x) + f(c + h * x);
        }
        if (!std::isfinite(fv))
            throw QuadratureError(QuadratureError::Kind::SingularInterval,
                                  "singular integrand interval");
        k += wk * fv;
        if (wg != 0.0) g += wg * fv;
    }
    k *= h;
    g *= h;
    const double diff = std::fabs(k - g);
    // QUADPACK-style sharpened estimate, never larger than |K15 - G7|
    const double sharpened = std::pow(200.0 * diff, 1.5);
    return {k, std::min(diff, sharpened)};
}

// Globally adaptive scheme: always bisect the panel with the worst error
// estimate until the summed estimate meets the tolerance.  A shared error
// budget (rather than a per-half tolerance split) is what lets integrable
// endpoint singularities converge.
template <class F>
double gk_adaptive(F&& f, double a, double b, double tol, int max_depth) {
    struct Panel {
        double a, b, integral, err;
        int depth;
    };
    // max-heap on the error estimate, ties broken by position
    auto less_bad = [](const Panel& p, const Panel& q) {
        if (p.err != q.err) return p.err < q.err;
        return p.a > q.a;
    };
    std::vector<Panel> panels;
    auto e0 = gk15_panel(f, a, b);
    panels.push_back({a, b, e0.integral, e0.err, 0});
    double total_err = e0.err;
    double total_int = e0.integral;
    const int max_panels = 256 * (max_depth > 0 ? max_depth : 1);

    while (total_err > tol && total_err > 1e-16 * std::fabs(total_int)) {
        std::pop_heap(panels.begin(), panels.end(), less_bad);
        Panel p = panels.back();
        if (p.depth >= max_depth || static_cast<int>(panels.size()) >= max_panels)
            throw QuadratureError(QuadratureError::Kind::NoConvergence,
                                  "quadrature failed to converge (depth limit)");
        panels.pop_back();
        const double m = 0.5 * (p.a + p.b);
        auto le = gk15_panel(f, p.a, m);
        auto re = gk15_panel(f, m, p.b);
        panels.push_back({p.a, m, le.integral, le.err, p.depth + 1});
        std::push_heap(panels.begin(), panels.end(), less_bad);
        panels.push_back({m, p.b, re.integral, re.err, p.depth + 1});
        std::push_heap(panels.begin(), panels.end(), less_bad);
        total_int += le.integral + re.integral - p.integral;
        total_err += le.err + re.err - p.err;
    }
    // deterministic compensated resummation, left to right
    std::sort(panels.begin(), panels.end(),
              [](const Panel& p, const Panel& q) { return p.a < q.a; });
    double sum = 0.0, comp = 0.0;
    for (const Panel& p : panels) {
        double y = p.integral - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

inline double simpson_panel(double fa, double fm, double fb, double a, double b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double simpson_adaptive(F&& f, double a, double b, double fa, double fm, double fb, double whole,
                        double tol, int depth, int max_depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    if (!std::isfinite(flm) || !std::isfinite(frm))
        throw QuadratureError(QuadratureError::Kind::SingularInterval,
                              "singular integrand interval");
    const double left = simpson_panel(fa, flm, fm, a, m);
    const double right = simpson_panel(fm, frm, fb, m, b);
    const double delta = left + right - whole;
    if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth >= max_depth)
        throw QuadratureError(QuadratureError::Kind::NoConvergence,
                              "quadrature failed to converge (depth limit)");
    return simpson_adaptive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth) +
           simpson_adaptive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace detail

// Integral of f over [a, b] (sign-aware when a > b) to absolute tolerance tol.
template <class F>
double integrate_gk(F&& f, double a, double b, double tol = 1e-10, int max_depth = 40) {
    if (a == b) return 0.0;
    double sign = 1.0;
    if (a > b) std::swap(a, b), sign = -1.0;
    return sign * detail::gk_adaptive(f, a, b, tol, max_depth);
}

// Independent second rule (adaptive Simpson) for cross-checking.
template <class F>
double integrate_simpson(F&& f, double a, double b, double tol = 1e-10, int max_depth = 48) {
    if (a == b) return 0.0;
    double sign = 1.0;
    if (a > b) std::swap(a, b), sign = -1.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    if (!std::isfinite(fa) || !std::isfinite(fm) || !std::isfinite(fb))
        throw QuadratureError(QuadratureError::Kind::SingularInterval,
                              "singular integrand interval");
    const double whole = detail::simpson_panel(fa, fm, fb, a, b);
    return sign * detail::simpson_adaptive(f, a, b, fa, fm, fb, whole, tol, 0, max_depth);
}

}  // namespace jmkd
