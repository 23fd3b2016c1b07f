// Finite-difference oracle: an independent check on the symbolic derivative
// path.  Mixed partials up to total order 4 are estimated with central
// stencils composed axis by axis (each O(h^2)), then sharpened by one
// Richardson step, (4 D(h/2) - D(h)) / 3.  The field is a black box; wrap it
// with guarded_field so probes that stray into a singular region raise
// oracle-unavailable instead of sampling garbage.
#pragma once

#include "eval.hpp"
#include "verify.hpp"

#include <array>
#include <functional>

namespace jmkd {

struct FdError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using FdField = std::function<double(const Point&)>;

namespace detail_fd {

inline double stencil(const std::function<double(double)>& g, int order, double h) {
    switch (order) {
        case 1: return (g(h) - g(-h)) / (2 * h);
        case 2: return (g(h) - 2 * g(0) + g(-h)) / (h * h);
        case 3: return (g(2 * h) - 2 * g(h) + 2 * g(-h) - g(-2 * h)) / (2 * h * h * h);
        case 4:
            return (g(2 * h) - 4 * g(h) + 6 * g(0) - 4 * g(-h) + g(-2 * h)) / (h * h * h * h);
        default: throw FdError("fd_partial: per-axis order must be within 0..4");
    }
}

inline double mixed(const FdField& f, const std::array<int, 4>& order, const Point& p, double h,
                    int axis) {
    if (axis == 4) return f(p);
    if (order[axis] == 0) return mixed(f, order, p, h, axis + 1);
    auto g = [&](double d) {
        Point q = p;
        (axis == 0 ? q.t : axis == 1 ? q.x : axis == 2 ? q.y : q.z) += d;
        return mixed(f, order, q, h, axis + 1);
    };
    return stencil(g, order[axis], h);
}

}  // namespace detail_fd

// order = derivative orders per variable, in (t, x, y, z) order.
inline double fd_partial(const FdField& f, const std::array<int, 4>& order, const Point& p,
                         double h) {
    int total = 0;
    for (int o : order) {
        if (o < 0) throw FdError("fd_partial: negative derivative order");
        total += o;
    }
    if (total > 4) throw FdError("fd_partial: total derivative order must be <= 4");
    if (!(h > 0)) throw FdError("fd_partial: step must be positive");
    if (total == 0) return f(p);
    double coarse = detail_fd::mixed(f, order, p, h, 0);
    double fine = detail_fd::mixed(f, order, p, h / 2, 0);
    return (4 * fine - coarse) / 3;
}

// Evaluator for e that refuses probes within delta of a guarded locus.
inline FdField guarded_field(Expr e, std::vector<Guard> guards, double delta,
                             const Bindings& bind = {}) {
    return [e, guards = std::move(guards), delta, bind](const Point& p) {
        if (!guards_ok(guards, p, delta, bind))
            throw FdError("fd oracle unavailable: probe point is inside a guarded region");
        return evaluate(e, p, bind);
    };
}

// Largest relative disagreement between the symbolic derivative and the
// finite-difference estimate over the given points.  Relative to
// max(1, |symbolic|), so flat regions do not inflate the ratio.
inline double fd_disagreement(Expr e, const std::array<int, 4>& order,
                              const std::vector<Point>& pts, const std::vector<Guard>& guards,
                              double delta, double h, const Bindings& bind = {}) {
    Expr sym = e;
    const std::array<std::uint32_t, 4> vars{SYM_T, SYM_X, SYM_Y, SYM_Z};
    for (int axis = 0; axis < 4; ++axis)
        for (int k = 0; k < order[axis]; ++k) sym = differentiate(sym, vars[axis]);
    FdField field = guarded_field(e, guards, delta, bind);
    double worst = 0.0;
    for (const Point& p : pts) {
        double exact = evaluate(sym, p, bind);
        double est = fd_partial(field, order, p, h);
        worst = std::max(worst, std::abs(exact - est) / std::max(1.0, std::abs(exact)));
    }
    return worst;
}

}  // namespace jmkd
