// Regular-grid CSV export of a built field.  Rows run in t-major, z-minor
// order; values print with 17 significant digits so a reload round-trips the
// doubles exactly.  JM fields export the column W; KD fields add the pair
// (u, v) = (W_x, W_y).  Grid nodes that hit a singularity print nan rather
// than silently dropping the row.
#pragma once

#include "eval.hpp"
#include "family.hpp"

#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace jmkd {

struct GridAxis {
    double lo = 0.0, hi = 0.0;
    std::size_t count = 1;
};

struct GridSpec {
    GridAxis t, x, y, z;
};

inline std::vector<double> grid_points(const GridAxis& a) {
    std::vector<double> out;
    out.reserve(a.count);
    if (a.count == 1) {
        out.push_back(a.lo);
        return out;
    }
    for (std::size_t i = 0; i < a.count; ++i)
        out.push_back(a.lo + (a.hi - a.lo) * static_cast<double>(i) /
                                 static_cast<double>(a.count - 1));
    return out;
}

inline std::string format_17g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_grid_csv(std::ostream& os, const BuiltFamily& fam, const GridSpec& g,
                           const Bindings& bind = {}) {
    bool kd = fam.equation == Equation::KD;
    std::vector<Expr> fields{fam.W};
    if (kd) {
        fields.push_back(differentiate(fam.W, SYM_X));
        fields.push_back(differentiate(fam.W, SYM_Y));
    }
    os << (kd ? "t,x,y,z,W,u,v" : "t,x,y,z,W") << "\n";
    for (double t : grid_points(g.t))
        for (double x : grid_points(g.x))
            for (double y : grid_points(g.y))
                for (double z : grid_points(g.z)) {
                    Point p{t, x, y, z};
                    os << format_17g(t) << ',' << format_17g(x) << ',' << format_17g(y) << ','
                       << format_17g(z);
                    for (Expr e : fields) {
                        double v;
                        try {
                            v = evaluate(e, p, bind);
                        } catch (const EvalError&) {
                            v = std::numeric_limits<double>::quiet_NaN();
                        }
                        os << ',' << format_17g(v);
                    }
                    os << "\n";
                }
}

}  // namespace jmkd
