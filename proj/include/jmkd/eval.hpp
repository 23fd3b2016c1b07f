// Numeric evaluation of expressions.
//
// Floating mode handles every node kind: antiderivatives run adaptive
// quadrature over the stored integrand (the integration variable is bound to
// the sample point through an environment frame), and parameter calls bind
// their formals the same way.  Values are memoized per node id and
// invalidated whenever any frame changes (epoch counter), so all residual
// terms evaluated at one sample point share subexpression work.
//
// Exact mode evaluates the rational-closed fragment (rationals, named
// constants, sums, products, integer powers, parameter calls with rational
// bodies) with exact rational arithmetic and rejects everything else.
#pragma once

#include "deriv.hpp"
#include "expr.hpp"
#include "quadrature.hpp"

#include <cmath>
#include <map>
#include <string>
#include <vector>

namespace jmkd {

struct EvalError : std::runtime_error {
    enum class Code {
        UnboundConstant,
        UnboundParam,
        UnboundVariable,
        ArityMismatch,
        SingularPoint,
        SingularInterval,
        NoConvergence,
        ExactUnsupported,
    };
    Code code;
    EvalError(Code c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

struct ParamBinding {
    std::vector<std::uint32_t> formals;
    Expr body = nullptr;
};

struct Bindings {
    std::map<std::string, Rational> consts;
    std::map<std::string, ParamBinding> params;
};

struct EvalOptions {
    double quad_tol = 1e-10;        // absolute tolerance of outermost antiderivatives
    double nested_tol_shrink = 0.1; // nested antiderivatives tighten by this factor
    int quad_max_depth = 40;
};

struct Point {
    double t = 0, x = 0, y = 0, z = 0;
};

inline const std::uint32_t SYM_T = sym("t");
inline const std::uint32_t SYM_X = sym("x");
inline const std::uint32_t SYM_Y = sym("y");
inline const std::uint32_t SYM_Z = sym("z");

class Evaluator {
  public:
    explicit Evaluator(const Bindings& b, EvalOptions opt = {}) : bind_(&b), opt_(opt) {}

    // Evaluates with the four coordinates bound to p (plus any extra bindings
    // already pushed); epoch is bumped so nothing leaks between points.
    double at_point(Expr e, const Point& p) {
        set_var(SYM_T, p.t);
        set_var(SYM_X, p.x);
        set_var(SYM_Y, p.y);
        set_var(SYM_Z, p.z);
        cur_tol_ = opt_.quad_tol;
        return ev(e);
    }

    double with_env(Expr e, const std::vector<std::pair<std::uint32_t, double>>& env) {
        for (auto& [s, v] : env) set_var(s, v);
        cur_tol_ = opt_.quad_tol;
        return ev(e);
    }

  private:
    struct Saved {
        std::uint32_t symbol;
        bool had;
        double value;
    };

    void ensure_sym(std::uint32_t s) {
        if (s >= env_val_.size()) {
            env_val_.resize(s + 1, 0.0);
            env_has_.resize(s + 1, false);
        }
    }
    // permanent (point-level) binding
    void set_var(std::uint32_t s, double v) {
        ensure_sym(s);
        env_val_[s] = v;
        env_has_[s] = true;
        ++epoch_;
    }
    void push_var(std::uint32_t s, double v) {
        ensure_sym(s);
        saved_.push_back({s, env_has_[s] != 0, env_val_[s]});
        env_val_[s] = v;
        env_has_[s] = true;
        ++epoch_;
    }
    void pop_vars(std::size_t n) {
        while (n--) {
            Saved s = saved_.back();
            saved_.pop_back();
            env_val_[s.symbol] = s.value;
            env_has_[s.symbol] = s.had;
        }
        ++epoch_;
    }

    double ev(Expr e) {
        if (e->id < stamp_.size() && stamp_[e->id] == epoch_) return val_[e->id];
        double v = 0;
        switch (e->kind) {
            case Kind::Rational: v = to_double(e->rat); break;
            case Kind::NamedConst: {
                auto it = bind_->consts.find(sym_name(e->sym));
                if (it == bind_->consts.end())
                    throw EvalError(EvalError::Code::UnboundConstant,
                                    "unbound constant '" + sym_name(e->sym) + "'");
                v = to_double(it->second);
                break;
            }
            case Kind::Var: {
                auto s = static_cast<std::uint32_t>(e->sym);
                if (s >= env_has_.size() || !env_has_[s])
                    throw EvalError(EvalError::Code::UnboundVariable,
                                    "unbound variable '" + sym_name(e->sym) + "'");
                v = env_val_[s];
                break;
            }
            case Kind::Sum:
                for (Expr k : e->kids) v += ev(k);
                break;
            case Kind::Product:
                v = 1;
                for (Expr k : e->kids) v *= ev(k);
                break;
            case Kind::IntPow: {
                double b = ev(e->kids[0]);
                if (b == 0.0 && e->ipow < 0)
                    throw EvalError(EvalError::Code::SingularPoint, "division by zero");
                v = powi(b, e->ipow);
                break;
            }
            case Kind::RatPow: {
                double b = ev(e->kids[0]);
                v = std::pow(b, to_double(e->rat));
                break;
            }
            case Kind::Exp: v = std::exp(ev(e->kids[0])); break;
            case Kind::Log: {
                double a = ev(e->kids[0]);
                if (a <= 0.0)
                    throw EvalError(EvalError::Code::SingularPoint,
                                    "log of non-positive value");
                v = std::log(a);
                break;
            }
            case Kind::Sin: v = std::sin(ev(e->kids[0])); break;
            case Kind::Cos: v = std::cos(ev(e->kids[0])); break;
            case Kind::Antideriv: v = ev_antideriv(e); break;
            case Kind::ParamCall: v = ev_param(e); break;
        }
        if (!std::isfinite(v))
            throw EvalError(EvalError::Code::SingularPoint,
                            "non-finite value at " + to_debug_string(e).substr(0, 120));
        if (e->id >= stamp_.size()) {
            std::size_t n = Interner::instance().node_count();
            stamp_.resize(std::max<std::size_t>(n, e->id + 1), 0);
            val_.resize(stamp_.size(), 0.0);
        }
        stamp_[e->id] = epoch_;
        val_[e->id] = v;
        return v;
    }

    double ev_antideriv(Expr e) {
        auto w = static_cast<std::uint32_t>(e->sym);
        if (w >= env_has_.size() || !env_has_[w])
            throw EvalError(EvalError::Code::UnboundVariable,
                            "unbound integration limit '" + sym_name(w) + "'");
        const double upper = env_val_[w];
        const double lower = to_double(e->rat);
        const double my_tol = cur_tol_;
        Expr g = e->kids[0];
        auto f = [&](double s) {
            push_var(w, s);
            double saved_tol = cur_tol_;
            cur_tol_ = my_tol * opt_.nested_tol_shrink;
            double r;
            try {
                r = ev(g);
            } catch (...) {
                cur_tol_ = saved_tol;
                pop_vars(1);
                throw;
            }
            cur_tol_ = saved_tol;
            pop_vars(1);
            return r;
        };
        try {
            return integrate_gk(f, lower, upper, my_tol, opt_.quad_max_depth);
        } catch (const QuadratureError& q) {
            throw EvalError(q.kind == QuadratureError::Kind::SingularInterval
                                ? EvalError::Code::SingularInterval
                                : EvalError::Code::NoConvergence,
                            q.what());
        }
    }

    double ev_param(Expr e) {
        const std::string& name = sym_name(e->sym);
        auto it = bind_->params.find(name);
        if (it == bind_->params.end())
            throw EvalError(EvalError::Code::UnboundParam, "unbound parameter '" + name + "'");
        const ParamBinding& pb = it->second;
        if (pb.formals.size() != e->kids.size())
            throw EvalError(EvalError::Code::ArityMismatch,
                            "parameter '" + name + "' expects " +
                                std::to_string(pb.formals.size()) + " argument(s), got " +
                                std::to_string(e->kids.size()));
        Expr body = pb.body;
        for (std::size_t j = 0; j < pb.formals.size(); ++j)
            body = differentiate(body, pb.formals[j], e->orders[j]);
        std::vector<double> argv(e->kids.size());
        for (std::size_t j = 0; j < e->kids.size(); ++j) argv[j] = ev(e->kids[j]);
        for (std::size_t j = 0; j < pb.formals.size(); ++j) push_var(pb.formals[j], argv[j]);
        double v;
        try {
            v = ev(body);
        } catch (...) {
            pop_vars(pb.formals.size());
            throw;
        }
        pop_vars(pb.formals.size());
        return v;
    }

    static double powi(double b, long long e) {
        if (e < 0) return 1.0 / powi(b, -e);
        double acc = 1.0, p = b;
        while (e) {
            if (e & 1) acc *= p;
            p *= p;
            e >>= 1;
        }
        return acc;
    }

    const Bindings* bind_;
    EvalOptions opt_;
    double cur_tol_ = 1e-10;
    std::uint64_t epoch_ = 1;
    std::vector<double> env_val_;
    std::vector<char> env_has_;
    std::vector<Saved> saved_;
    std::vector<std::uint64_t> stamp_;
    std::vector<double> val_;
};

inline double evaluate(Expr e, const Point& p, const Bindings& b, const EvalOptions& opt = {}) {
    Evaluator ev(b, opt);
    return ev.at_point(e, p);
}

// ---------------------------------------------------------------------------
// Exact-rational evaluation

struct RatPoint {
    Rational t = 0, x = 0, y = 0, z = 0;
};

inline bool exact_compatible(Expr e) {
    switch (e->kind) {
        case Kind::RatPow:
        case Kind::Exp:
        case Kind::Log:
        case Kind::Sin:
        case Kind::Cos:
        case Kind::Antideriv: return false;
        default:
            for (Expr k : e->kids)
                if (!exact_compatible(k)) return false;
            return true;
    }
}

class ExactEvaluator {
  public:
    explicit ExactEvaluator(const Bindings& b) : bind_(&b) {}

    Rational at_point(Expr e, const RatPoint& p) {
        env_.clear();
        memo_.clear();
        env_[SYM_T] = p.t;
        env_[SYM_X] = p.x;
        env_[SYM_Y] = p.y;
        env_[SYM_Z] = p.z;
        return ev(e);
    }

  private:
    Rational ev(Expr e) {
        if (auto it = memo_.find(e); it != memo_.end()) return it->second;
        Rational v;
        switch (e->kind) {
            case Kind::Rational: v = e->rat; break;
            case Kind::NamedConst: {
                auto it = bind_->consts.find(sym_name(e->sym));
                if (it == bind_->consts.end())
                    throw EvalError(EvalError::Code::UnboundConstant,
                                    "unbound constant '" + sym_name(e->sym) + "'");
                v = it->second;
                break;
            }
            case Kind::Var: {
                auto it = env_.find(static_cast<std::uint32_t>(e->sym));
                if (it == env_.end())
                    throw EvalError(EvalError::Code::UnboundVariable,
                                    "unbound variable '" + sym_name(e->sym) + "'");
                v = it->second;
                break;
            }
            case Kind::Sum:
                for (Expr k : e->kids) v += ev(k);
                break;
            case Kind::Product:
                v = 1;
                for (Expr k : e->kids) v *= ev(k);
                break;
            case Kind::IntPow: {
                Rational b = ev(e->kids[0]);
                if (b == 0 && e->ipow < 0)
                    throw EvalError(EvalError::Code::SingularPoint, "division by zero");
                v = rational_pow(b, e->ipow);
                break;
            }
            case Kind::ParamCall: v = ev_param(e); break;
            default:
                throw EvalError(EvalError::Code::ExactUnsupported,
                                "node kind not exactly evaluable: " +
                                    to_debug_string(e).substr(0, 80));
        }
        memo_.emplace(e, v);
        return v;
    }

    Rational ev_param(Expr e) {
        const std::string& name = sym_name(e->sym);
        auto it = bind_->params.find(name);
        if (it == bind_->params.end())
            throw EvalError(EvalError::Code::UnboundParam, "unbound parameter '" + name + "'");
        const ParamBinding& pb = it->second;
        if (pb.formals.size() != e->kids.size())
            throw EvalError(EvalError::Code::ArityMismatch,
                            "parameter '" + name + "' arity mismatch");
        Expr body = pb.body;
        for (std::size_t j = 0; j < pb.formals.size(); ++j)
            body = differentiate(body, pb.formals[j], e->orders[j]);
        std::vector<Rational> argv(e->kids.size());
        for (std::size_t j = 0; j < e->kids.size(); ++j) argv[j] = ev(e->kids[j]);
        // frame change: the memo keyed on nodes alone is no longer valid
        auto saved_env = env_;
        auto saved_memo = memo_;
        memo_.clear();
        for (std::size_t j = 0; j < pb.formals.size(); ++j) env_[pb.formals[j]] = argv[j];
        Rational v;
        try {
            v = ev(body);
        } catch (...) {
            env_ = saved_env;
            memo_ = saved_memo;
            throw;
        }
        env_ = std::move(saved_env);
        memo_ = std::move(saved_memo);
        return v;
    }

    const Bindings* bind_;
    std::map<std::uint32_t, Rational> env_;
    std::map<Expr, Rational> memo_;
};

inline Rational evaluate_exact(Expr e, const RatPoint& p, const Bindings& b) {
    ExactEvaluator ev(b);
    return ev.at_point(e, p);
}

}  // namespace jmkd
