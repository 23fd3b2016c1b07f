// Common machinery for the solution-family builders: input binding sets with
// validation, sampling guards, default domains, and the registry that the CLI
// lists.  Builders fully inline every bound function body and constant, so a
// built field contains only variables, numbers, and analytic operations --
// evaluation needs no binding environment.
#pragma once

#include "deriv.hpp"
#include "eval.hpp"

#include <algorithm>
#include <set>

namespace jmkd {

enum class Equation { JM, KD };

inline std::string equation_name(Equation e) { return e == Equation::JM ? "JM" : "KD"; }

// A sampling guard: points where the predicate fails are rejected before
// evaluation.  AbsoluteFloor keeps |g| >= delta away from poles; LowerBound
// keeps g >= delta on one side, for roots with fractional powers or logs.
enum class GuardKind { AbsoluteFloor, LowerBound };

struct Guard {
    Expr g;
    GuardKind kind;
    std::string label;
};

struct Interval {
    double lo, hi;
};

struct DomainSpec {
    Interval t{-1.0, 1.0}, x{-1.0, 1.0}, y{-1.0, 1.0}, z{-1.0, 1.0};
};

struct BuiltFamily {
    std::string id;
    Equation equation = Equation::JM;
    Expr W = nullptr;
    std::vector<Guard> guards;
    DomainSpec domain;
    bool exact = false;       // exact rational evaluation possible
    Rational kd_a, kd_b;      // equation constants (KD families only)
};

// User-facing inputs: function bodies are expressions over their slot's
// declared formals (global variable names, or "s" for composed profiles).
struct FamilyInputs {
    int n = -1;
    std::map<std::string, Expr> functions;
    std::map<std::string, Rational> constants;
};

struct FamilyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline const std::uint32_t SYM_S = sym("s");

// Declares the slots a builder accepts, hands out bound values with defaults,
// and rejects unknown or malformed bindings with messages naming the field.
class BindingSet {
public:
    BindingSet(std::string family, const FamilyInputs& in) : family_(std::move(family)), in_(in) {}

    Expr fn(const std::string& name, const std::vector<std::uint32_t>& formals) {
        declared_fns_.insert(name);
        auto it = in_.functions.find(name);
        if (it == in_.functions.end()) return zero();
        check_formals(name, it->second, formals);
        return it->second;
    }

    Rational cst(const std::string& name, const Rational& def = Rational(0)) {
        declared_consts_.insert(name);
        auto it = in_.constants.find(name);
        return it == in_.constants.end() ? def : it->second;
    }

    Rational cst_nonzero(const std::string& name) {
        Rational v = cst(name);
        if (v == 0)
            throw FamilyError(family_ + ": constant \"" + name +
                              "\" is required and must be nonzero");
        return v;
    }

    // Everything the caller supplied must have been declared by the builder.
    void finish() const {
        for (const auto& [name, _] : in_.functions)
            if (!declared_fns_.count(name))
                throw FamilyError(family_ + ": unknown function binding \"" + name + "\"");
        for (const auto& [name, _] : in_.constants)
            if (!declared_consts_.count(name))
                throw FamilyError(family_ + ": unknown constant binding \"" + name + "\"");
    }

private:
    void check_formals(const std::string& name, Expr body,
                       const std::vector<std::uint32_t>& formals) const {
        static const std::vector<std::pair<std::uint32_t, const char*>> known{
            {SYM_T, "t"}, {SYM_X, "x"}, {SYM_Y, "y"}, {SYM_Z, "z"}, {SYM_S, "s"}};
        for (const auto& [symbol, label] : known) {
            if (!depends_on(body, symbol)) continue;
            if (std::find(formals.begin(), formals.end(), symbol) == formals.end())
                throw FamilyError(family_ + ": function \"" + name + "\" must not depend on \"" +
                                  label + "\"");
        }
    }

    std::string family_;
    const FamilyInputs& in_;
    std::set<std::string> declared_fns_;
    std::set<std::string> declared_consts_;
};

inline int require_n(const std::string& family, const FamilyInputs& in, int n_min) {
    if (in.n < n_min)
        throw FamilyError(family + ": requires degree n >= " + std::to_string(n_min) +
                          (in.n < 0 ? " (none given)" : ", got " + std::to_string(in.n)));
    return in.n;
}

inline void reject_n(const std::string& family, const FamilyInputs& in) {
    if (in.n >= 0) throw FamilyError(family + ": does not take a degree n");
}

// Registry of everything the builders construct, for the CLI listing.
struct FamilySpec {
    std::string id;
    std::string equation;     // "JM" or "KD"
    std::string degree;       // "" when the family has no n
    std::string functions;    // slots with their formals
    std::string constants;    // exact rational slots
    std::string form;         // one-line shape of the field
};

inline const std::vector<FamilySpec>& family_registry() {
    static const std::vector<FamilySpec> reg{
        {"JM-P2A", "JM", "",
         "alpha(t,z), gamma(y,z), rho(z,t), eta(y,z), zeta(z,t)", "",
         "W = alpha_t x^2 + A1 x + A0 with iterated integrals of alpha"},
        {"JM-P2B", "JM", "n >= 0",
         "beta(y,z), gamma<i>(z) for i = n..-2-tail (gamma_m<j> below zero), eta(y,z), zeta(z,t)",
         "",
         "W = S^-1 x^2 + (sum_m B_m S^m) x + A0, S = (9/2) t + beta"},
        {"JM-PN", "JM", "n >= 3",
         "g(t), phi(z,t), h(t), f(z,t), gamma<i>(t) for i = 2..n", "",
         "W = sum_m A_m x^m, degree n, poles on z = g(t)"},
        {"JM-Y1", "JM", "",
         "c(t), d(t), phi(t), f(t,z)", "",
         "W = -R y + phi e^R - (d'/3)(x-c)^2/(z-d) + (2/3) c' x + f, R = (x-c)/(z-d)"},
        {"JM-Y2", "JM", "",
         "b(t) nonzero, h(z), eta(t), g(t), l(z,t)", "",
         "W = xi^(1/2) y^2 + h' y + bracket(xi), xi = b x + b h + eta"},
        {"JM-YN", "JM", "n >= 2",
         "phi(t) nonzero, h(z), g(t), f(t), eta(z,t)", "",
         "W = xi^(1/2) y^n + h' y + bracket(xi), xi = phi x + phi h + g"},
        {"JM-L1", "JM", "n >= 1",
         "eta(s) composed at s = y + k z", "k, k0..k<n-1>",
         "W = 2 f_x / f, f = sum_m A_m(t) x^m + a_0(t) + eta(y + k z)"},
        {"JM-L2", "JM", "",
         "rho(s) composed at s = t + (2/3) C z", "C, k",
         "W = 2 / f, f = x + C y + k + rho(t + (2/3) C z)"},
        {"JM-L3", "JM", "n >= 2",
         "", "b, k0..k<n>",
         "W = 2 / f, f = x + b t + sum_j a_j(z) y^j"},
        {"JM-L4", "JM", "n >= 0",
         "", "a nonzero, b",
         "W = 2 f_x / f, f = E y + ((a^3+2b)/(3a)) E z + phi(x,t), E = e^(ax+bt)"},
        {"KD-Q1", "KD", "",
         "psi(t), fm1(t), f4(t), phi(t), sigma(t)", "a nonzero, b",
         "W = S^-1 x^2 + B(S) x + C(S), S = a y + psi"},
        {"KD-Q2", "KD", "",
         "psi(t), fm1(t), f1(t), phi(t), sigma(t)", "a nonzero, b",
         "W = S^-1 x^2 + B(S) x + C(S, log S), S = -2 a y + psi"},
        {"KD-LX", "KD", "n >= 1",
         "", "a nonzero, b, sign (+1/-1), b0..b<n> (b<n> defaults to 1)",
         "W = sign (2/a) log f, f = sum_m a_m(eta,t) xi^m in travelling coordinates"},
        {"KD-LY", "KD", "n >= 0",
         "", "a nonzero, b, sign (+1/-1), c0..c<n> (c<n> defaults to 1)",
         "W = sign (2/a) log f, f = e^((2b/a)x + (8b^3/a^3)t) sum_m g_m(x,t) y^m"},
    };
    return reg;
}

inline const FamilySpec& family_spec(const std::string& id) {
    for (const auto& s : family_registry())
        if (s.id == id) return s;
    throw FamilyError("unknown family id \"" + id + "\"");
}

}  // namespace jmkd
