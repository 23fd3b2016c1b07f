// JSON job front end: parses job files into family inputs plus verification
// and grid requests, with every validation error naming the offending field.
// Binding values route by slot name: the log/kernel families' scalar slots
// (a, b, sign, seed coefficients, k's, C) are exact rationals written as
// integers or "p/q" strings; everything else is a parameter function written
// as an expression string, or as {"args": [...], "body": "..."} to pin the
// formals explicitly.
#pragma once

#include "families.hpp"
#include "grid.hpp"
#include "parser.hpp"
#include "verify.hpp"

#include "json.hpp"

#include <cctype>
#include <optional>

namespace jmkd {

using nlohmann::json;

struct JobError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Routes a flat binding key to the constants or functions map.
inline bool is_constant_slot(const std::string& family, const std::string& name) {
    auto indexed = [&](char stem) {
        if (name.size() < 2 || name[0] != stem) return false;
        for (std::size_t i = 1; i < name.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
        return true;
    };
    if (family == "JM-L1") return name == "k" || indexed('k');
    if (family == "JM-L2") return name == "C" || name == "k";
    if (family == "JM-L3") return name == "b" || indexed('k');
    if (family == "JM-L4") return name == "a" || name == "b";
    if (family == "KD-Q1" || family == "KD-Q2") return name == "a" || name == "b";
    if (family == "KD-LX")
        return name == "a" || name == "b" || name == "sign" || indexed('b');
    if (family == "KD-LY")
        return name == "a" || name == "b" || name == "sign" || indexed('c');
    return false;  // the remaining families take only parameter functions
}

namespace detail_job {

inline Rational rational_value(const json& v, const std::string& ctx) {
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (!s.empty() && s[0] == '+') s.erase(0, 1);
        try {
            return Rational(s);
        } catch (const std::exception&) {
            throw JobError(ctx + ": \"" + s + "\" is not an integer or \"p/q\" rational");
        }
    }
    throw JobError(ctx + ": expected an integer or \"p/q\" string (decimal constants are not "
                         "exact)");
}

inline Rational sign_value(const json& v, const std::string& ctx) {
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s == "+" || s == "+1") return Rational(1);
        if (s == "-" || s == "-1") return Rational(-1);
        throw JobError(ctx + ": sign must be \"+\", \"-\", +1, or -1");
    }
    return rational_value(v, ctx);
}

inline Expr function_value(const json& v, const std::string& ctx) {
    static const std::vector<std::string> all_formals{"t", "x", "y", "z", "s"};
    std::string body;
    std::vector<std::string> formals = all_formals;
    if (v.is_string()) {
        body = v.get<std::string>();
    } else if (v.is_number_integer()) {
        return rat(Rational(v.get<std::int64_t>()));
    } else if (v.is_object()) {
        if (!v.contains("body") || !v["body"].is_string())
            throw JobError(ctx + ".body: required expression string");
        body = v["body"].get<std::string>();
        if (v.contains("args")) {
            if (!v["args"].is_array()) throw JobError(ctx + ".args: expected an array of names");
            formals.clear();
            for (const auto& a : v["args"]) {
                if (!a.is_string())
                    throw JobError(ctx + ".args: expected an array of names");
                std::string name = a.get<std::string>();
                if (std::find(all_formals.begin(), all_formals.end(), name) ==
                    all_formals.end())
                    throw JobError(ctx + ".args: \"" + name +
                                   "\" is not one of t, x, y, z, s");
                formals.push_back(name);
            }
        }
        for (const auto& [key, _] : v.items())
            if (key != "body" && key != "args")
                throw JobError(ctx + "." + key + ": unknown key in function binding");
    } else {
        throw JobError(ctx + ": expected an expression string, integer, or "
                             "{\"args\": [...], \"body\": \"...\"}");
    }
    try {
        return parse_expr(body, formals);
    } catch (const ParseError& e) {
        throw JobError(ctx + ": " + e.what());
    }
}

inline double positive_number(const json& v, const std::string& ctx) {
    if (!v.is_number() || !(v.get<double>() > 0))
        throw JobError(ctx + ": expected a positive number");
    return v.get<double>();
}

inline std::int64_t positive_integer(const json& v, const std::string& ctx) {
    if (!v.is_number_integer() || v.get<std::int64_t>() <= 0)
        throw JobError(ctx + ": expected a positive integer");
    return v.get<std::int64_t>();
}

inline GridAxis grid_axis(const json& v, const std::string& ctx) {
    if (v.is_number()) return {v.get<double>(), v.get<double>(), 1};
    if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number())
        throw JobError(ctx + ": expected [lo, hi, count] or a single number");
    GridAxis a{v[0].get<double>(), v[1].get<double>(),
               static_cast<std::size_t>(positive_integer(v[2], ctx + "[2]"))};
    if (a.count > 1 && !(a.lo < a.hi))
        throw JobError(ctx + ": count > 1 requires lo < hi");
    return a;
}

}  // namespace detail_job

struct JobDefaults {
    std::size_t points = 200;
    std::uint64_t seed = 1;
    double tol = 1e-8;
    double delta = 0.1;
};

// Command-line overrides; these win over both file defaults and per-entry
// settings, so a flag pins the value for the whole run.
struct CliOverrides {
    std::optional<double> tol, delta;
    std::optional<std::uint64_t> seed;
};

struct VerifyRequest {
    VerifyOptions opt;
    std::string report_path;  // empty: collect on stdout
};

struct GridRequest {
    GridSpec spec;
    std::string csv_path;
};

struct JobEntry {
    std::string family;
    FamilyInputs inputs;
    VerifyRequest verify;
    bool has_grid = false;
    GridRequest grid;
};

struct JobFile {
    std::vector<JobEntry> entries;
};

inline JobFile parse_job_file(const json& root, const CliOverrides& over = {}) {
    using namespace detail_job;
    if (!root.is_object()) throw JobError("job file: top level must be an object");
    for (const auto& [key, _] : root.items())
        if (key != "defaults" && key != "jobs")
            throw JobError("job file: unknown top-level key \"" + key + "\"");

    JobDefaults defs;
    if (root.contains("defaults")) {
        const json& d = root["defaults"];
        if (!d.is_object()) throw JobError("defaults: expected an object");
        for (const auto& [key, v] : d.items()) {
            if (key == "points")
                defs.points = static_cast<std::size_t>(positive_integer(v, "defaults.points"));
            else if (key == "seed")
                defs.seed = static_cast<std::uint64_t>(positive_integer(v, "defaults.seed"));
            else if (key == "tol")
                defs.tol = positive_number(v, "defaults.tol");
            else if (key == "delta")
                defs.delta = positive_number(v, "defaults.delta");
            else
                throw JobError("defaults." + key + ": unknown key");
        }
    }
    if (!root.contains("jobs") || !root["jobs"].is_array())
        throw JobError("job file: required key \"jobs\" must be an array");

    JobFile out;
    std::size_t idx = 0;
    for (const json& e : root["jobs"]) {
        std::string ctx = "jobs[" + std::to_string(idx++) + "]";
        if (!e.is_object()) throw JobError(ctx + ": expected an object");
        if (!e.contains("family") || !e["family"].is_string())
            throw JobError(ctx + ".family: required string");

        JobEntry entry;
        entry.family = e["family"].get<std::string>();
        entry.verify.opt.points = defs.points;
        entry.verify.opt.seed = defs.seed;
        entry.verify.opt.tol = defs.tol;
        entry.verify.opt.delta = defs.delta;

        for (const auto& [key, v] : e.items()) {
            std::string kctx = ctx + "." + key;
            if (key == "family") continue;
            if (key == "n") {
                if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
                    throw JobError(kctx + ": expected a non-negative integer");
                entry.inputs.n = static_cast<int>(v.get<std::int64_t>());
            } else if (key == "verify") {
                if (!v.is_object()) throw JobError(kctx + ": expected an object");
                for (const auto& [vk, vv] : v.items()) {
                    if (vk == "points")
                        entry.verify.opt.points =
                            static_cast<std::size_t>(positive_integer(vv, kctx + ".points"));
                    else if (vk == "seed")
                        entry.verify.opt.seed =
                            static_cast<std::uint64_t>(positive_integer(vv, kctx + ".seed"));
                    else if (vk == "tol")
                        entry.verify.opt.tol = positive_number(vv, kctx + ".tol");
                    else if (vk == "delta")
                        entry.verify.opt.delta = positive_number(vv, kctx + ".delta");
                    else if (vk == "equation") {
                        if (!vv.is_string() ||
                            (vv != json("potential") && vv != json("system")))
                            throw JobError(kctx +
                                           ".equation: expected \"potential\" or \"system\"");
                        entry.verify.opt.system = vv == json("system");
                    } else if (vk == "report") {
                        if (!vv.is_string()) throw JobError(kctx + ".report: expected a path");
                        entry.verify.report_path = vv.get<std::string>();
                    } else {
                        throw JobError(kctx + "." + vk + ": unknown key");
                    }
                }
            } else if (key == "grid") {
                if (!v.is_object()) throw JobError(kctx + ": expected an object");
                entry.has_grid = true;
                for (const auto& [gk, gv] : v.items()) {
                    if (gk == "t")
                        entry.grid.spec.t = grid_axis(gv, kctx + ".t");
                    else if (gk == "x")
                        entry.grid.spec.x = grid_axis(gv, kctx + ".x");
                    else if (gk == "y")
                        entry.grid.spec.y = grid_axis(gv, kctx + ".y");
                    else if (gk == "z")
                        entry.grid.spec.z = grid_axis(gv, kctx + ".z");
                    else if (gk == "csv") {
                        if (!gv.is_string()) throw JobError(kctx + ".csv: expected a path");
                        entry.grid.csv_path = gv.get<std::string>();
                    } else {
                        throw JobError(kctx + "." + gk + ": unknown key");
                    }
                }
                if (entry.grid.csv_path.empty())
                    throw JobError(kctx + ".csv: required output path");
            } else if (is_constant_slot(entry.family, key)) {
                entry.inputs.constants[key] =
                    key == "sign" ? sign_value(v, kctx) : rational_value(v, kctx);
            } else {
                entry.inputs.functions[key] = function_value(v, kctx);
            }
        }

        if (over.tol) entry.verify.opt.tol = *over.tol;
        if (over.delta) entry.verify.opt.delta = *over.delta;
        if (over.seed) entry.verify.opt.seed = *over.seed;
        out.entries.push_back(std::move(entry));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Report serialization

inline json point_json(const Point& p) {
    return {{"t", p.t}, {"x", p.x}, {"y", p.y}, {"z", p.z}};
}

inline json report_json(const ResidualReport& r) {
    json pts = json::array();
    for (const auto& s : r.points) {
        json comps = json::array();
        for (std::size_t i = 0; i < s.raw.size(); ++i)
            comps.push_back({{"raw", s.raw[i]},
                             {"scale", s.scale[i]},
                             {"normalized", std::abs(s.raw[i]) / s.scale[i]}});
        json row = point_json(s.p);
        row["residuals"] = std::move(comps);
        row["normalized"] = s.normalized;
        pts.push_back(std::move(row));
    }
    json rej = json::array();
    for (const auto& p : r.rejected) rej.push_back(point_json(p));
    return {{"family", r.family},
            {"equation", r.equation},
            {"exact", r.exact},
            {"tolerance", r.tolerance},
            {"delta", r.delta},
            {"seed", r.seed},
            {"requested", r.requested},
            {"samples", r.points.size()},
            {"rejected", std::move(rej)},
            {"max_normalized", r.max_normalized},
            {"pass", r.pass},
            {"points", std::move(pts)}};
}

}  // namespace jmkd
