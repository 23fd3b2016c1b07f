// Batch front end: constructs solution families of the Jimbo-Miwa and
// Konopelchenko-Dubrovsky equations from a JSON job file, verifies their PDE
// residuals, and exports grids, reports, and coefficient cross-checks.
// Exit codes: 0 all verifications pass, 1 residual failure, 2 configuration
// error (the message names the offending field).
#include "CLI11.hpp"

#include <jmkd/discrepancies.hpp>
#include <jmkd/job.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace jmkd;

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw JobError(path + ": cannot open");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw JobError(path + ": " + e.what());
    }
}

void write_text(const std::string& path, const std::string& body) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw JobError(path + ": cannot open for writing");
    out << body;
}

void print_families(std::ostream& os) {
    for (const auto& s : family_registry()) {
        os << s.id << "  [" << s.equation << "]";
        if (!s.degree.empty()) os << "  " << s.degree;
        os << "\n";
        if (!s.functions.empty()) os << "  functions: " << s.functions << "\n";
        if (!s.constants.empty()) os << "  constants: " << s.constants << "\n";
        os << "  form: " << s.form << "\n";
    }
}

int run_verify(const JobFile& jf) {
    bool all_pass = true;
    json stdout_reports = json::array();
    for (const auto& e : jf.entries) {
        BuiltFamily fam = build_family(e.family, e.inputs);
        ResidualReport rep = verify_family(fam, e.verify.opt);
        all_pass = all_pass && rep.pass;
        json j = report_json(rep);
        if (e.verify.report_path.empty())
            stdout_reports.push_back(std::move(j));
        else
            write_text(e.verify.report_path, j.dump(2) + "\n");
        if (e.has_grid) {
            std::ostringstream os;
            write_grid_csv(os, fam, e.grid.spec);
            write_text(e.grid.csv_path, os.str());
        }
        std::cerr << rep.family << ": " << (rep.pass ? "pass" : "FAIL") << ", max normalized "
                  << rep.max_normalized << " over " << rep.points.size() << " points ("
                  << (rep.exact ? "exact" : "float") << " path)\n";
    }
    if (!stdout_reports.empty()) std::cout << stdout_reports.dump(2) << "\n";
    return all_pass ? 0 : 1;
}

int run_sample(const JobFile& jf) {
    std::size_t grids = 0;
    for (const auto& e : jf.entries) {
        if (!e.has_grid) continue;
        ++grids;
        BuiltFamily fam = build_family(e.family, e.inputs);
        std::ostringstream os;
        write_grid_csv(os, fam, e.grid.spec);
        write_text(e.grid.csv_path, os.str());
        std::cerr << e.family << ": wrote " << e.grid.csv_path << "\n";
    }
    if (grids == 0) throw JobError("sample: no job entry has a grid block");
    return 0;
}

int run_discrepancies(const std::string& job_path) {
    int nmax = 5, weight_max = 10;
    std::string report_path;
    if (!job_path.empty()) {
        json root = load_json(job_path);
        if (root.contains("discrepancies")) {
            const json& d = root["discrepancies"];
            if (!d.is_object()) throw JobError("discrepancies: expected an object");
            for (const auto& [key, v] : d.items()) {
                if (key == "nmax")
                    nmax = static_cast<int>(
                        detail_job::positive_integer(v, "discrepancies.nmax"));
                else if (key == "weight_max")
                    weight_max = static_cast<int>(
                        detail_job::positive_integer(v, "discrepancies.weight_max"));
                else if (key == "report") {
                    if (!v.is_string())
                        throw JobError("discrepancies.report: expected a path");
                    report_path = v.get<std::string>();
                } else {
                    throw JobError("discrepancies." + key + ": unknown key");
                }
            }
        }
    }
    DiscrepancyReport rep = full_discrepancy_report(nmax, weight_max);
    json arr = json::array();
    std::size_t flagged = 0;
    for (const auto& e : rep) {
        if (!e.match) ++flagged;
        arr.push_back({{"family", e.family},
                       {"index", e.index},
                       {"inputs", e.inputs},
                       {"recurrence", e.recurrence},
                       {"closed_form", e.closed_form},
                       {"match", e.match},
                       {"note", e.note}});
    }
    if (report_path.empty())
        std::cout << arr.dump(2) << "\n";
    else
        write_text(report_path, arr.dump(2) + "\n");
    std::cerr << rep.size() << " comparisons, " << flagged << " flagged\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Constructs explicit solution families of the Jimbo-Miwa and "
                 "Konopelchenko-Dubrovsky equations and machine-verifies their residuals."};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list-families",
                                    "Print every family id with its binding surface");

    std::string verify_path;
    double tol = 0, delta = 0;
    std::uint64_t seed = 0;
    auto* verify =
        app.add_subcommand("verify", "Verify each job entry and write residual reports");
    verify->add_option("job", verify_path, "job JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    verify->add_option("--tol", tol, "override the residual tolerance for every entry");
    verify->add_option("--delta", delta, "override the guard threshold for every entry");
    verify->add_option("--seed", seed, "override the sampling seed for every entry");

    std::string sample_path;
    auto* sample =
        app.add_subcommand("sample", "Export grid CSVs for job entries with a grid block");
    sample->add_option("job", sample_path, "job JSON file")
        ->required()
        ->check(CLI::ExistingFile);

    std::string disc_path;
    auto* disc = app.add_subcommand(
        "discrepancies", "Run recurrence-vs-closed-form cross checks and emit the report");
    disc->add_option("job", disc_path,
                     "optional job JSON whose discrepancies block sets nmax/weight_max/report")
        ->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // bad usage is a configuration error
    }

    try {
        if (*list) {
            print_families(std::cout);
            return 0;
        }
        if (*verify) {
            CliOverrides over;
            if (verify->count("--tol")) over.tol = tol;
            if (verify->count("--delta")) over.delta = delta;
            if (verify->count("--seed")) over.seed = seed;
            return run_verify(parse_job_file(load_json(verify_path), over));
        }
        if (*sample) return run_sample(parse_job_file(load_json(sample_path)));
        return run_discrepancies(disc_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
