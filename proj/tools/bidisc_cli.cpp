// Command-line front end: run one scenario, a suite directory, or emit the
// region grids for a scenario.  Exit codes: 0 pass, 1 check failure,
// 2 usage or parse error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bidisc/scenario.hpp"

namespace fs = std::filesystem;

namespace {

struct cli_overrides {
    double tol_quad = -1.0;
    double tol_limit = -1.0;
    int quad_nodes = -1;
    int grid_n = -1;
    long long seed = -1;
};

void apply_overrides(bidisc::scenario& sc, const cli_overrides& ov) {
    if (ov.tol_quad > 0.0) sc.tol.quad = ov.tol_quad;
    if (ov.tol_limit > 0.0) sc.tol.limit = ov.tol_limit;
    if (ov.quad_nodes > 0) sc.counts.quad_nodes = ov.quad_nodes;
    if (ov.grid_n > 0) sc.grids.n = ov.grid_n;
    if (ov.seed >= 0) sc.seed = static_cast<std::uint64_t>(ov.seed);
}

void print_summary(const bidisc::check_report& rep) {
    for (const auto& c : rep.checks)
        std::cout << (c.pass ? "PASS " : "FAIL ") << rep.label << "." << c.name
                  << "  metric=" << c.metric << " tol=" << c.tol << "\n";
    std::cout << rep.label << ": " << (rep.checks.size() - rep.failed()) << "/" << rep.checks.size()
              << " checks passed\n";
}

std::vector<std::string> scenario_files_in(const std::string& dir) {
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path().string());
    }
    std::sort(files.begin(), files.end());
    return files;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bidisc: harmonic-measure and holomorphic-extension scenario runner"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    cli_overrides ov;
    std::string out_dir = "out";
    bool timings = false;

    app.add_option("--tol-quad", ov.tol_quad, "tolerance for quadrature-backed identities")
        ->envname("BIDISC_TOL_QUAD");
    app.add_option("--tol-limit", ov.tol_limit, "tolerance for extrapolated angular limits")
        ->envname("BIDISC_TOL_LIMIT");
    app.add_option("--quad-nodes", ov.quad_nodes, "node count for circle quadratures")
        ->envname("BIDISC_QUAD_NODES");
    app.add_option("--grid-n", ov.grid_n, "grid resolution for emitted CSV fields")
        ->envname("BIDISC_GRID_N");
    app.add_option("--seed", ov.seed, "sample-placement seed")->envname("BIDISC_SEED");
    app.add_option("--out-dir", out_dir, "output directory")->envname("BIDISC_OUT_DIR");
    app.add_flag("--timings", timings, "record wall times in reports (breaks byte determinism)")
        ->envname("BIDISC_TIMINGS");

    std::string run_file, suite_dir, grids_file;
    std::vector<std::string> slices;

    CLI::App* cmd_run = app.add_subcommand("run", "run one scenario end to end");
    cmd_run->add_option("scenario", run_file, "scenario JSON file")->required();

    CLI::App* cmd_suite = app.add_subcommand("suite", "run every scenario in a directory");
    cmd_suite->add_option("dir", suite_dir, "directory of scenario JSON files")->required();

    CLI::App* cmd_grids = app.add_subcommand("grids", "emit region grids for a scenario");
    cmd_grids->add_option("scenario", grids_file, "scenario JSON file")->required();
    cmd_grids->add_option("--slice", slices,
                          "slice spec like w=0.1+0.2i or z=0.5 (overrides scenario grid config)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    bidisc::run_options opts;
    opts.out_dir = out_dir;
    opts.timings = timings;

    try {
        if (cmd_run->parsed()) {
            bidisc::scenario sc = bidisc::load_scenario_file(run_file);
            apply_overrides(sc, ov);
            bidisc::check_report rep = bidisc::run_scenario(sc, opts);
            print_summary(rep);
            return rep.all_pass() ? 0 : 1;
        }
        if (cmd_suite->parsed()) {
            std::vector<std::string> files = scenario_files_in(suite_dir);
            if (files.empty()) {
                std::cerr << "suite: no scenario files in " << suite_dir << "\n";
                return 2;
            }
            // run with the shared overrides applied per scenario
            bidisc::suite_result result;
            for (const auto& path : files) {
                try {
                    bidisc::scenario sc = bidisc::load_scenario_file(path);
                    apply_overrides(sc, ov);
                    bidisc::check_report rep = bidisc::run_scenario(sc, opts);
                    if (!rep.all_pass()) ++result.scenarios_failed;
                    result.reports.push_back(std::move(rep));
                } catch (const std::exception& e) {
                    result.parse_failures.push_back(path + ": " + e.what());
                }
            }
            nlohmann::ordered_json agg;
            agg["scenarios"] = nlohmann::ordered_json::array();
            for (const auto& rep : result.reports) {
                nlohmann::ordered_json row;
                row["name"] = rep.label;
                row["pass"] = rep.all_pass();
                row["failed_checks"] = rep.failed();
                agg["scenarios"].push_back(row);
                print_summary(rep);
            }
            for (const auto& msg : result.parse_failures) {
                std::cerr << "parse failure: " << msg << "\n";
                nlohmann::ordered_json row;
                row["name"] = msg;
                row["pass"] = false;
                row["failed_checks"] = -1;
                agg["scenarios"].push_back(row);
            }
            agg["total"] = static_cast<int>(result.reports.size() + result.parse_failures.size());
            agg["passed"] = static_cast<int>(result.reports.size()) - result.scenarios_failed;
            fs::create_directories(out_dir);
            std::ofstream aggout(fs::path(out_dir) / "suite.json", std::ios::binary);
            aggout << agg.dump(2) << "\n";
            std::cout << agg["passed"] << "/" << agg["total"] << " scenarios passed\n";
            return result.all_pass() ? 0 : 1;
        }
        if (cmd_grids->parsed()) {
            bidisc::scenario sc = bidisc::load_scenario_file(grids_file);
            apply_overrides(sc, ov);
            for (const auto& s : slices) {
                auto eq = s.find('=');
                if (eq == std::string::npos || (s[0] != 'z' && s[0] != 'w')) {
                    std::cerr << "bad slice spec: " << s << "\n";
                    return 2;
                }
                std::string body = s.substr(eq + 1);
                double re = 0.0, im = 0.0;
                char sign = '+';
                std::size_t ipos = body.find_first_of("+-", 1);
                if (ipos != std::string::npos && body.find('i') != std::string::npos) {
                    sign = body[ipos];
                    re = std::stod(body.substr(0, ipos));
                    std::string imag = body.substr(ipos + 1);
                    if (!imag.empty() && imag.back() == 'i') imag.pop_back();
                    im = (sign == '-' ? -1.0 : 1.0) * (imag.empty() ? 1.0 : std::stod(imag));
                } else {
                    re = std::stod(body);
                }
                if (s[0] == 'w')
                    sc.grids.w_slice = bidisc::cplx(re, im);
                else
                    sc.grids.z_slice = bidisc::cplx(re, im);
            }
            bidisc::check_report rep = bidisc::emit_region_grids(sc, out_dir);
            print_summary(rep);
            return rep.all_pass() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
