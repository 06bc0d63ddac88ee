#ifndef BIDISC_SCENARIO_HPP
#define BIDISC_SCENARIO_HPP

#include <string>
#include <vector>

#include "bidisc/boundary.hpp"
#include "bidisc/expression.hpp"
#include "bidisc/extension.hpp"
#include "bidisc/report.hpp"

namespace bidisc {

struct scenario_schedules {
    int delta_count = 6;             // delta_n = 2^-n
    int exhaustion_steps = 8;        // A_n = A shrunk by exhaustion_shrink * 2^-n
    double exhaustion_shrink = 0.2;  // radians at step 1
    double exhaustion_gap_tol = 1e-2;
};

struct scenario_tolerances {
    double quad = 1e-8;            // quadrature-backed identities
    double limit = 1e-6;           // extrapolated angular limits
    double glue = 1e-8;            // overlap agreement
    double negative_detect = 1e-3; // perturbation size for the control
    double hull_margin = 5e-2;     // clearance kept from M-hat when sampling
};

struct laurent_config {
    cplx w0 = 0.0;
    double s_minus = 0.45;
    double s_plus = 0.85;
    int order = 64;
};

struct poisson_config {
    double radius = 0.3;   // sample circle |w| = radius
    double z_inner = 0.75; // z-window of the reconstruction patch
    double z_outer = 0.98;
};

struct grid_config {
    int n = 64;
    cplx w_slice = 0.0;
    cplx z_slice = cplx(0.6, 0.0);
};

struct scenario_counts {
    int match_samples = 10000;
    int angular_points = 200;
    int fiber_checks = 8;
    int quad_nodes = 256;
    int glue_samples = 4000;
};

// One end-to-end verification instance: boundary sets, singular graphs, the
// closed-form ground truth, and the schedules/tolerances of the run.
struct scenario {
    std::string name = "scenario";
    boundary_set A, B;
    singular_set M;
    expr F;
    cplx probe_w = cplx(0.05, 0.0);
    scenario_schedules schedules;
    scenario_tolerances tol;
    laurent_config laurent;
    poisson_config poisson;
    grid_config grids;
    scenario_counts counts;
    std::uint64_t seed = 1;

    static scenario from_json(const std::string& text);
};

scenario load_scenario_file(const std::string& path);

struct run_options {
    std::string out_dir;      // empty: no files written
    bool emit_grids = true;
    bool timings = false;
};

// Full pipeline: hypothesis checks, envelope/hull, separate holomorphy,
// Laurent splitting, gluing, angular limits, uniqueness probe, negative
// control, schedule fidelity.  Check failures are recorded, not thrown.
check_report run_scenario(const scenario& sc, const run_options& opts = {});

// CSV grids for the envelope slice, the dyadic level sets, and the hull
// slice; verifies level-set nesting along the way.
check_report emit_region_grids(const scenario& sc, const std::string& out_dir);

struct suite_result {
    std::vector<check_report> reports;
    std::vector<std::string> parse_failures;
    int scenarios_failed = 0;

    bool all_pass() const { return scenarios_failed == 0 && parse_failures.empty(); }
};

suite_result run_suite(const std::vector<std::string>& scenario_files, const run_options& opts);

} // namespace bidisc

#endif
