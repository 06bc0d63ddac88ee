#ifndef BIDISC_EXTENSION_HPP
#define BIDISC_EXTENSION_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bidisc/boundary.hpp"
#include "bidisc/expression.hpp"
#include "bidisc/numeric.hpp"
#include "bidisc/regions.hpp"
#include "bidisc/report.hpp"

namespace bidisc {

// (1/2pi i) oint f(eta) / (eta - w) deta over |eta - w0| = s by the N-node
// trapezoid rule; samples sit at eta_m = w0 + s e^{2pi i m / N}.  Returns the
// interior Cauchy value for w inside and the (negative-orientation) exterior
// contribution for w outside; w too close to the circle is rejected.
cplx cauchy_circle(const std::vector<cplx>& samples, cplx w0, double s, cplx w);
cplx cauchy_circle(const std::function<cplx(cplx)>& f, cplx w0, double s, int n, cplx w);

// Laurent decomposition f = f_plus + f_minus on the annulus
// s_minus < |w - w0| < s_plus; f_plus collects the nonnegative powers (from
// the outer circle), f_minus the negative ones (from the inner circle).
struct laurent_split_result {
    cplx w0 = 0.0;
    double s_minus = 0.0, s_plus = 0.0;
    int order = 0;
    std::vector<cplx> plus_coeffs;  // a_0 .. a_order
    std::vector<cplx> minus_coeffs; // b_1 .. b_order for (w - w0)^{-k}
    double residual = 0.0;          // max mismatch against f on the mid-circle

    cplx eval_plus(cplx w) const;  // holomorphic on |w - w0| < s_plus
    cplx eval_minus(cplx w) const; // holomorphic on |w - w0| > s_minus
    cplx eval(cplx w) const;       // the sum, valid on the annulus closure
};

// Coefficients by discrete Fourier sums on the two circles; the a-posteriori
// mid-circle residual governs acceptance.
laurent_split_result laurent_split(const std::function<cplx(cplx)>& f, cplx w0, double s_minus,
                                   double s_plus, int order = 64, int nodes = 0,
                                   double reject_tol = 1e-8);

// Poisson integral of boundary samples on the unit circle (theta_m = 2pi m/N)
// at an interior point; matches the holomorphic value when the samples come
// from a function holomorphic on E and continuous up to the boundary.
cplx poisson_reconstruct(const std::vector<cplx>& samples, cplx z);
cplx poisson_reconstruct(const std::function<cplx(cplx)>& f, int n, cplx z);

enum class graph_orientation { over_z, over_w };

// One singular graph: w = phi(z) over z, or z = psi(w) over w.  The map may
// have isolated poles (the fiber escapes the closed disc there).
struct graph_fiber {
    graph_orientation orientation = graph_orientation::over_z;
    expr map;

    // evaluated at t via whichever variable the expression uses
    std::optional<cplx> value_at(cplx t) const;
};

struct singular_set {
    std::vector<graph_fiber> graphs;

    bool empty() const { return graphs.empty(); }
    std::vector<const graph_fiber*> over_z() const;
    std::vector<const graph_fiber*> over_w() const;
};

struct fiber_points {
    std::vector<cplx> inside; // fiber points in the open disc
    int discarded = 0;        // points outside the closed disc (or escaped)
};

// M_a from the over-z graphs at a = e^{i angle}; M^b symmetrically from the
// over-w graphs.
fiber_points fibers(const singular_set& M, double a_angle);
fiber_points cofibers(const singular_set& M, double b_angle);

struct collar_options {
    int boundary_samples = 2048; // dense samples along each arc
    int radial_samples = 8;      // layers across the collar depth
    int schedule_depth = 10;     // collar radii 2^-1 .. 2^-depth
    double clearance = 1e-3;     // required distance between graph image and collar
};

struct collar_result {
    bool ok = false;
    double margin = 0.0;              // verified hypothesis margin on A x B
    std::vector<double> a_radii;      // one radius per arc of A
    std::vector<double> b_radii;      // one radius per arc of B
    std::string note;
};

// Verified collar radii: neighborhoods of the arcs of A and B whose product
// misses every singular graph, checked by dense sampling with a measured
// local-variation bound.  Fails when M meets A x B.
collar_result singular_free_collar(const singular_set& M, const boundary_set& A,
                                   const boundary_set& B, const collar_options& opts = {});

// Candidate hull M-hat: the union of the full graphs inside the envelope.
// Membership is distance-based; empty when M is empty.
struct singular_hull {
    singular_set M;
    double tol = 1e-9;

    bool empty() const { return M.empty(); }
    // min over graphs of |w - phi(z)| resp. |z - psi(w)|; +inf if no graph
    // evaluates at the point
    double distance(cplx z, cplx w) const;
    bool contains(cplx z, cplx w) const { return distance(z, w) <= tol; }
    std::vector<cplx> slice_at_z(cplx z) const; // over-z graph values
    std::vector<cplx> slice_at_w(cplx w) const; // over-w graph values
};

singular_hull candidate_singular_hull(const singular_set& M, double tol = 1e-9);

// Local holomorphic patch: region oracle plus evaluator plus provenance.
struct local_patch {
    std::string label;
    std::function<bool(cplx, cplx)> region;
    std::function<eval_result(cplx, cplx)> evaluate;
};

struct glue_pair_report {
    std::string first, second;
    int overlap_samples = 0;
    double max_discrepancy = 0.0;
};

struct glue_options {
    int samples = 4000;
    int min_overlap = 16;
    double tol = 1e-9;
    std::uint64_t seed = 7;
};

// Combined evaluator answering with the first accepting patch; gluing is
// rejected when any overlap disagrees beyond tolerance.
struct glue_result {
    bool ok = false;
    double max_discrepancy = 0.0;
    std::vector<glue_pair_report> pairs;
    std::vector<local_patch> patches;

    std::optional<cplx> eval(cplx z, cplx w) const;
    bool covers(cplx z, cplx w) const;
};

using pair_sampler = std::function<std::pair<cplx, cplx>(sample_rng&)>;

glue_result glue(std::vector<local_patch> patches, const pair_sampler& sampler,
                 const glue_options& opts = {});

// Angular limit along an approach path by iterated Aitken extrapolation;
// non-Cauchy samples yield "no limit".
struct angular_limit_result {
    limit_estimate est;
    int used_points = 0;
};

angular_limit_result angular_limit(const std::function<std::optional<cplx>(cplx)>& f,
                                   const approach_path& path, double tol = 1e-6);

// Two-variable variant: z runs along the path with w fixed.
angular_limit_result angular_limit(const std::function<std::optional<cplx>(cplx, cplx)>& f,
                                   const approach_path& path, cplx w_fixed, double tol = 1e-6);

struct uniqueness_options {
    double tol_limit = 1e-6;
    int grid_n = 21;
    double grid_radius = 0.9;
    double spot_check_radius = 0.02;
};

// Vanishing-boundary-data probe: estimates angular limits of g along the
// paths; when every limit is below tolerance, the interior sup must sit
// under a bound derived from the limit sizes, numerically witnessing the
// g == 0 conclusion.  Nonzero limits are reported, not thrown.
struct uniqueness_report {
    std::vector<limit_estimate> limits;
    double max_limit_mod = 0.0;
    bool all_limits_small = false;
    bool nonzero_limit_flag = false;
    bool no_limit_flag = false;
    double interior_max = 0.0;
    double bound = 0.0;
    bool vanishing_consistent = false;
    double holomorphy_residual = 0.0;
};

uniqueness_report uniqueness_probe(const std::function<std::optional<cplx>(cplx)>& g,
                                   const boundary_set& A,
                                   const std::vector<approach_path>& paths,
                                   const uniqueness_options& opts = {});

} // namespace bidisc

#endif
