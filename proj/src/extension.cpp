#include "bidisc/extension.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bidisc {

cplx cauchy_circle(const std::vector<cplx>& samples, cplx w0, double s, cplx w) {
    const std::size_t n = samples.size();
    if (n < 4) throw std::invalid_argument("cauchy_circle: need at least 4 samples");
    if (std::abs(std::abs(w - w0) - s) < 1e-6 * s)
        throw std::domain_error("cauchy_circle: target too close to the sample circle");
    cplx acc = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        const cplx e = unit(two_pi * m / n);
        acc += samples[m] * e / (w0 + s * e - w);
    }
    return acc * (s / static_cast<double>(n));
}

cplx cauchy_circle(const std::function<cplx(cplx)>& f, cplx w0, double s, int n, cplx w) {
    std::vector<cplx> samples(n);
    for (int m = 0; m < n; ++m) samples[m] = f(w0 + s * unit(two_pi * m / n));
    return cauchy_circle(samples, w0, s, w);
}

cplx laurent_split_result::eval_plus(cplx w) const {
    if (std::abs(w - w0) >= s_plus + 1e-9)
        throw std::domain_error("laurent_split: f_plus evaluated outside |w - w0| < s_plus");
    const cplx u = w - w0;
    cplx acc = 0.0;
    for (auto it = plus_coeffs.rbegin(); it != plus_coeffs.rend(); ++it) acc = acc * u + *it;
    return acc;
}

cplx laurent_split_result::eval_minus(cplx w) const {
    if (std::abs(w - w0) <= s_minus - 1e-9)
        throw std::domain_error("laurent_split: f_minus evaluated inside |w - w0| > s_minus");
    const cplx u = 1.0 / (w - w0);
    cplx acc = 0.0;
    for (auto it = minus_coeffs.rbegin(); it != minus_coeffs.rend(); ++it) acc = acc * u + *it;
    return acc * u;
}

cplx laurent_split_result::eval(cplx w) const { return eval_plus(w) + eval_minus(w); }

laurent_split_result laurent_split(const std::function<cplx(cplx)>& f, cplx w0, double s_minus,
                                   double s_plus, int order, int nodes, double reject_tol) {
    if (!(0.0 < s_minus && s_minus < s_plus))
        throw std::invalid_argument("laurent_split: need 0 < s_minus < s_plus");
    if (order < 1) throw std::invalid_argument("laurent_split: order must be positive");
    if (nodes <= 0) nodes = 4 * order;
    if (nodes < 2 * order + 2) nodes = 2 * order + 2;

    laurent_split_result out;
    out.w0 = w0;
    out.s_minus = s_minus;
    out.s_plus = s_plus;
    out.order = order;
    out.plus_coeffs.assign(order + 1, 0.0);
    out.minus_coeffs.assign(order, 0.0);

    std::vector<cplx> outer(nodes), inner(nodes);
    for (int m = 0; m < nodes; ++m) {
        const cplx e = unit(two_pi * m / nodes);
        outer[m] = f(w0 + s_plus * e);
        inner[m] = f(w0 + s_minus * e);
    }
    for (int k = 0; k <= order; ++k) {
        cplx acc = 0.0;
        for (int m = 0; m < nodes; ++m) acc += outer[m] * unit(-two_pi * k * m / nodes);
        out.plus_coeffs[k] = acc / (static_cast<double>(nodes) * std::pow(s_plus, k));
    }
    for (int k = 1; k <= order; ++k) {
        cplx acc = 0.0;
        for (int m = 0; m < nodes; ++m) acc += inner[m] * unit(two_pi * k * m / nodes);
        out.minus_coeffs[k - 1] = acc * std::pow(s_minus, k) / static_cast<double>(nodes);
    }

    // a-posteriori residual on the geometric-mean circle, sampled off the
    // coefficient nodes
    const double rho = std::sqrt(s_minus * s_plus);
    double res = 0.0;
    for (int m = 0; m < nodes; ++m) {
        const cplx w = w0 + rho * unit(two_pi * (m + 0.5) / nodes);
        res = std::max(res, std::abs(f(w) - out.eval(w)));
    }
    out.residual = res;
    if (res > reject_tol) {
        std::ostringstream msg;
        msg << "laurent_split: mid-circle residual " << res << " exceeds tolerance " << reject_tol
            << " (function not holomorphic on the closed annulus?)";
        throw std::runtime_error(msg.str());
    }
    return out;
}

cplx poisson_reconstruct(const std::vector<cplx>& samples, cplx z) {
    if (std::abs(z) >= 1.0)
        throw std::domain_error("poisson_reconstruct: point must lie in the open disc");
    const std::size_t n = samples.size();
    if (n < 4) throw std::invalid_argument("poisson_reconstruct: need at least 4 samples");
    const double zn = std::norm(z);
    cplx acc = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        const cplx e = unit(two_pi * m / n);
        acc += samples[m] * (1.0 - zn) / std::norm(e - z);
    }
    return acc / static_cast<double>(n);
}

cplx poisson_reconstruct(const std::function<cplx(cplx)>& f, int n, cplx z) {
    std::vector<cplx> samples(n);
    for (int m = 0; m < n; ++m) samples[m] = f(unit(two_pi * m / n));
    return poisson_reconstruct(samples, z);
}

std::optional<cplx> graph_fiber::value_at(cplx t) const {
    eval_result r = eval(map, t, t);
    if (!r.ok() || !std::isfinite(r.value.real()) || !std::isfinite(r.value.imag()))
        return std::nullopt;
    return r.value;
}

std::vector<const graph_fiber*> singular_set::over_z() const {
    std::vector<const graph_fiber*> v;
    for (const auto& g : graphs)
        if (g.orientation == graph_orientation::over_z) v.push_back(&g);
    return v;
}

std::vector<const graph_fiber*> singular_set::over_w() const {
    std::vector<const graph_fiber*> v;
    for (const auto& g : graphs)
        if (g.orientation == graph_orientation::over_w) v.push_back(&g);
    return v;
}

namespace {

fiber_points fiber_values(const std::vector<const graph_fiber*>& graphs, double angle) {
    fiber_points out;
    const cplx t = unit(angle);
    for (const auto* g : graphs) {
        std::optional<cplx> v = g->value_at(t);
        if (v && std::abs(*v) < 1.0 - 1e-12)
            out.inside.push_back(*v);
        else
            ++out.discarded;
    }
    return out;
}

} // namespace

fiber_points fibers(const singular_set& M, double a_angle) {
    return fiber_values(M.over_z(), a_angle);
}

fiber_points cofibers(const singular_set& M, double b_angle) {
    return fiber_values(M.over_w(), b_angle);
}

namespace {

// distance from a point to the arc-union set on the unit circle, as a subset
// of the plane
double distance_to_boundary_set(cplx v, const boundary_set& S) {
    if (S.is_empty()) return std::numeric_limits<double>::infinity();
    const double r = std::abs(v);
    const double ang = wrap_angle(std::arg(v));
    if (S.contains(ang)) return std::abs(r - 1.0);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& a : S.arcs()) {
        best = std::min(best, std::abs(v - unit(a.start)));
        best = std::min(best, std::abs(v - unit(a.end())));
    }
    return best;
}

// dense samples of the collar {z : 1 - rho <= |z| <= 1, angle within the
// arc padded by rho}
std::vector<cplx> collar_samples(const arc& a, double rho, int n_ang, int n_rad) {
    std::vector<cplx> pts;
    pts.reserve(static_cast<std::size_t>(n_ang) * n_rad);
    const double lo = a.start - rho;
    const double span = a.length + 2.0 * rho;
    for (int i = 0; i < n_ang; ++i) {
        const double th = lo + span * i / (n_ang - 1);
        for (int j = 0; j < n_rad; ++j) {
            const double rad = 1.0 - rho * j / (n_rad - 1);
            pts.push_back(rad * unit(th));
        }
    }
    return pts;
}

// does the image point land clear of every collar of S at radius rho?
bool clear_of_collars(cplx v, const boundary_set& S, double rho, double pad) {
    const double r = std::abs(v);
    if (r < 1.0 - rho - pad) return true; // strictly inside the collar-free core
    if (r > 1.0 + pad) return true;       // outside the closed disc entirely
    const double ang = wrap_angle(std::arg(v));
    for (const auto& a : S.arcs()) {
        if (a.full) return false;
        const double off = wrap_angle(ang - (a.start - rho));
        const double span = a.length + 2.0 * rho;
        if (off <= span + pad / std::max(0.5, r)) return false;
        if (off >= two_pi - pad / std::max(0.5, r)) return false;
    }
    return true;
}

} // namespace

collar_result singular_free_collar(const singular_set& M, const boundary_set& A,
                                   const boundary_set& B, const collar_options& opts) {
    collar_result out;
    if (A.measure() <= 0.0 || B.measure() <= 0.0) {
        out.note = "boundary sets must have positive measure";
        return out;
    }
    if (M.empty()) {
        out.ok = true;
        out.margin = std::numeric_limits<double>::infinity();
        out.a_radii.assign(A.arcs().size(), 0.5);
        out.b_radii.assign(B.arcs().size(), 0.5);
        out.note = "empty singular set: maximal scheduled radii";
        return out;
    }

    // hypothesis margin: graph values over A stay clear of B and vice versa
    double margin = std::numeric_limits<double>::infinity();
    auto margin_side = [&](const std::vector<const graph_fiber*>& graphs, const boundary_set& from,
                           const boundary_set& to) {
        for (const auto* g : graphs) {
            for (const auto& a : from.arcs()) {
                for (int i = 0; i < opts.boundary_samples; ++i) {
                    const double th = a.start + a.length * (i + 0.5) / opts.boundary_samples;
                    std::optional<cplx> v = g->value_at(unit(th));
                    if (!v) continue; // pole: the fiber escapes, no intersection
                    margin = std::min(margin, distance_to_boundary_set(*v, to));
                }
            }
        }
    };
    margin_side(M.over_z(), A, B);
    margin_side(M.over_w(), B, A);
    out.margin = std::isfinite(margin) ? margin : std::numeric_limits<double>::infinity();
    if (margin <= opts.clearance) {
        out.note = "hypothesis M n (A x B) = {} could not be verified: margin too small";
        return out;
    }

    // shrink a common dyadic radius until every graph image clears the
    // opposite collar; the measured local variation pads the sampled bound
    for (int n = 1; n <= opts.schedule_depth; ++n) {
        const double rho = std::ldexp(1.0, -n);
        bool good = true;
        auto side_ok = [&](const std::vector<const graph_fiber*>& graphs,
                           const boundary_set& from, const boundary_set& to) {
            for (const auto* g : graphs) {
                for (const auto& a : from.arcs()) {
                    auto pts = collar_samples(a, rho, opts.boundary_samples, opts.radial_samples);
                    // measured variation between neighbouring samples
                    double pad = 0.0;
                    std::optional<cplx> prev;
                    std::vector<std::optional<cplx>> vals(pts.size());
                    for (std::size_t i = 0; i < pts.size(); ++i) {
                        vals[i] = g->value_at(pts[i]);
                        if (vals[i] && prev) pad = std::max(pad, std::abs(*vals[i] - *prev));
                        prev = vals[i];
                    }
                    pad = 2.0 * pad + opts.clearance;
                    for (const auto& v : vals) {
                        if (!v) continue;
                        if (!clear_of_collars(*v, to, rho, pad)) return false;
                    }
                }
            }
            return true;
        };
        if (!side_ok(M.over_z(), A, B)) good = false;
        if (good && !side_ok(M.over_w(), B, A)) good = false;
        if (good) {
            out.ok = true;
            out.a_radii.assign(A.arcs().size(), rho);
            out.b_radii.assign(B.arcs().size(), rho);
            return out;
        }
    }
    out.note = "no collar radius in the dyadic schedule could be verified";
    return out;
}

singular_hull candidate_singular_hull(const singular_set& M, double tol) {
    singular_hull h;
    h.M = M;
    h.tol = tol;
    return h;
}

double singular_hull::distance(cplx z, cplx w) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& g : M.graphs) {
        if (g.orientation == graph_orientation::over_z) {
            std::optional<cplx> v = g.value_at(z);
            if (v) best = std::min(best, std::abs(w - *v));
        } else {
            std::optional<cplx> v = g.value_at(w);
            if (v) best = std::min(best, std::abs(z - *v));
        }
    }
    return best;
}

std::vector<cplx> singular_hull::slice_at_z(cplx z) const {
    std::vector<cplx> pts;
    for (const auto* g : M.over_z()) {
        std::optional<cplx> v = g->value_at(z);
        if (v) pts.push_back(*v);
    }
    return pts;
}

std::vector<cplx> singular_hull::slice_at_w(cplx w) const {
    std::vector<cplx> pts;
    for (const auto* g : M.over_w()) {
        std::optional<cplx> v = g->value_at(w);
        if (v) pts.push_back(*v);
    }
    return pts;
}

std::optional<cplx> glue_result::eval(cplx z, cplx w) const {
    for (const auto& p : patches) {
        if (p.region(z, w)) {
            eval_result r = p.evaluate(z, w);
            if (r.ok()) return r.value;
            return std::nullopt;
        }
    }
    return std::nullopt;
}

bool glue_result::covers(cplx z, cplx w) const {
    for (const auto& p : patches)
        if (p.region(z, w)) return true;
    return false;
}

glue_result glue(std::vector<local_patch> patches, const pair_sampler& sampler,
                 const glue_options& opts) {
    if (patches.empty()) throw std::invalid_argument("glue: need at least one patch");
    glue_result out;
    out.patches = std::move(patches);
    const std::size_t np = out.patches.size();
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = i + 1; j < np; ++j)
            out.pairs.push_back({out.patches[i].label, out.patches[j].label, 0, 0.0});

    sample_rng rng(opts.seed);
    std::vector<std::optional<cplx>> vals(np);
    bool eval_failure = false;
    for (int it = 0; it < opts.samples; ++it) {
        auto [z, w] = sampler(rng);
        int n_accept = 0;
        for (std::size_t i = 0; i < np; ++i) {
            vals[i].reset();
            if (out.patches[i].region(z, w)) {
                eval_result r = out.patches[i].evaluate(z, w);
                if (r.ok())
                    vals[i] = r.value;
                else
                    eval_failure = true;
                ++n_accept;
            }
        }
        if (n_accept < 2) continue;
        std::size_t pair_idx = 0;
        for (std::size_t i = 0; i < np; ++i) {
            for (std::size_t j = i + 1; j < np; ++j, ++pair_idx) {
                if (vals[i] && vals[j]) {
                    auto& pr = out.pairs[pair_idx];
                    ++pr.overlap_samples;
                    pr.max_discrepancy =
                        std::max(pr.max_discrepancy, std::abs(*vals[i] - *vals[j]));
                }
            }
        }
    }
    double worst = 0.0;
    for (const auto& pr : out.pairs) worst = std::max(worst, pr.max_discrepancy);
    out.max_discrepancy = worst;
    out.ok = !eval_failure && worst <= opts.tol;
    return out;
}

angular_limit_result angular_limit(const std::function<std::optional<cplx>(cplx)>& f,
                                   const approach_path& path, double tol) {
    std::vector<cplx> samples;
    samples.reserve(path.points.size());
    for (const cplx& p : path.points) {
        std::optional<cplx> v = f(p);
        if (v) samples.push_back(*v);
    }
    angular_limit_result out;
    out.used_points = static_cast<int>(samples.size());
    out.est = estimate_limit(samples, tol);
    return out;
}

angular_limit_result angular_limit(const std::function<std::optional<cplx>(cplx, cplx)>& f,
                                   const approach_path& path, cplx w_fixed, double tol) {
    return angular_limit([&](cplx z) { return f(z, w_fixed); }, path, tol);
}

uniqueness_report uniqueness_probe(const std::function<std::optional<cplx>(cplx)>& g,
                                   const boundary_set& A,
                                   const std::vector<approach_path>& paths,
                                   const uniqueness_options& opts) {
    (void)A; // the paths carry the base points; A documents provenance
    uniqueness_report rep;
    double max_err = 0.0;
    bool all_small = !paths.empty();
    for (const auto& path : paths) {
        angular_limit_result lr = angular_limit(g, path, opts.tol_limit);
        rep.limits.push_back(lr.est);
        if (!lr.est.exists) {
            rep.no_limit_flag = true;
            all_small = false;
            continue;
        }
        const double mod = std::abs(lr.est.value);
        rep.max_limit_mod = std::max(rep.max_limit_mod, mod);
        max_err = std::max(max_err, lr.est.error_bar);
        if (mod > opts.tol_limit) {
            rep.nonzero_limit_flag = true;
            all_small = false;
        }
    }
    rep.all_limits_small = all_small;

    // interior control grid
    double interior = 0.0;
    cplx spot;
    bool have_spot = false;
    for (int iy = 0; iy < opts.grid_n; ++iy) {
        for (int ix = 0; ix < opts.grid_n; ++ix) {
            const double x = -opts.grid_radius + 2.0 * opts.grid_radius * ix / (opts.grid_n - 1);
            const double y = -opts.grid_radius + 2.0 * opts.grid_radius * iy / (opts.grid_n - 1);
            const cplx z(x, y);
            if (std::abs(z) > opts.grid_radius) continue;
            std::optional<cplx> v = g(z);
            if (!v) continue;
            interior = std::max(interior, std::abs(*v));
            if (!have_spot && std::abs(z) < opts.grid_radius - 2.0 * opts.spot_check_radius) {
                spot = z;
                have_spot = true;
            }
        }
    }
    rep.interior_max = interior;
    rep.bound = 100.0 * (rep.max_limit_mod + max_err) + 10.0 * opts.tol_limit;
    rep.vanishing_consistent = rep.all_limits_small && rep.interior_max <= rep.bound;

    // Morera-style spot check of holomorphy where a full circle fits
    if (have_spot) {
        const int n = 64;
        std::vector<cplx> circle(n);
        bool ok = true;
        for (int m = 0; m < n && ok; ++m) {
            std::optional<cplx> v = g(spot + opts.spot_check_radius * unit(two_pi * m / n));
            if (v)
                circle[m] = *v;
            else
                ok = false;
        }
        std::optional<cplx> center = g(spot);
        if (ok && center)
            rep.holomorphy_residual =
                std::abs(cauchy_circle(circle, spot, opts.spot_check_radius, spot) - *center);
    }
    return rep;
}

} // namespace bidisc
