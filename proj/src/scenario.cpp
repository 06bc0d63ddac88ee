#include "bidisc/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "bidisc/conformal.hpp"
#include "bidisc/harmonic.hpp"
#include "bidisc/regions.hpp"

namespace bidisc {

namespace {

using nlohmann::json;

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

cplx parse_cplx(const json& j) { return cplx(j.at(0).get<double>(), j.at(1).get<double>()); }

boundary_set parse_boundary(const json& j) {
    std::vector<arc> arcs;
    for (const auto& pair : j) {
        double a = pair.at(0).get<double>();
        double b = pair.at(1).get<double>();
        if (near(wrap_angle(b - a), 0.0) && std::abs(b - a) > pi)
            arcs.push_back(arc::full_circle());
        else
            arcs.push_back(arc(a, b));
    }
    return boundary_set(std::move(arcs));
}

expr parse_expr(const json& j) { return expr_from_json(j.dump()); }

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    if (j.contains(key)) return j.at(key).get<T>();
    return fallback;
}

// length-weighted angle sample with a fractional inset from arc endpoints
double sample_angle(const boundary_set& S, sample_rng& rng, double inset_frac = 0.02) {
    double t = rng.uniform() * S.measure();
    const auto& arcs = S.arcs();
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        if (t <= arcs[i].length || i + 1 == arcs.size()) {
            const double inset = std::min(inset_frac * arcs[i].length, 0.45 * arcs[i].length);
            const double span = arcs[i].length - 2.0 * inset;
            return wrap_angle(arcs[i].start + inset + span * rng.uniform());
        }
        t -= arcs[i].length;
    }
    return 0.0;
}

cplx eval_or_throw(const expr& f, cplx z, cplx w) {
    eval_result r = eval(f, z, w);
    if (!r.ok()) throw std::runtime_error("expression evaluation hit a singularity");
    return r.value;
}

struct pipeline {
    const scenario& sc;
    cross X;
    singular_hull hull;

    explicit pipeline(const scenario& s)
        : sc(s), X(s.A, s.B), hull(candidate_singular_hull(s.M)) {}

    double laurent_anchor() const {
        const arc& a0 = sc.A.arcs().front();
        return wrap_angle(a0.start + 0.5 * a0.length);
    }

    bool clear_of_hull(cplx z, cplx w) const {
        return hull.distance(z, w) > sc.tol.hull_margin;
    }

    bool in_envelope(cplx z, cplx w) const {
        if (std::abs(z) >= 1.0 - 1e-12 || std::abs(w) >= 1.0 - 1e-12) return false;
        return envelope_contains(X, z, w).inside;
    }

    // fiber points of M over the z-slice must clear the annulus closure
    bool fiber_clear_of_annulus(cplx z) const {
        for (const cplx& p : hull.slice_at_z(z)) {
            const double d = std::abs(p - sc.laurent.w0);
            if (d >= 0.95 * sc.laurent.s_minus && d <= 1.05 * sc.laurent.s_plus) return false;
        }
        return true;
    }

    bool fiber_clear_of_poisson_disc(cplx z) const {
        for (const cplx& p : hull.slice_at_z(z))
            if (std::abs(p) <= sc.poisson.radius + 0.05) return false;
        return true;
    }

    local_patch make_laurent_patch() const {
        const double a0 = laurent_anchor();
        const scenario s = sc; // value copies keep the patch self-contained
        const singular_hull h = hull;
        const cross x = X;
        // evaluation keeps off the sample circles so the truncated series
        // has room to converge
        const double band = 0.15 * (s.laurent.s_plus - s.laurent.s_minus);
        auto region = [s, h, x, a0, band](cplx z, cplx w) {
            const double az = std::abs(z);
            if (az < s.poisson.z_inner || az >= 1.0 - 1e-12) return false;
            const double sw = std::abs(w - s.laurent.w0);
            if (sw <= s.laurent.s_minus + band || sw >= s.laurent.s_plus - band) return false;
            if (std::abs(z - unit(a0)) >= 0.5 - 1e-9) return false;
            if (std::abs(w) >= 1.0 - 1e-12) return false;
            if (!envelope_contains(x, z, w).inside) return false;
            if (h.distance(z, w) <= s.tol.hull_margin) return false;
            for (const cplx& p : h.slice_at_z(z)) {
                const double d = std::abs(p - s.laurent.w0);
                if (d >= 0.95 * s.laurent.s_minus && d <= 1.05 * s.laurent.s_plus) return false;
            }
            // localized level set D_{a0, 1/2, 1/2}
            if (local_harmonic_measure(z, s.A, a0, 0.5) >= 0.5) return false;
            return true;
        };
        auto evaluate = [s](cplx z, cplx w) {
            eval_result out;
            try {
                auto f = [&](cplx eta) { return eval_or_throw(s.F, z, eta); };
                laurent_split_result split =
                    laurent_split(f, s.laurent.w0, s.laurent.s_minus, s.laurent.s_plus,
                                  s.laurent.order, s.counts.quad_nodes, 1e-7);
                out.value = split.eval(w);
            } catch (const std::exception&) {
                out.status = eval_status::singularity;
            }
            return out;
        };
        return local_patch{"laurent", region, evaluate};
    }

    local_patch make_poisson_patch(double perturbation = 0.0) const {
        const scenario s = sc;
        const singular_hull h = hull;
        const cross x = X;
        auto region = [s, h, x](cplx z, cplx w) {
            const double az = std::abs(z);
            if (az < s.poisson.z_inner || az > s.poisson.z_outer) return false;
            if (std::abs(w) >= 0.9 * s.poisson.radius) return false;
            if (!envelope_contains(x, z, w).inside) return false;
            if (h.distance(z, w) <= s.tol.hull_margin) return false;
            for (const cplx& p : h.slice_at_z(z))
                if (std::abs(p) <= s.poisson.radius + 0.05) return false;
            return true;
        };
        auto evaluate = [s, perturbation](cplx z, cplx w) {
            eval_result out;
            try {
                const int n = s.counts.quad_nodes;
                std::vector<cplx> samples(n);
                for (int m = 0; m < n; ++m)
                    samples[m] = eval_or_throw(s.F, z, s.poisson.radius * unit(two_pi * m / n));
                if (perturbation != 0.0) {
                    // boundary data bumped on the sub-arc theta in [0, pi/2)
                    for (int m = 0; m < n / 4; ++m) samples[m] += perturbation;
                }
                out.value = poisson_reconstruct(samples, w / s.poisson.radius);
            } catch (const std::exception&) {
                out.status = eval_status::singularity;
            }
            return out;
        };
        return local_patch{perturbation == 0.0 ? "poisson" : "poisson_perturbed", region, evaluate};
    }

    local_patch make_direct_patch() const {
        const scenario s = sc;
        const singular_hull h = hull;
        const cross x = X;
        auto region = [s, h, x](cplx z, cplx w) {
            if (std::abs(z) >= 1.0 - 1e-12 || std::abs(w) >= 1.0 - 1e-12) return false;
            if (!envelope_contains(x, z, w).inside) return false;
            return h.distance(z, w) > s.tol.hull_margin;
        };
        auto evaluate = [s](cplx z, cplx w) { return eval(s.F, z, w); };
        return local_patch{"direct", region, evaluate};
    }
};

} // namespace

scenario scenario::from_json(const std::string& text) {
    json j = json::parse(text);
    scenario sc;
    sc.name = get_or<std::string>(j, "name", "scenario");
    sc.A = parse_boundary(j.at("A"));
    sc.B = parse_boundary(j.at("B"));
    if (j.contains("M")) {
        for (const auto& g : j.at("M")) {
            graph_fiber fiber;
            const std::string orient = g.at("orientation").get<std::string>();
            if (orient == "over_z")
                fiber.orientation = graph_orientation::over_z;
            else if (orient == "over_w")
                fiber.orientation = graph_orientation::over_w;
            else
                throw std::invalid_argument("scenario: unknown graph orientation '" + orient + "'");
            fiber.map = parse_expr(g.at("expression"));
            sc.M.graphs.push_back(std::move(fiber));
        }
    }
    sc.F = parse_expr(j.at("F"));
    if (j.contains("probe_w")) sc.probe_w = parse_cplx(j.at("probe_w"));
    if (j.contains("schedules")) {
        const auto& s = j.at("schedules");
        sc.schedules.delta_count = get_or<int>(s, "delta_count", sc.schedules.delta_count);
        sc.schedules.exhaustion_steps =
            get_or<int>(s, "exhaustion_steps", sc.schedules.exhaustion_steps);
        sc.schedules.exhaustion_shrink =
            get_or<double>(s, "exhaustion_shrink", sc.schedules.exhaustion_shrink);
        sc.schedules.exhaustion_gap_tol =
            get_or<double>(s, "exhaustion_gap_tol", sc.schedules.exhaustion_gap_tol);
    }
    if (j.contains("tolerances")) {
        const auto& t = j.at("tolerances");
        sc.tol.quad = get_or<double>(t, "quad", sc.tol.quad);
        sc.tol.limit = get_or<double>(t, "limit", sc.tol.limit);
        sc.tol.glue = get_or<double>(t, "glue", sc.tol.glue);
        sc.tol.negative_detect = get_or<double>(t, "negative_detect", sc.tol.negative_detect);
        sc.tol.hull_margin = get_or<double>(t, "hull_margin", sc.tol.hull_margin);
    }
    if (j.contains("laurent")) {
        const auto& l = j.at("laurent");
        if (l.contains("w0")) sc.laurent.w0 = parse_cplx(l.at("w0"));
        sc.laurent.s_minus = get_or<double>(l, "s_minus", sc.laurent.s_minus);
        sc.laurent.s_plus = get_or<double>(l, "s_plus", sc.laurent.s_plus);
        sc.laurent.order = get_or<int>(l, "order", sc.laurent.order);
    }
    if (j.contains("poisson")) {
        const auto& p = j.at("poisson");
        sc.poisson.radius = get_or<double>(p, "radius", sc.poisson.radius);
        if (p.contains("z_window")) {
            sc.poisson.z_inner = p.at("z_window").at(0).get<double>();
            sc.poisson.z_outer = p.at("z_window").at(1).get<double>();
        }
    }
    if (j.contains("grids")) {
        const auto& g = j.at("grids");
        sc.grids.n = get_or<int>(g, "n", sc.grids.n);
        if (g.contains("w_slice")) sc.grids.w_slice = parse_cplx(g.at("w_slice"));
        if (g.contains("z_slice")) sc.grids.z_slice = parse_cplx(g.at("z_slice"));
    }
    if (j.contains("counts")) {
        const auto& c = j.at("counts");
        sc.counts.match_samples = get_or<int>(c, "match_samples", sc.counts.match_samples);
        sc.counts.angular_points = get_or<int>(c, "angular_points", sc.counts.angular_points);
        sc.counts.fiber_checks = get_or<int>(c, "fiber_checks", sc.counts.fiber_checks);
        sc.counts.quad_nodes = get_or<int>(c, "quad_nodes", sc.counts.quad_nodes);
        sc.counts.glue_samples = get_or<int>(c, "glue_samples", sc.counts.glue_samples);
    }
    sc.seed = get_or<std::uint64_t>(j, "seed", 1);
    return sc;
}

scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return scenario::from_json(ss.str());
}

namespace {

// every verification stage past the hypothesis block; unexpected failures
// are turned into a recorded check by the caller
void pipeline_checks(const scenario& sc, check_report& rep,
                     const std::vector<double>& deltas,
                     const std::function<void(const std::string&, bool, double, double)>&
                         timed_add) {
    pipeline P(sc);
    sample_rng rng(sc.seed);

    // envelope is nonempty: probe the centre and points pushed toward the
    // regular parts of A and B
    {
        const double am = P.laurent_anchor();
        const arc& b0 = sc.B.arcs().front();
        const double bm = wrap_angle(b0.start + 0.5 * b0.length);
        double best = -2.0;
        const cplx zs[3] = {0.0, 0.97 * unit(am), 0.99 * unit(am)};
        const cplx ws[3] = {0.0, 0.97 * unit(bm), 0.99 * unit(bm)};
        for (const cplx& z : zs)
            for (const cplx& w : ws) best = std::max(best, envelope_contains(P.X, z, w).slack);
        timed_add("envelope.nonempty", best > 0.0, best, 0.0);
    }

    timed_add("hull.empty_iff_M_empty", P.hull.empty() == sc.M.empty(),
              static_cast<double>(sc.M.graphs.size()), 0.0);

    // hull slices agree with boundary fibers along radial limits
    {
        double worst = 0.0;
        for (int i = 0; i < 16; ++i) {
            const double a = sample_angle(sc.A, rng);
            fiber_points fp = fibers(sc.M, a);
            std::vector<cplx> slice = P.hull.slice_at_z((1.0 - 1e-8) * unit(a));
            for (const cplx& p : fp.inside) {
                double best = std::numeric_limits<double>::infinity();
                for (const cplx& q : slice) best = std::min(best, std::abs(p - q));
                if (std::isfinite(best)) worst = std::max(worst, best);
            }
        }
        timed_add("hull.fiber_consistency", worst <= 1e-6, worst, 1e-6);
    }

    // both orientations, when present, must describe the same point set
    if (!P.hull.M.over_z().empty() && !P.hull.M.over_w().empty()) {
        double worst = 0.0;
        int used = 0;
        for (int i = 0; i < 400 && used < 200; ++i) {
            const cplx z = rng.in_disc(0.0, 0.95);
            if (std::abs(z) < 0.3) continue;
            for (const auto* g : P.hull.M.over_z()) {
                auto w = g->value_at(z);
                if (!w || std::abs(*w) >= 1.0) continue;
                double best = std::numeric_limits<double>::infinity();
                for (const auto* h : P.hull.M.over_w()) {
                    auto zz = h->value_at(*w);
                    if (zz) best = std::min(best, std::abs(*zz - z));
                }
                if (std::isfinite(best)) {
                    worst = std::max(worst, best);
                    ++used;
                }
            }
        }
        timed_add("hull.dual_orientation", worst <= 1e-9, worst, 1e-9);
    }

    // sampling of F on the cross off M: no singularity hits, locally bounded
    {
        int hits = 0;
        double max_mod = 0.0;
        auto probe = [&](cplx z, cplx w) {
            if (P.hull.distance(z, w) <= sc.tol.hull_margin) return;
            eval_result r = eval(sc.F, z, w);
            if (!r.ok() || !std::isfinite(std::abs(r.value)))
                ++hits;
            else
                max_mod = std::max(max_mod, std::abs(r.value));
        };
        for (int i = 0; i < 100; ++i) {
            probe(rng.in_disc(0.0, 0.97), unit(sample_angle(sc.B, rng)));       // D x B
            probe(unit(sample_angle(sc.A, rng)), rng.in_disc(0.0, 0.97));       // A x G
            probe(unit(sample_angle(sc.A, rng)), unit(sample_angle(sc.B, rng))); // A x B
        }
        timed_add("sampling.F_on_cross", hits == 0 && std::isfinite(max_mod), max_mod, 0.0);
    }

    // separate holomorphy: Cauchy residual of the boundary fibers
    {
        double worst = 0.0;
        for (int i = 0; i < sc.counts.fiber_checks; ++i) {
            const double a = sample_angle(sc.A, rng);
            fiber_points fp = fibers(sc.M, a);
            double rad = 0.85;
            for (const cplx& p : fp.inside) rad = std::min(rad, std::abs(p) - 0.05);
            if (rad < 0.05) continue;
            const cplx za = unit(a);
            auto f = [&](cplx w) { return eval_or_throw(sc.F, za, w); };
            const cplx recon = cauchy_circle(f, 0.0, rad, sc.counts.quad_nodes, 0.0);
            worst = std::max(worst, std::abs(recon - eval_or_throw(sc.F, za, 0.0)));
        }
        timed_add("separate_holomorphy.z_fibers", worst <= sc.tol.quad, worst, sc.tol.quad);
    }
    {
        double worst = 0.0;
        for (int i = 0; i < sc.counts.fiber_checks; ++i) {
            const double b = sample_angle(sc.B, rng);
            fiber_points fp = cofibers(sc.M, b);
            double rad = 0.85;
            for (const cplx& p : fp.inside) rad = std::min(rad, std::abs(p) - 0.05);
            if (rad < 0.05) continue;
            const cplx wb = unit(b);
            auto f = [&](cplx z) { return eval_or_throw(sc.F, z, wb); };
            const cplx recon = cauchy_circle(f, 0.0, rad, sc.counts.quad_nodes, 0.0);
            worst = std::max(worst, std::abs(recon - eval_or_throw(sc.F, 0.0, wb)));
        }
        timed_add("separate_holomorphy.w_fibers", worst <= sc.tol.quad, worst, sc.tol.quad);
    }

    // Laurent splitting across the singular graph along an approach to a0
    {
        const double a0 = P.laurent_anchor();
        approach_path path = make_approach_path(a0, pi / 4.0, 8, 0.7, 0.2);
        double worst_residual = 0.0, worst_pole = 0.0, worst_stable = 0.0, worst_minus = 0.0;
        bool config_ok = true, split_ok = true;
        for (const cplx& z : path.points) {
            if (!P.fiber_clear_of_annulus(z)) {
                config_ok = false;
                continue;
            }
            auto f = [&](cplx eta) { return eval_or_throw(sc.F, z, eta); };
            laurent_split_result split;
            try {
                split = laurent_split(f, sc.laurent.w0, sc.laurent.s_minus, sc.laurent.s_plus,
                                      sc.laurent.order, sc.counts.quad_nodes, 1e-7);
            } catch (const std::exception&) {
                split_ok = false;
                continue;
            }
            worst_residual = std::max(worst_residual, split.residual);

            std::vector<cplx> inner_poles;
            for (const cplx& p : P.hull.slice_at_z(z))
                if (std::abs(p - sc.laurent.w0) < sc.laurent.s_minus) inner_poles.push_back(p);

            if (inner_poles.empty()) {
                // no singularity inside: the negative part must vanish
                for (int m = 0; m < 16; ++m) {
                    const cplx w =
                        sc.laurent.w0 +
                        std::sqrt(sc.laurent.s_minus * sc.laurent.s_plus) * unit(two_pi * m / 16);
                    worst_minus = std::max(worst_minus, std::abs(split.eval_minus(w)));
                }
            } else {
                // simple poles: f_minus equals the sum of principal parts
                std::vector<cplx> residues;
                for (const cplx& p : inner_poles) {
                    double rp = 0.25 * (sc.laurent.s_minus - std::abs(p - sc.laurent.w0));
                    for (const cplx& q : inner_poles)
                        if (std::abs(q - p) > 1e-12) rp = std::min(rp, 0.25 * std::abs(q - p));
                    cplx res = 0.0;
                    const int n = sc.counts.quad_nodes;
                    for (int m = 0; m < n; ++m) {
                        const cplx e = unit(two_pi * m / n);
                        res += f(p + rp * e) * e;
                    }
                    residues.push_back(res * rp / static_cast<double>(n));
                }
                for (int m = 0; m < 16; ++m) {
                    const cplx w =
                        sc.laurent.w0 +
                        std::sqrt(sc.laurent.s_minus * sc.laurent.s_plus) * unit(two_pi * m / 16);
                    cplx principal = 0.0;
                    for (std::size_t k = 0; k < inner_poles.size(); ++k)
                        principal += residues[k] / (w - inner_poles[k]);
                    worst_pole = std::max(worst_pole, std::abs(split.eval_minus(w) - principal));
                }
                // the regular part continues across the graph: doubling the
                // order leaves the value at the pole unchanged
                laurent_split_result split2 =
                    laurent_split(f, sc.laurent.w0, sc.laurent.s_minus, sc.laurent.s_plus,
                                  2 * sc.laurent.order, 2 * sc.counts.quad_nodes, 1e-7);
                for (const cplx& p : inner_poles)
                    worst_stable =
                        std::max(worst_stable, std::abs(split.eval_plus(p) - split2.eval_plus(p)));
            }
        }
        timed_add("laurent.annulus_config", config_ok, config_ok ? 1.0 : 0.0, 0.0);
        timed_add("laurent.residual", split_ok && worst_residual <= sc.tol.quad, worst_residual,
                  sc.tol.quad);
        timed_add("laurent.pole_capture", worst_pole <= 10.0 * sc.tol.quad, worst_pole,
                  10.0 * sc.tol.quad);
        timed_add("laurent.minus_vanishes_without_poles", worst_minus <= sc.tol.quad, worst_minus,
                  sc.tol.quad);
        timed_add("laurent.across_graph_stability", worst_stable <= sc.tol.quad, worst_stable,
                  sc.tol.quad);
    }

    // glue the three patch families and keep the combined evaluator
    std::vector<local_patch> patches;
    patches.push_back(P.make_laurent_patch());
    patches.push_back(P.make_poisson_patch());
    patches.push_back(P.make_direct_patch());
    pair_sampler sampler = [](sample_rng& r) {
        return std::make_pair(r.in_disc(0.0, 0.97), r.in_disc(0.0, 0.97));
    };
    glue_options gopts;
    gopts.samples = sc.counts.glue_samples;
    gopts.tol = sc.tol.glue;
    gopts.seed = sc.seed + 101;
    glue_result glued = glue(patches, sampler, gopts);
    timed_add("glue.overlap_agreement", glued.ok, glued.max_discrepancy, sc.tol.glue);

    // combined evaluator against the ground truth on the envelope
    {
        sample_rng mrng(sc.seed + 202);
        double worst = 0.0;
        int found = 0, tries = 0;
        const int target = sc.counts.match_samples;
        while (found < target && tries < 50 * target) {
            ++tries;
            const cplx z = mrng.in_disc(0.0, 0.985);
            const cplx w = mrng.in_disc(0.0, 0.985);
            if (!P.in_envelope(z, w) || !P.clear_of_hull(z, w)) continue;
            std::optional<cplx> v = glued.eval(z, w);
            if (!v) continue;
            ++found;
            worst = std::max(worst, std::abs(*v - eval_or_throw(sc.F, z, w)));
        }
        timed_add("extension.match_F", found == target && worst <= sc.tol.quad, worst,
                  sc.tol.quad);
    }

    // angular limits of the glued evaluator at the regular interior points
    auto glued_fn = [&glued](cplx z, cplx w) { return glued.eval(z, w); };
    {
        sample_rng arng(sc.seed + 303);
        double worst = 0.0;
        int bad_paths = 0;
        const int half = sc.counts.angular_points / 2;
        for (int i = 0; i < half; ++i) {
            double a = 0.0;
            cplx w;
            approach_path path;
            bool found = false;
            for (int attempt = 0; attempt < 50 && !found; ++attempt) {
                a = sample_angle(sc.A, arng);
                w = arng.in_disc(0.0, 0.9);
                path = make_approach_path(a, pi / 4.0, 48, 0.8, 0.2);
                found = true;
                for (const cplx& zk : path.points) {
                    if (!P.in_envelope(zk, w) || !P.clear_of_hull(zk, w)) {
                        found = false;
                        break;
                    }
                }
                if (found && P.hull.distance(unit(a), w) <= sc.tol.hull_margin) found = false;
            }
            if (!found) {
                ++bad_paths;
                continue;
            }
            angular_limit_result lr =
                angular_limit(std::function<std::optional<cplx>(cplx, cplx)>(glued_fn), path, w,
                              sc.tol.limit);
            if (!lr.est.exists) {
                ++bad_paths;
                continue;
            }
            worst = std::max(worst, std::abs(lr.est.value - eval_or_throw(sc.F, unit(a), w)));
        }
        timed_add("angular.case1_boundary_values", bad_paths == 0 && worst <= sc.tol.limit, worst,
                  sc.tol.limit);
    }
    {
        sample_rng arng(sc.seed + 404);
        double worst = 0.0;
        int bad_paths = 0;
        const int half = sc.counts.angular_points - sc.counts.angular_points / 2;
        for (int i = 0; i < half; ++i) {
            double b = 0.0;
            cplx z;
            approach_path path;
            bool found = false;
            for (int attempt = 0; attempt < 50 && !found; ++attempt) {
                b = sample_angle(sc.B, arng);
                z = arng.in_disc(0.0, 0.9);
                path = make_approach_path(b, pi / 4.0, 48, 0.8, 0.2);
                found = true;
                for (const cplx& wk : path.points) {
                    if (!P.in_envelope(z, wk) || !P.clear_of_hull(z, wk)) {
                        found = false;
                        break;
                    }
                }
                if (found && P.hull.distance(z, unit(b)) <= sc.tol.hull_margin) found = false;
            }
            if (!found) {
                ++bad_paths;
                continue;
            }
            angular_limit_result lr = angular_limit(
                [&](cplx wv) -> std::optional<cplx> { return glued.eval(z, wv); }, path,
                sc.tol.limit);
            if (!lr.est.exists) {
                ++bad_paths;
                continue;
            }
            worst = std::max(worst, std::abs(lr.est.value - eval_or_throw(sc.F, z, unit(b))));
        }
        timed_add("angular.case2_boundary_values", bad_paths == 0 && worst <= sc.tol.limit, worst,
                  sc.tol.limit);
    }

    // uniqueness probe on the z-slice through probe_w: the difference to the
    // ground truth must vanish in the angular sense and in the interior
    std::vector<approach_path> probe_paths;
    {
        sample_rng prng(sc.seed + 505);
        for (int i = 0; i < 8; ++i)
            probe_paths.push_back(make_approach_path(sample_angle(sc.A, prng), pi / 4.0, 40, 0.8, 0.2));
    }
    const cplx w_fix = sc.probe_w;
    {
        auto g = [&](cplx z) -> std::optional<cplx> {
            if (std::abs(z) >= 1.0 - 1e-12) return std::nullopt;
            if (!P.in_envelope(z, w_fix) || !P.clear_of_hull(z, w_fix)) return std::nullopt;
            std::optional<cplx> v = glued.eval(z, w_fix);
            if (!v) return std::nullopt;
            eval_result r = eval(sc.F, z, w_fix);
            if (!r.ok()) return std::nullopt;
            return *v - r.value;
        };
        uniqueness_options uopts;
        uopts.tol_limit = sc.tol.limit;
        uniqueness_report ur = uniqueness_probe(g, sc.A, probe_paths, uopts);
        const bool pass = ur.all_limits_small && ur.vanishing_consistent && !ur.no_limit_flag;
        timed_add("uniqueness.vanishing_difference", pass,
                  std::max(ur.interior_max, ur.max_limit_mod), ur.bound);
        timed_add("uniqueness.holomorphy_spot", ur.holomorphy_residual <= 10.0 * sc.tol.quad,
                  ur.holomorphy_residual, 10.0 * sc.tol.quad);
    }

    // negative control: boundary samples of the reconstruction patch bumped
    // by negative_detect on a positive-measure sub-arc must be flagged
    {
        std::vector<local_patch> perturbed;
        perturbed.push_back(P.make_poisson_patch(sc.tol.negative_detect));
        perturbed.push_back(P.make_laurent_patch());
        perturbed.push_back(P.make_direct_patch());
        glue_options ngopts = gopts;
        ngopts.seed = sc.seed + 101; // same candidates as the positive run
        glue_result bad = glue(perturbed, sampler, ngopts);

        const local_patch pp = P.make_poisson_patch(sc.tol.negative_detect);
        auto g = [&](cplx z) -> std::optional<cplx> {
            if (!pp.region(z, w_fix)) return std::nullopt;
            eval_result r = pp.evaluate(z, w_fix);
            if (!r.ok()) return std::nullopt;
            eval_result t = eval(sc.F, z, w_fix);
            if (!t.ok()) return std::nullopt;
            return r.value - t.value;
        };
        uniqueness_options uopts;
        uopts.tol_limit = sc.tol.limit;
        uniqueness_report ur = uniqueness_probe(g, sc.A, probe_paths, uopts);
        const bool flagged = !bad.ok || ur.nonzero_limit_flag;
        timed_add("negative_control.flagged", flagged,
                  std::max(bad.max_discrepancy, ur.max_limit_mod), sc.tol.glue);
    }

    // exhaustion schedules on both boundary sets (closed nested subsets)
    {
        sample_rng erng(sc.seed + 606);
        std::vector<cplx> probes;
        for (int i = 0; i < 5; ++i) probes.push_back(erng.in_disc(0.0, 0.7));
        auto run_side = [&](const boundary_set& S, const std::string& prefix) {
            std::vector<boundary_set> steps;
            for (int n = 1; n <= sc.schedules.exhaustion_steps; ++n)
                steps.push_back(S.shrunk(sc.schedules.exhaustion_shrink * std::ldexp(1.0, -n)));
            check_report sub = check_monotone_convergence(steps, S, probes,
                                                          sc.schedules.exhaustion_gap_tol,
                                                          sc.schedules.exhaustion_gap_tol);
            for (const auto& c : sub.checks) rep.add(prefix + c.name, c.pass, c.metric, c.tol);
        };
        run_side(sc.A, "exhaustion_A.");
        run_side(sc.B, "exhaustion_B.");
        timed_add("exhaustion.schedules_run", true, sc.schedules.exhaustion_steps, 0.0);
    }

    // schedule fidelity: the deltas recorded above are exactly 2^-n
    {
        bool exact = true;
        for (int n = 1; n <= sc.schedules.delta_count; ++n)
            if (deltas[n - 1] != std::ldexp(1.0, -n)) exact = false;
        timed_add("schedule.deltas_dyadic", exact, static_cast<double>(sc.schedules.delta_count),
                  0.0);
    }
}

} // namespace

check_report run_scenario(const scenario& sc, const run_options& opts) {
    check_report rep;
    rep.label = sc.name;
    rep.seed = sc.seed;
    std::vector<double> deltas;
    for (int n = 1; n <= sc.schedules.delta_count; ++n) deltas.push_back(std::ldexp(1.0, -n));
    rep.series["deltas"] = deltas;

    double t0 = now_seconds();
    auto timed_add = [&](const std::string& name, bool pass, double metric, double tol) {
        const double t1 = now_seconds();
        rep.add(name, pass, metric, tol, t1 - t0);
        t0 = t1;
    };

    // hypothesis block: positive measures and M n (A x B) = {}
    const double mes_a = sc.A.measure();
    const double mes_b = sc.B.measure();
    timed_add("hypothesis.mes_A_positive", mes_a > 0.0, mes_a, 0.0);
    timed_add("hypothesis.mes_B_positive", mes_b > 0.0, mes_b, 0.0);
    collar_result collar = singular_free_collar(sc.M, sc.A, sc.B);
    timed_add("hypothesis.M_disjoint_AxB", collar.ok, collar.margin, 1e-3);
    if (!collar.ok || mes_a <= 0.0 || mes_b <= 0.0) {
        rep.add("aborted.hypothesis", false, 0.0, 0.0);
        return rep;
    }
    timed_add("collar.radius", true,
              collar.a_radii.empty() ? 0.0 : collar.a_radii.front(), 0.0);

    try {
        pipeline_checks(sc, rep, deltas, timed_add);
    } catch (const std::exception& e) {
        // check failures are recorded, not thrown
        std::fprintf(stderr, "%s: pipeline stage failed: %s\n", sc.name.c_str(), e.what());
        rep.add("aborted.exception", false, 0.0, 0.0);
    }

    if (!opts.out_dir.empty()) {
        std::filesystem::create_directories(opts.out_dir);
        if (opts.emit_grids) {
            check_report grids = emit_region_grids(sc, opts.out_dir);
            for (const auto& c : grids.checks) rep.add(c.name, c.pass, c.metric, c.tol);
        }
        std::ofstream out(std::filesystem::path(opts.out_dir) / (sc.name + ".report.json"),
                          std::ios::binary);
        out << rep.to_json(opts.timings);
    }
    return rep;
}

check_report emit_region_grids(const scenario& sc, const std::string& out_dir) {
    check_report rep;
    rep.label = sc.name + ".grids";
    rep.seed = sc.seed;
    if (std::abs(sc.grids.w_slice) >= 1.0 || std::abs(sc.grids.z_slice) >= 1.0)
        throw std::invalid_argument("emit_region_grids: slice point outside the open disc");
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path base(out_dir);
    pipeline P(sc);
    const int n = sc.grids.n;

    auto save = [&](const grid_field& g, const std::string& filename) {
        std::ofstream out(base / filename, std::ios::binary);
        out << g.to_csv();
    };

    // envelope slice at fixed w
    {
        const cplx w = sc.grids.w_slice;
        grid_field g = rasterize([&](cplx z) { return P.in_envelope(z, w); }, -1.0, 1.0, -1.0, 1.0,
                                 n, n);
        save(g, sc.name + ".envelope_w.csv");
    }

    // dyadic level sets, checked for nesting
    {
        int violations = 0;
        std::vector<std::uint8_t> prev;
        for (int k = 1; k <= sc.schedules.delta_count; ++k) {
            const double delta = std::ldexp(1.0, -k);
            level_set_region region = level_set_region::global(sc.A, delta);
            grid_field g = rasterize([&](cplx z) { return region.contains(z); }, -1.0, 1.0, -1.0,
                                     1.0, n, n);
            if (!prev.empty()) {
                for (std::size_t i = 0; i < g.mask.size(); ++i)
                    if (g.mask[i] && !prev[i]) ++violations; // smaller delta must shrink the set
            }
            prev = g.mask;
            save(g, sc.name + ".level_d" + std::to_string(k) + ".csv");
        }
        rep.add("grids.level_set_nesting", violations == 0, violations, 0.0);
    }

    // hull slice at fixed z: cells the singular graph passes through
    {
        const cplx z = sc.grids.z_slice;
        const double cell = n > 1 ? 1.5 / (n - 1) : 1.0;
        grid_field g = rasterize(
            [&](cplx w) {
                if (std::abs(w) >= 1.0 - 1e-12 || !P.in_envelope(z, w)) return false;
                return P.hull.distance(z, w) <= cell;
            },
            -1.0, 1.0, -1.0, 1.0, n, n);
        int marked = 0;
        for (auto m : g.mask) marked += m;
        save(g, sc.name + ".hull_z.csv");
        rep.add("grids.hull_slice_empty_iff_M_empty",
                sc.M.empty() ? (marked == 0) : true, marked, 0.0);
    }
    return rep;
}

suite_result run_suite(const std::vector<std::string>& scenario_files, const run_options& opts) {
    suite_result out;
    std::vector<std::string> files = scenario_files;
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
        try {
            scenario sc = load_scenario_file(path);
            check_report rep = run_scenario(sc, opts);
            if (!rep.all_pass()) ++out.scenarios_failed;
            out.reports.push_back(std::move(rep));
        } catch (const std::exception& e) {
            out.parse_failures.push_back(path + ": " + e.what());
        }
    }
    return out;
}

} // namespace bidisc
