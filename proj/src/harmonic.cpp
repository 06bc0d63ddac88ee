#include "bidisc/harmonic.hpp"

#include <cmath>
#include <stdexcept>

#include "bidisc/conformal.hpp"

namespace bidisc {

double arc_harmonic_share(cplx z, const arc& a) {
    if (a.full) return 1.0;
    // rotate the arc onto (-L/2, L/2); endpoints land on -+tan(L/4) in the
    // half-plane and the measure is the subtended angle over pi
    const double theta_c = wrap_angle(a.start + 0.5 * a.length);
    const cplx zr = z * unit(-theta_c);
    const cplx t = cplx(0.0, 1.0) * (1.0 - zr) / (1.0 + zr);
    const double x2 = std::tan(0.25 * a.length);
    const double x1 = -x2;
    double ang = std::arg((x2 - t) / (x1 - t));
    if (ang < 0.0) ang = 0.0; // clip roundoff for z on the unmarked boundary
    return ang / pi;
}

double harmonic_measure(cplx z, const boundary_set& A) {
    if (std::abs(z) >= 1.0)
        throw std::domain_error("harmonic_measure: point must lie in the open disc");
    if (A.is_empty()) return 1.0;
    if (A.is_full_circle()) return 0.0;
    double share = 0.0;
    for (const auto& a : A.arcs()) share += arc_harmonic_share(z, a);
    double om = 1.0 - share;
    if (om < 0.0) om = 0.0;
    if (om > 1.0) om = 1.0;
    return om;
}

namespace {

double poisson_kernel(cplx z, double theta) {
    const cplx e = unit(theta);
    return (1.0 - std::norm(z)) / std::norm(e - z);
}

double arc_poisson_integral(cplx z, const arc& a, const quadrature_spec& spec) {
    static const gauss_rule rule(16);
    auto composite = [&](int panels) {
        double total = 0.0;
        const double hp = a.length / panels;
        for (int p = 0; p < panels; ++p) {
            const double lo = a.start + p * hp;
            const double mid = lo + 0.5 * hp;
            for (std::size_t k = 0; k < rule.nodes.size(); ++k)
                total += rule.weights[k] * poisson_kernel(z, mid + 0.5 * hp * rule.nodes[k]);
        }
        return total * 0.5 * a.length / panels / two_pi;
    };
    int panels = std::max(spec.panels, 8);
    double prev = composite(panels);
    while (panels < spec.max_panels) {
        panels *= 2;
        double cur = composite(panels);
        if (std::abs(cur - prev) <= spec.rel_tol * (1.0 + std::abs(cur))) return cur;
        prev = cur;
    }
    return prev;
}

} // namespace

double harmonic_measure_quadrature(cplx z, const boundary_set& A, const quadrature_spec& spec) {
    if (std::abs(z) >= 1.0)
        throw std::domain_error("harmonic_measure_quadrature: point must lie in the open disc");
    if (A.is_empty()) return 1.0;
    double share = 0.0;
    for (const auto& a : A.arcs()) {
        if (a.full) return 0.0;
        share += arc_poisson_integral(z, a, spec);
    }
    return 1.0 - share;
}

double local_harmonic_measure(cplx z, const boundary_set& A, double center_angle, double radius) {
    lens_geometry lens = make_lens(center_angle, radius);
    if (!lens.contains(z))
        throw std::domain_error("local_harmonic_measure: point outside the lens E n Delta_a(r)");
    const arc lens_arc(lens.center_angle - lens.half_width, lens.center_angle + lens.half_width);
    boundary_set marked = A.set_intersection(boundary_set({lens_arc}));
    if (marked.is_empty()) return 1.0;

    const cplx s = lens.to_half_plane.apply(z);
    double share = 0.0;
    for (const auto& m : marked.arcs()) {
        sphere_point p = lens.boundary_image(m.start);
        sphere_point q = lens.boundary_image(m.end());
        if (p.infinite) std::swap(p, q); // orientation puts the corner image last
        double ang;
        if (q.infinite) {
            ang = -std::arg(p.value - s); // interval [p, inf)
        } else {
            double xa = p.value.real(), xb = q.value.real();
            if (xa > xb) std::swap(xa, xb);
            ang = std::arg((xb - s) / (xa - s));
        }
        if (ang < 0.0) ang = 0.0;
        share += ang / pi;
    }
    double om = 1.0 - share;
    if (om < 0.0) om = 0.0;
    if (om > 1.0) om = 1.0;
    return om;
}

double angular_harmonic_measure(cplx z, const boundary_set& A, double delta) {
    if (!(delta >= 0.0 && delta < 1.0))
        throw std::invalid_argument("angular_harmonic_measure: delta must lie in [0, 1)");
    double om = harmonic_measure(z, A);
    if (om > (1.0 - delta) + 1e-9)
        throw std::domain_error("angular_harmonic_measure: point outside the level-set domain");
    return om / (1.0 - delta);
}

check_report check_monotone_convergence(const std::vector<boundary_set>& A_k,
                                        const boundary_set& A, const std::vector<cplx>& probes,
                                        double gap_tol, double exhaust_tol) {
    if (A_k.empty()) throw std::invalid_argument("check_monotone_convergence: empty schedule");
    for (std::size_t k = 0; k + 1 < A_k.size(); ++k) {
        if (A_k[k].set_difference(A_k[k + 1]).measure() > angle_tol)
            throw std::invalid_argument("check_monotone_convergence: schedule not nested");
    }
    if (A_k.back().set_difference(A).measure() > angle_tol)
        throw std::invalid_argument("check_monotone_convergence: schedule exceeds the limit set");
    check_report rep;
    rep.label = "monotone_convergence";
    double exhaust_gap = A.set_difference(A_k.back()).measure();
    rep.add("exhaustion.measure_gap", exhaust_gap <= exhaust_tol, exhaust_gap, exhaust_tol);

    double worst_increase = 0.0;
    double worst_gap = 0.0;
    for (cplx z : probes) {
        double prev = harmonic_measure(z, A_k.front());
        for (std::size_t k = 1; k < A_k.size(); ++k) {
            double cur = harmonic_measure(z, A_k[k]);
            worst_increase = std::max(worst_increase, cur - prev);
            prev = cur;
        }
        worst_gap = std::max(worst_gap, std::abs(prev - harmonic_measure(z, A)));
    }
    rep.add("monotone.max_increase", worst_increase <= 1e-13, worst_increase, 1e-13);
    rep.add("terminal.max_gap", worst_gap <= gap_tol, worst_gap, gap_tol);
    return rep;
}

double laplacian_residual(const measure_field& field, double half_extent, double h) {
    if (!(h > 0.0) || !(half_extent > 0.0))
        throw std::invalid_argument("laplacian_residual: positive grid parameters required");
    if (half_extent + 2.0 * h >= 1.0)
        throw std::invalid_argument("laplacian_residual: grid touches the boundary circle");
    const int n = static_cast<int>(std::floor(2.0 * half_extent / h)) + 1;
    std::vector<double> u(static_cast<std::size_t>(n) * n,
                          std::numeric_limits<double>::quiet_NaN());
    auto coord = [&](int i) { return -half_extent + i * h; };
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            cplx z(coord(ix), coord(iy));
            if (std::abs(z) <= half_extent) u[iy * static_cast<std::size_t>(n) + ix] = field(z);
        }
    }
    double worst = 0.0;
    const double inv_h2 = 1.0 / (h * h);
    for (int iy = 1; iy + 1 < n; ++iy) {
        for (int ix = 1; ix + 1 < n; ++ix) {
            const std::size_t c = iy * static_cast<std::size_t>(n) + ix;
            double uc = u[c], ue = u[c + 1], uw = u[c - 1], un = u[c + n], us = u[c - n];
            if (std::isnan(uc) || std::isnan(ue) || std::isnan(uw) || std::isnan(un) ||
                std::isnan(us))
                continue;
            worst = std::max(worst, std::abs((ue + uw + un + us - 4.0 * uc) * inv_h2));
        }
    }
    return worst;
}

} // namespace bidisc
