#include "bidisc/conformal.hpp"

#include <cmath>
#include <stdexcept>

#include "bidisc/harmonic.hpp"

namespace bidisc {

namespace {

double wrap_pm_pi(double x) {
    double t = std::remainder(x, two_pi);
    return t;
}

} // namespace

mobius_map::mobius_map(cplx a_, cplx b_, cplx c_, cplx d_) : a(a_), b(b_), c(c_), d(d_) {
    if (std::abs(a * d - b * c) < 1e-300)
        throw std::invalid_argument("mobius_map: ad - bc must be nonzero");
}

sphere_point mobius_map::apply(sphere_point t) const {
    if (t.infinite) {
        if (std::abs(c) < 1e-300) return sphere_point::inf();
        return sphere_point(a / c);
    }
    cplx den = c * t.value + d;
    if (std::abs(den) < 1e-300) return sphere_point::inf();
    return sphere_point((a * t.value + b) / den);
}

mobius_map mobius_map::inverse() const { return mobius_map(d, -b, -c, a); }

mobius_map mobius_map::compose(const mobius_map& g) const {
    return mobius_map(a * g.a + b * g.c, a * g.b + b * g.d, c * g.a + d * g.c, c * g.b + d * g.d);
}

mobius_map mobius_map::to_zero_one_inf(cplx p1, cplx p2, cplx p3) {
    // ((t - p1)(p2 - p3)) / ((t - p3)(p2 - p1))
    cplx u = p2 - p3;
    cplx v = p2 - p1;
    return mobius_map(u, -p1 * u, v, -p3 * v);
}

mobius_map mobius_map::three_points(cplx p1, cplx p2, cplx p3, cplx q1, cplx q2, cplx q3) {
    mobius_map r = to_zero_one_inf(p1, p2, p3);
    mobius_map s = to_zero_one_inf(q1, q2, q3);
    return s.inverse().compose(r);
}

mobius_map mobius_map::disc_to_half_plane() {
    // z -> i (1 - z) / (1 + z); boundary angle theta lands on tan(theta / 2)
    return mobius_map(cplx(0.0, -1.0), cplx(0.0, 1.0), 1.0, 1.0);
}

mobius_map mobius_map::half_plane_to_disc() {
    return mobius_map(1.0, cplx(0.0, -1.0), 1.0, cplx(0.0, 1.0));
}

power_map::power_map(double e, double lo, double hi) : exponent(e), sector_lo(lo), sector_hi(hi) {
    if (!(e > 0.0)) throw std::invalid_argument("power_map: exponent must be positive");
    if (!(hi > lo) || hi - lo >= two_pi)
        throw std::invalid_argument("power_map: declared sector must be a proper angular interval");
}

sphere_point power_map::apply(sphere_point t) const {
    if (t.infinite) return sphere_point::inf();
    // corner landmarks reach 0 / infinity only up to floating-point noise
    if (std::abs(t.value) < 1e-13) return sphere_point(0.0);
    if (std::abs(t.value) > 1e13) return sphere_point::inf();
    const double mid = 0.5 * (sector_lo + sector_hi);
    double theta = mid + wrap_pm_pi(std::arg(t.value) - mid);
    // cut sits opposite the sector bisector
    if (pi - std::abs(theta - mid) < 1e-9)
        throw std::domain_error("power_map: evaluation too close to the branch cut");
    if (theta < sector_lo - 1e-9 || theta > sector_hi + 1e-9)
        throw std::domain_error("power_map: point outside the declared sector");
    double r = std::pow(std::abs(t.value), exponent);
    return sphere_point(r * unit(exponent * theta));
}

power_map power_map::inverse() const {
    return power_map(1.0 / exponent, exponent * sector_lo, exponent * sector_hi);
}

sphere_point conformal_chain::apply(sphere_point t) const {
    for (const auto& link : links)
        t = std::visit([&](const auto& m) { return m.apply(t); }, link);
    return t;
}

sphere_point conformal_chain::invert(sphere_point s) const {
    for (auto it = links.rbegin(); it != links.rend(); ++it) {
        s = std::visit([&](const auto& m) { return m.inverse().apply(s); }, *it);
    }
    return s;
}

cplx conformal_chain::apply(cplx t) const {
    sphere_point p = apply(sphere_point(t));
    if (p.infinite) throw std::domain_error("conformal_chain: image at infinity");
    return p.value;
}

cplx conformal_chain::invert(cplx s) const {
    sphere_point p = invert(sphere_point(s));
    if (p.infinite) throw std::domain_error("conformal_chain: preimage at infinity");
    return p.value;
}

bool lens_chain_result::in_domain(cplx z) const {
    if (std::abs(z) >= 1.0) return false;
    double u = arc_harmonic_share(z, base_arc);
    return u > delta + angle_tol;
}

lens_chain_result lens_chain(const boundary_set& single_arc_set, double delta) {
    if (single_arc_set.arcs().size() != 1 || single_arc_set.is_full_circle())
        throw std::invalid_argument("lens_chain: A must be a single proper arc");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("lens_chain: delta must lie in (0, 1)");
    const arc a0 = single_arc_set.arcs()[0];
    const double L = a0.length;
    const double theta_c = wrap_angle(a0.start + 0.5 * L);
    const double x2 = std::tan(0.25 * L);
    const double x1 = -x2;

    // rotate the arc onto (-L/2, L/2), pass to the half-plane, then send the
    // arc endpoints to 0 and infinity; endpoints land on x1 and x2 first
    mobius_map endpoints_to_axis(1.0, -x1, -1.0, x2);
    mobius_map front = endpoints_to_axis.compose(
        mobius_map::disc_to_half_plane().compose(mobius_map::rotation(-theta_c)));

    // the lens has interior angle (1 - delta) * pi at the corners
    const double gamma = (1.0 - delta) * pi;
    power_map straighten(pi / gamma, 0.0, gamma);

    lens_chain_result out;
    out.chain.links = {front, straighten, mobius_map::half_plane_to_disc()};
    out.delta = delta;
    out.base_arc = a0;

    // image of the relative interior of A from boundary landmarks: the two
    // corners and the arc midpoint
    sphere_point img_start = out.chain.apply(sphere_point(unit(a0.start)));
    sphere_point img_end = out.chain.apply(sphere_point(unit(a0.end())));
    sphere_point img_mid = out.chain.apply(sphere_point(unit(theta_c)));
    if (img_start.infinite || img_end.infinite || img_mid.infinite)
        throw std::runtime_error("lens_chain: corner landmark escaped to infinity");
    double s1 = wrap_angle(std::arg(img_start.value));
    double s2 = wrap_angle(std::arg(img_end.value));
    double sm = wrap_angle(std::arg(img_mid.value));
    arc candidate(s1, s2);
    if (!candidate.contains(sm)) candidate = arc(s2, s1);
    out.image_of_arc = boundary_set({candidate});
    return out;
}

check_report verify_measure_transfer(const boundary_set& single_arc_set, double delta,
                                     const std::vector<cplx>& probes, double tol) {
    lens_chain_result lens = lens_chain(single_arc_set, delta);
    check_report rep;
    rep.label = "measure_transfer";
    double worst = 0.0;
    for (cplx z : probes) {
        if (!lens.in_domain(z))
            throw std::invalid_argument("verify_measure_transfer: probe outside the level-set component");
        cplx fz = lens.chain.apply(z);
        double lhs = harmonic_measure(fz, lens.image_of_arc);
        double rhs = harmonic_measure(z, single_arc_set) / (1.0 - delta);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    rep.add("measure_transfer.max_discrepancy", worst <= tol, worst, tol);
    return rep;
}

bool lens_geometry::contains(cplx z) const {
    if (std::abs(z) >= 1.0 - angle_tol) return false;
    return std::abs(z - unit(center_angle)) < radius - angle_tol;
}

sphere_point lens_geometry::boundary_image(double theta) const {
    double lo = wrap_angle(center_angle - half_width);
    double hi = wrap_angle(center_angle + half_width);
    if (near(wrap_angle(theta), lo, 1e-13)) return sphere_point(0.0);
    if (near(wrap_angle(theta), hi, 1e-13)) return sphere_point::inf();
    return to_half_plane.apply(sphere_point(unit(theta)));
}

lens_geometry make_lens(double center_angle, double radius) {
    if (!(radius > 0.0 && radius < 2.0))
        throw std::invalid_argument("make_lens: radius must lie in (0, 2)");
    lens_geometry g;
    g.center_angle = wrap_angle(center_angle);
    g.radius = radius;
    g.half_width = std::acos(1.0 - 0.5 * radius * radius);
    g.corner_minus = unit(g.center_angle - g.half_width);
    g.corner_plus = unit(g.center_angle + g.half_width);

    const cplx a_pt = unit(g.center_angle);           // midpoint of the boundary arc
    const cplx p2 = a_pt * (1.0 - radius);            // midpoint of the inner circular arc
    const cplx probe = 0.5 * (g.corner_minus + g.corner_plus);

    auto build = [&](cplx c_zero, cplx c_inf) {
        mobius_map m(1.0, -c_zero, -1.0, c_inf);
        double beta1 = std::arg(m.apply(sphere_point(a_pt)).value);
        mobius_map rot = mobius_map::rotation(-beta1).compose(m);
        double phi_probe = std::arg(rot.apply(sphere_point(probe)).value);
        double phi_inner = std::arg(rot.apply(sphere_point(p2)).value);
        return std::tuple<mobius_map, double, double>(rot, phi_probe, phi_inner);
    };

    auto [m, phi_probe, gamma] = build(g.corner_minus, g.corner_plus);
    if (phi_probe < 0.0) {
        std::tie(m, phi_probe, gamma) = build(g.corner_plus, g.corner_minus);
    }
    if (!(phi_probe > 0.0 && gamma > phi_probe && gamma < pi + 1e-9))
        throw std::runtime_error("make_lens: sector orientation could not be established");

    power_map straighten(pi / gamma, 0.0, gamma);
    g.to_half_plane.links = {m, straighten};
    return g;
}

} // namespace bidisc
