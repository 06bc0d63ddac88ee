#ifndef BIDISC_CONFORMAL_HPP
#define BIDISC_CONFORMAL_HPP

#include <optional>
#include <variant>
#include <vector>

#include "bidisc/boundary.hpp"
#include "bidisc/numeric.hpp"
#include "bidisc/report.hpp"

namespace bidisc {

// A point of the Riemann sphere.  Mobius maps move boundary landmarks to 0
// and infinity, so the point at infinity has to be a first-class value.
struct sphere_point {
    cplx value = 0.0;
    bool infinite = false;

    sphere_point(cplx v = 0.0) : value(v) {}
    static sphere_point inf() {
        sphere_point p;
        p.infinite = true;
        return p;
    }
};

// t -> (a t + b) / (c t + d) with ad - bc != 0.
struct mobius_map {
    cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

    mobius_map() = default;
    mobius_map(cplx a_, cplx b_, cplx c_, cplx d_);

    sphere_point apply(sphere_point t) const;
    mobius_map inverse() const;
    // composition: (f.compose(g))(t) = f(g(t))
    mobius_map compose(const mobius_map& g) const;

    static mobius_map identity() { return mobius_map(); }
    static mobius_map rotation(double theta) { return mobius_map(unit(theta), 0.0, 0.0, 1.0); }
    // the map sending (p1, p2, p3) to (0, 1, inf)
    static mobius_map to_zero_one_inf(cplx p1, cplx p2, cplx p3);
    // the map sending (p1, p2, p3) to (q1, q2, q3)
    static mobius_map three_points(cplx p1, cplx p2, cplx p3, cplx q1, cplx q2, cplx q3);
    // standard carriers used by the chains
    static mobius_map disc_to_half_plane(); // z -> i (1 - z) / (1 + z), E -> H
    static mobius_map half_plane_to_disc(); // s -> (s - i) / (s + i), H -> E
};

// t -> t^exponent with the branch cut placed on the ray opposite the
// declared sector's bisector.  Evaluation near the cut is an error, not a
// guess; 0 and infinity are fixed points for positive exponents.
struct power_map {
    double exponent = 1.0;
    double sector_lo = 0.0; // declared sector of validity, angles
    double sector_hi = pi;

    power_map() = default;
    power_map(double e, double lo, double hi);

    double cut_angle() const { return wrap_angle(0.5 * (sector_lo + sector_hi) + pi); }
    sphere_point apply(sphere_point t) const;
    power_map inverse() const;
};

using chain_link = std::variant<mobius_map, power_map>;

// Ordered composition of elementary maps, applied left to right.
struct conformal_chain {
    std::vector<chain_link> links;

    sphere_point apply(sphere_point t) const;
    sphere_point invert(sphere_point s) const;
    cplx apply(cplx t) const;
    cplx invert(cplx s) const;
};

// Exact chain for the level-set component adjacent to a single boundary arc.
// For a single arc A and 0 < delta < 1, the component Omega of
// { z in E : omega(z, A, E) < 1 - delta } adjacent to A is the circular lens
// with corners at the arc endpoints and interior angle (1 - delta) * pi; the
// chain maps it onto E with the corners landing on -1 and +1.
struct lens_chain_result {
    conformal_chain chain;
    // image of the relative interior of A under the boundary extension
    boundary_set image_of_arc;
    double delta = 0.0;
    arc base_arc;

    bool in_domain(cplx z) const; // membership in Omega
};

lens_chain_result lens_chain(const boundary_set& single_arc_set, double delta);

// Prop-style measure transfer check: omega(Phi(z), Phi(Delta), E) against
// omega(z, A, E) / (1 - delta) over the given probes.
check_report verify_measure_transfer(const boundary_set& single_arc_set, double delta,
                                     const std::vector<cplx>& probes, double tol = 1e-8);

// Geometry of the lens E n Delta_a(r) for a boundary center e^{i a}: corner
// points, the angular half-width mu of the boundary arc, and the chain onto
// the upper half-plane.  Used by the localized harmonic measure.
struct lens_geometry {
    double center_angle = 0.0;
    double radius = 0.0;
    double half_width = 0.0; // mu: boundary arc is (a - mu, a + mu)
    cplx corner_minus, corner_plus;
    conformal_chain to_half_plane;

    bool contains(cplx z) const;
    // boundary image of e^{i theta} (theta within the lens arc) on the real
    // axis of the half-plane; corners map to 0 and infinity
    sphere_point boundary_image(double theta) const;
};

lens_geometry make_lens(double center_angle, double radius);

} // namespace bidisc

#endif
