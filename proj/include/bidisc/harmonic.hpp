#ifndef BIDISC_HARMONIC_HPP
#define BIDISC_HARMONIC_HPP

#include <vector>

#include "bidisc/boundary.hpp"
#include "bidisc/numeric.hpp"
#include "bidisc/report.hpp"

namespace bidisc {

// Standard harmonic measure of a single arc at z in E (boundary value 1 on
// the arc, 0 elsewhere), evaluated in closed form through the half-plane
// angle formula.  Building block for everything below.
double arc_harmonic_share(cplx z, const arc& a);

// Harmonic measure om(z, A, E) in the envelope convention: boundary value 0
// on A and 1 on the complement, so the function is small near A.  For arc
// unions this equals 1 - (1/2pi) Int_A P(z, t) dt exactly.
double harmonic_measure(cplx z, const boundary_set& A);

// Panel count for the adaptive composite Gauss rule used by the quadrature
// evaluation path.  Doubling is always permitted; the driver doubles until
// the increment stabilizes.
struct quadrature_spec {
    int panels = 8;
    double rel_tol = 1e-13;
    int max_panels = 1 << 15;
};

// Independent oracle: the same measure through Poisson-kernel quadrature.
double harmonic_measure_quadrature(cplx z, const boundary_set& A,
                                   const quadrature_spec& spec = {});

enum class eval_mode { closed_form, quadrature };

// Sampled view of om(., A, E) with a switchable evaluation path.
struct measure_field {
    boundary_set base;
    eval_mode mode = eval_mode::closed_form;
    quadrature_spec spec{};

    double operator()(cplx z) const {
        return mode == eval_mode::closed_form ? harmonic_measure(z, base)
                                              : harmonic_measure_quadrature(z, base, spec);
    }
};

// Harmonic measure of A n Delta_a(r) relative to the lens E n Delta_a(r),
// with a = e^{i center_angle} on the boundary circle.  Uses the exact
// corner-straightening chain; same complement convention as above.
double local_harmonic_measure(cplx z, const boundary_set& A, double center_angle, double radius);

// om(z, A, E) / (1 - delta): the angular harmonic measure of the level-set
// domain { om < 1 - delta }.  Rejects z materially outside that domain; a
// slack of 1e-9 admits points sitting on the level curve itself.
double angular_harmonic_measure(cplx z, const boundary_set& A, double delta);

// Monotone convergence of om(., A_k, E) down to om(., A, E) for a nested
// exhaustion A_k, checked at the probe points.
check_report check_monotone_convergence(const std::vector<boundary_set>& A_k,
                                        const boundary_set& A, const std::vector<cplx>& probes,
                                        double gap_tol = 1e-6, double exhaust_tol = 1e-6);

// Max |five-point discrete Laplacian| of the field over the grid nodes of
// spacing h whose full stencil lies in the disc of radius half_extent.  The
// grid must keep a two-step margin from the unit circle.
double laplacian_residual(const measure_field& field, double half_extent, double h);

} // namespace bidisc

#endif
