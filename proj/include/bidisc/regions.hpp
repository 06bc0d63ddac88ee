#ifndef BIDISC_REGIONS_HPP
#define BIDISC_REGIONS_HPP

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bidisc/boundary.hpp"
#include "bidisc/harmonic.hpp"

namespace bidisc {

// Two-fold cross data over D = G = E: boundary sets with positive measure on
// both factors.
struct cross {
    boundary_set A;
    boundary_set B;

    cross(boundary_set a, boundary_set b);
    cross swapped() const { return cross(B, A); }
};

enum class cross_tag {
    outside,
    in_cross,            // W
    in_interior,         // W deg
    in_interior_regular, // W deg n W*
};

cross_tag cross_contains(const cross& X, cplx z, cplx w);

struct envelope_result {
    bool inside = false;
    double slack = 0.0; // 1 - om_A(z) - om_B(w)
};

// Membership in the envelope W-hat = { om_A(z) + om_B(w) < 1 }; rejects
// boundary points of either disc.
envelope_result envelope_contains(const cross& X, cplx z, cplx w);

// Membership in the mixed envelope { om_A(z)/(1-delta) + om_B(w) < 1 };
// requires z inside the level set { om_A < 1 - delta }.
bool envelope_tilde_contains(const cross& X, double delta, cplx z, cplx w);

// Level set { om(., A, domain) < threshold }, with the domain either E or
// the lens E n Delta_a(r) when localized.  Open by strict inequality; ties
// within 1e-12 classify as outside.
struct level_set_region {
    boundary_set base;
    double threshold = 0.5;
    bool localized = false;
    double center_angle = 0.0;
    double radius = 0.0;

    static level_set_region global(boundary_set A, double delta);
    static level_set_region local(boundary_set A, double delta, double a, double r);
    bool contains(cplx z) const;
};

struct annulus {
    cplx center = 0.0;
    double inner = 0.0;
    double outer = 0.0;

    annulus(cplx w0, double s_minus, double s_plus);
    bool contains(cplx w) const;
    bool closed_inside_disc() const { return std::abs(center) + outer < 1.0; }
};

// Sampled complex values on a rectangular grid with membership mask.
struct grid_field {
    double re0 = 0.0, re1 = 0.0, im0 = 0.0, im1 = 0.0;
    int nx = 0, ny = 0;
    std::vector<std::uint8_t> mask;
    std::vector<cplx> values;

    double xcoord(int ix) const { return nx > 1 ? re0 + ix * (re1 - re0) / (nx - 1) : re0; }
    double ycoord(int iy) const { return ny > 1 ? im0 + iy * (im1 - im0) / (ny - 1) : im0; }
    std::size_t index(int ix, int iy) const { return static_cast<std::size_t>(iy) * nx + ix; }

    void write_csv(std::ostream& os) const;
    std::string to_csv() const;
    static grid_field read_csv(std::istream& is);
};

// Mask = membership of each node; values from the optional evaluator where
// unmasked.  Deterministic for fixed inputs.
grid_field rasterize(const std::function<bool(cplx)>& member, double re0, double re1, double im0,
                     double im1, int nx, int ny,
                     const std::function<cplx(cplx)>* value = nullptr);

// Parameters witnessing D_{a,r,delta} x Delta_b(rho) inside the region.
struct strong_end_point_witness {
    double r = 0.0;
    double delta = 0.0;
    double rho = 0.0;
    int samples_checked = 0;
};

struct strong_end_point_options {
    int schedule_depth = 10; // dyadic schedule 2^-1 .. 2^-depth
    int z_samples = 100;
    int w_samples = 100;
    std::uint64_t seed = 20240501;
};

// Searches the dyadic (r, delta, rho) schedule for a verified product
// neighborhood inside the region; failure is a value, not an error.
std::optional<strong_end_point_witness>
strong_end_point_check(const std::function<bool(cplx, cplx)>& region, const boundary_set& A,
                       double a, cplx b, const strong_end_point_options& opts = {});

} // namespace bidisc

#endif
