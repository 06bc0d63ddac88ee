#ifndef BIDISC_BOUNDARY_HPP
#define BIDISC_BOUNDARY_HPP

#include <vector>

#include "bidisc/numeric.hpp"

namespace bidisc {

// Closed circular arc on the unit circle, running counterclockwise from
// start to start+length.  Angles are stored reduced to [0, 2*pi); the full
// circle is encoded by an explicit flag so that length 2*pi is unambiguous.
struct arc {
    double start = 0.0;
    double length = 0.0;
    bool full = false;

    arc() = default;
    // Counterclockwise arc from a to b; rejects zero-length input.
    arc(double a, double b);
    static arc full_circle();

    double end() const { return full ? start : wrap_angle(start + length); }
    // Closed-arc membership of an angle, up to angle_tol.
    bool contains(double theta) const;
    // Membership in the relative interior (endpoints excluded).
    bool contains_open(double theta) const;
};

// Normalized finite union of closed arcs: sorted by start angle, pairwise
// disjoint interiors, overlapping or adjacent input arcs merged.  When
// open_ends is set, membership tests exclude the arc endpoints (the locally
// regular part); the measure is unchanged.
class boundary_set {
  public:
    boundary_set() = default;
    explicit boundary_set(std::vector<arc> arcs) { *this = normalize(std::move(arcs)); }

    static boundary_set normalize(std::vector<arc> arcs);
    static boundary_set full_circle();
    static boundary_set empty() { return boundary_set(); }

    const std::vector<arc>& arcs() const { return arcs_; }
    bool is_empty() const { return arcs_.empty(); }
    bool is_full_circle() const { return arcs_.size() == 1 && arcs_[0].full; }
    bool open_ends() const { return open_ends_; }

    double measure() const;
    bool contains(double theta) const;

    // Set algebra on arc unions; results are normalized and closed.
    boundary_set set_union(const boundary_set& other) const;
    boundary_set set_intersection(const boundary_set& other) const;
    boundary_set set_difference(const boundary_set& other) const;
    boundary_set complement() const;

    // Relative interior of each arc: same arcs with endpoints excluded from
    // membership.  Realizes the locally regular part A n A*.
    boundary_set regular_points() const;

    // Shrink every arc by eps at both ends (arcs shorter than 2*eps vanish).
    boundary_set shrunk(double eps) const;

  private:
    std::vector<arc> arcs_;
    bool open_ends_ = false;
};

inline double measure(const boundary_set& a) { return a.measure(); }
inline boundary_set normalize(std::vector<arc> arcs) { return boundary_set::normalize(std::move(arcs)); }
inline boundary_set regular_points(const boundary_set& a) { return a.regular_points(); }

// Angular approach region at the boundary point e^{i*vertex} with
// half-opening alpha in (0, pi/2): { z in E : |arg(1 - z e^{-i vertex})| < alpha }.
struct stolz_region {
    double vertex = 0.0;
    double opening = 0.0;

    stolz_region(double vertex_angle, double alpha);
    bool contains(cplx z) const;
};

inline bool stolz_contains(const stolz_region& s, cplx z) { return s.contains(z); }

// Finite sample of a nontangential approach to e^{i*vertex}: points on the
// internal bisector (the radius) with |p_k - vertex| = d0 * q^k.
struct approach_path {
    double vertex = 0.0;
    double opening = 0.0;
    double ratio = 0.0;
    std::vector<cplx> points;

    cplx vertex_point() const { return unit(vertex); }
};

approach_path make_approach_path(double vertex_angle, double alpha, int n, double q,
                                 double start_distance = 0.5);

} // namespace bidisc

#endif
