#include "bidisc/boundary.hpp"

#include <algorithm>
#include <stdexcept>

namespace bidisc {

arc::arc(double a, double b) {
    start = wrap_angle(a);
    double len = wrap_angle(b - a);
    if (len <= angle_tol)
        throw std::invalid_argument("arc: zero-length arc rejected");
    length = len;
    full = false;
}

arc arc::full_circle() {
    arc a;
    a.start = 0.0;
    a.length = two_pi;
    a.full = true;
    return a;
}

bool arc::contains(double theta) const {
    if (full) return true;
    double off = wrap_angle(theta - start);
    if (off <= length + angle_tol) return true;
    // the seam: theta just below start wraps to ~2*pi
    return off >= two_pi - angle_tol;
}

bool arc::contains_open(double theta) const {
    if (full) return true;
    double off = wrap_angle(theta - start);
    return off > angle_tol && off < length - angle_tol;
}

namespace {

// unrolled endpoint representation: [start, start+length] with start in
// [0, 2*pi), possibly crossing 2*pi
struct segment {
    double lo, hi; // hi may exceed 2*pi
};

} // namespace

boundary_set boundary_set::normalize(std::vector<arc> arcs) {
    boundary_set out;
    if (arcs.empty()) return out;
    // split every arc at the 0/2*pi seam so merging happens on a line
    std::vector<segment> segs;
    for (const auto& a : arcs) {
        if (a.full) {
            out.arcs_ = {arc::full_circle()};
            return out;
        }
        if (a.length <= angle_tol)
            throw std::invalid_argument("normalize: zero-length arc rejected");
        double lo = wrap_angle(a.start);
        double hi = lo + a.length;
        if (hi <= two_pi) {
            segs.push_back({lo, hi});
        } else {
            segs.push_back({lo, two_pi});
            segs.push_back({0.0, hi - two_pi});
        }
    }
    std::sort(segs.begin(), segs.end(), [](const segment& x, const segment& y) { return x.lo < y.lo; });
    std::vector<segment> merged;
    for (const auto& s : segs) {
        if (!merged.empty() && s.lo <= merged.back().hi + angle_tol)
            merged.back().hi = std::max(merged.back().hi, s.hi);
        else
            merged.push_back(s);
    }
    // stitch the pair meeting at the seam back into one crossing arc
    if (merged.size() > 1 && merged.front().lo <= angle_tol &&
        merged.back().hi >= two_pi - angle_tol) {
        segment first = merged.front();
        segment& last = merged.back();
        last.hi = two_pi + first.hi;
        merged.erase(merged.begin());
    }
    if (merged.size() == 1 && merged[0].hi - merged[0].lo >= two_pi - angle_tol) {
        out.arcs_ = {arc::full_circle()};
        return out;
    }
    for (const auto& s : merged) {
        arc a;
        a.start = wrap_angle(s.lo);
        a.length = std::min(s.hi - s.lo, two_pi);
        a.full = false;
        if (a.length > angle_tol) out.arcs_.push_back(a);
    }
    std::sort(out.arcs_.begin(), out.arcs_.end(),
              [](const arc& x, const arc& y) { return x.start < y.start; });
    return out;
}

boundary_set boundary_set::full_circle() {
    boundary_set b;
    b.arcs_ = {arc::full_circle()};
    return b;
}

double boundary_set::measure() const {
    double m = 0.0;
    for (const auto& a : arcs_) m += a.length;
    return std::min(m, two_pi);
}

bool boundary_set::contains(double theta) const {
    for (const auto& a : arcs_) {
        if (open_ends_ ? a.contains_open(theta) : a.contains(theta)) return true;
    }
    return false;
}

namespace {

// Collect sorted breakpoints of both sets and classify each elementary piece
// by membership of its midpoint.  Exact for arc unions.
boundary_set combine(const boundary_set& a, const boundary_set& b, bool (*keep)(bool, bool)) {
    if (a.is_full_circle() && b.is_full_circle()) {
        if (keep(true, true)) return boundary_set::full_circle();
        return boundary_set::empty();
    }
    std::vector<double> cuts;
    auto push_cuts = [&cuts](const boundary_set& s) {
        for (const auto& x : s.arcs()) {
            if (x.full) continue;
            cuts.push_back(wrap_angle(x.start));
            cuts.push_back(wrap_angle(x.start + x.length));
        }
    };
    push_cuts(a);
    push_cuts(b);
    if (cuts.empty()) {
        bool ina = a.is_full_circle();
        bool inb = b.is_full_circle();
        if (keep(ina, inb)) return boundary_set::full_circle();
        return boundary_set::empty();
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double x, double y) { return near(x, y); }),
               cuts.end());
    const std::size_t n = cuts.size();
    if (n == 1) {
        double mid = wrap_angle(cuts[0] + pi);
        if (keep(a.contains(mid), b.contains(mid))) return boundary_set::full_circle();
        return boundary_set::empty();
    }
    std::vector<arc> kept;
    for (std::size_t i = 0; i < n; ++i) {
        double lo = cuts[i];
        double hi = (i + 1 < n) ? cuts[i + 1] : cuts[0] + two_pi;
        if (hi - lo <= angle_tol) continue;
        double mid = wrap_angle(0.5 * (lo + hi));
        if (keep(a.contains(mid), b.contains(mid))) kept.push_back(arc(lo, lo + (hi - lo)));
    }
    return boundary_set::normalize(std::move(kept));
}

} // namespace

boundary_set boundary_set::set_union(const boundary_set& other) const {
    return combine(*this, other, [](bool x, bool y) { return x || y; });
}

boundary_set boundary_set::set_intersection(const boundary_set& other) const {
    return combine(*this, other, [](bool x, bool y) { return x && y; });
}

boundary_set boundary_set::set_difference(const boundary_set& other) const {
    return combine(*this, other, [](bool x, bool y) { return x && !y; });
}

boundary_set boundary_set::complement() const {
    if (is_empty()) return full_circle();
    if (is_full_circle()) return empty();
    return full_circle().set_difference(*this);
}

boundary_set boundary_set::regular_points() const {
    boundary_set out = *this;
    if (!out.is_full_circle() && !out.is_empty()) out.open_ends_ = true;
    return out;
}

boundary_set boundary_set::shrunk(double eps) const {
    if (eps <= 0.0) return *this;
    std::vector<arc> shr;
    for (const auto& a : arcs_) {
        if (a.full) {
            shr.push_back(a);
            continue;
        }
        double len = a.length - 2.0 * eps;
        if (len > angle_tol) shr.push_back(arc(a.start + eps, a.start + eps + len));
    }
    boundary_set out = normalize(std::move(shr));
    if (open_ends_) out.open_ends_ = true;
    return out;
}

stolz_region::stolz_region(double vertex_angle, double alpha) : vertex(wrap_angle(vertex_angle)), opening(alpha) {
    if (!(alpha > 0.0 && alpha < pi / 2.0))
        throw std::invalid_argument("stolz_region: opening must lie in (0, pi/2)");
}

bool stolz_region::contains(cplx z) const {
    if (std::abs(z) >= 1.0) return false;
    cplx v = 1.0 - z * unit(-vertex);
    return std::abs(std::arg(v)) < opening;
}

approach_path make_approach_path(double vertex_angle, double alpha, int n, double q,
                                 double start_distance) {
    if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument("make_approach_path: ratio must lie in (0, 1)");
    if (n < 3) throw std::invalid_argument("make_approach_path: need at least 3 points");
    if (!(start_distance > 0.0 && start_distance < 1.0))
        throw std::invalid_argument("make_approach_path: start distance must lie in (0, 1)");
    approach_path p;
    p.vertex = wrap_angle(vertex_angle);
    p.opening = alpha;
    p.ratio = q;
    p.points.reserve(n);
    const cplx zeta = unit(p.vertex);
    double d = start_distance;
    for (int k = 0; k < n; ++k) {
        p.points.push_back(zeta * (1.0 - d));
        d *= q;
    }
    return p;
}

} // namespace bidisc
