#include "bidisc/regions.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "bidisc/conformal.hpp"

namespace bidisc {

namespace {

constexpr double boundary_tol = 1e-12;
constexpr double tie_tol = 1e-12;

bool on_circle(cplx z) { return std::abs(std::abs(z) - 1.0) <= boundary_tol; }
bool in_disc(cplx z) { return std::abs(z) < 1.0 - boundary_tol; }

} // namespace

cross::cross(boundary_set a, boundary_set b) : A(std::move(a)), B(std::move(b)) {
    if (A.measure() <= 0.0 || B.measure() <= 0.0)
        throw std::invalid_argument("cross: both boundary sets need positive measure");
}

cross_tag cross_contains(const cross& X, cplx z, cplx w) {
    const bool zD = in_disc(z), wD = in_disc(w);
    const bool zB = on_circle(z), wB = on_circle(w);
    const double za = zB ? wrap_angle(std::arg(z)) : 0.0;
    const double wa = wB ? wrap_angle(std::arg(w)) : 0.0;
    const bool zA = zB && X.A.contains(za);
    const bool wBset = wB && X.B.contains(wa);
    const boundary_set Astar = X.A.regular_points();
    const boundary_set Bstar = X.B.regular_points();
    const bool zAs = zB && Astar.contains(za);
    const bool wBs = wB && Bstar.contains(wa);

    const bool in_w = ((zD || zA) && wBset) || (zA && (wBset || wD));
    const bool interior = (zD && wBset) || (zA && wD);
    // W* = X(A*, B*; D, G)
    const bool star = ((zD || zAs) && wBs) || (zAs && (wBs || wD));
    if (interior && star) return cross_tag::in_interior_regular;
    if (interior) return cross_tag::in_interior;
    if (in_w) return cross_tag::in_cross;
    return cross_tag::outside;
}

envelope_result envelope_contains(const cross& X, cplx z, cplx w) {
    if (!in_disc(z) || !in_disc(w))
        throw std::domain_error("envelope_contains: boundary points rejected");
    envelope_result r;
    const double sum = harmonic_measure(z, X.A) + harmonic_measure(w, X.B);
    r.slack = 1.0 - sum;
    r.inside = r.slack > tie_tol;
    return r;
}

bool envelope_tilde_contains(const cross& X, double delta, cplx z, cplx w) {
    if (!in_disc(w))
        throw std::domain_error("envelope_tilde_contains: boundary point rejected");
    const double scaled = angular_harmonic_measure(z, X.A, delta);
    return 1.0 - (scaled + harmonic_measure(w, X.B)) > tie_tol;
}

level_set_region level_set_region::global(boundary_set A, double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("level_set_region: threshold must lie in (0, 1)");
    level_set_region r;
    r.base = std::move(A);
    r.threshold = delta;
    return r;
}

level_set_region level_set_region::local(boundary_set A, double delta, double a, double rad) {
    level_set_region r = global(std::move(A), delta);
    r.localized = true;
    r.center_angle = wrap_angle(a);
    r.radius = rad;
    return r;
}

bool level_set_region::contains(cplx z) const {
    if (!in_disc(z)) return false;
    if (localized) {
        if (std::abs(z - unit(center_angle)) >= radius - boundary_tol) return false;
        return local_harmonic_measure(z, base, center_angle, radius) < threshold - tie_tol;
    }
    return harmonic_measure(z, base) < threshold - tie_tol;
}

annulus::annulus(cplx w0, double s_minus, double s_plus)
    : center(w0), inner(s_minus), outer(s_plus) {
    if (!(0.0 < s_minus && s_minus < s_plus))
        throw std::invalid_argument("annulus: need 0 < inner < outer");
}

bool annulus::contains(cplx w) const {
    const double d = std::abs(w - center);
    return d > inner + tie_tol && d < outer - tie_tol;
}

namespace {

void append_g17(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

} // namespace

void grid_field::write_csv(std::ostream& os) const { os << to_csv(); }

std::string grid_field::to_csv() const {
    std::string out = "re_coord,im_coord,mask,re_val,im_val\n";
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const std::size_t k = index(ix, iy);
            append_g17(out, xcoord(ix));
            out += ',';
            append_g17(out, ycoord(iy));
            out += ',';
            out += mask[k] ? '1' : '0';
            out += ',';
            append_g17(out, values[k].real());
            out += ',';
            append_g17(out, values[k].imag());
            out += '\n';
        }
    }
    return out;
}

grid_field grid_field::read_csv(std::istream& is) {
    grid_field g;
    std::string line;
    if (!std::getline(is, line) || line.rfind("re_coord", 0) != 0)
        throw std::runtime_error("grid_field: bad CSV header");
    std::vector<double> xs, ys;
    std::vector<std::uint8_t> mask;
    std::vector<cplx> vals;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        double x, y, re, im;
        int m;
        if (std::sscanf(line.c_str(), "%lf,%lf,%d,%lf,%lf", &x, &y, &m, &re, &im) != 5)
            throw std::runtime_error("grid_field: bad CSV row");
        xs.push_back(x);
        ys.push_back(y);
        mask.push_back(static_cast<std::uint8_t>(m));
        vals.push_back(cplx(re, im));
    }
    if (xs.empty()) throw std::runtime_error("grid_field: empty CSV");
    int nx = 0;
    while (nx < static_cast<int>(xs.size()) && ys[nx] == ys[0]) ++nx;
    g.nx = nx;
    g.ny = static_cast<int>(xs.size()) / nx;
    g.re0 = xs.front();
    g.re1 = xs[nx - 1];
    g.im0 = ys.front();
    g.im1 = ys.back();
    g.mask = std::move(mask);
    g.values = std::move(vals);
    return g;
}

grid_field rasterize(const std::function<bool(cplx)>& member, double re0, double re1, double im0,
                     double im1, int nx, int ny, const std::function<cplx(cplx)>* value) {
    if (nx < 1 || ny < 1) throw std::invalid_argument("rasterize: zero resolution rejected");
    grid_field g;
    g.re0 = re0;
    g.re1 = re1;
    g.im0 = im0;
    g.im1 = im1;
    g.nx = nx;
    g.ny = ny;
    g.mask.assign(static_cast<std::size_t>(nx) * ny, 0);
    g.values.assign(static_cast<std::size_t>(nx) * ny, cplx(0.0, 0.0));
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const cplx z(g.xcoord(ix), g.ycoord(iy));
            const std::size_t k = g.index(ix, iy);
            const bool in = member(z);
            g.mask[k] = in ? 1 : 0;
            if (in && value) g.values[k] = (*value)(z);
        }
    }
    return g;
}

std::optional<strong_end_point_witness>
strong_end_point_check(const std::function<bool(cplx, cplx)>& region, const boundary_set& A,
                       double a, cplx b, const strong_end_point_options& opts) {
    sample_rng rng(opts.seed);
    const double a_angle = wrap_angle(a);
    for (int ir = 1; ir <= opts.schedule_depth; ++ir) {
        const double r = std::ldexp(1.0, -ir);
        for (int id = 1; id <= opts.schedule_depth; ++id) {
            const double delta = std::ldexp(1.0, -id);
            level_set_region dard = level_set_region::local(A, delta, a_angle, r);
            // draw the z-sample once per (r, delta) candidate
            std::vector<cplx> zs;
            const cplx a_pt = unit(a_angle);
            int tries = 0;
            while (static_cast<int>(zs.size()) < opts.z_samples && tries < 400 * opts.z_samples) {
                ++tries;
                cplx z = rng.in_disc(a_pt, r);
                if (std::abs(z) < 1.0 - boundary_tol && dard.contains(z)) zs.push_back(z);
            }
            if (static_cast<int>(zs.size()) < opts.z_samples) continue;
            for (int ip = 1; ip <= opts.schedule_depth; ++ip) {
                const double rho = std::ldexp(1.0, -ip);
                if (std::abs(b) + rho >= 1.0 - boundary_tol) continue;
                bool ok = true;
                int checked = 0;
                for (const cplx& z : zs) {
                    for (int j = 0; j < opts.w_samples && ok; ++j) {
                        cplx w = b + rho * std::sqrt(rng.uniform()) * unit(rng.uniform(0.0, two_pi));
                        ++checked;
                        if (!region(z, w)) ok = false;
                    }
                    if (!ok) break;
                }
                if (ok) {
                    strong_end_point_witness wit;
                    wit.r = r;
                    wit.delta = delta;
                    wit.rho = rho;
                    wit.samples_checked = checked;
                    return wit;
                }
            }
        }
    }
    return std::nullopt;
}

} // namespace bidisc
