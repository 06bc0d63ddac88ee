#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bidisc/conformal.hpp"
#include "bidisc/harmonic.hpp"

using namespace bidisc;

namespace {

cplx cross_ratio(cplx a, cplx b, cplx c, cplx d) {
    return ((a - c) * (b - d)) / ((a - d) * (b - c));
}

// Rejection sample from the level-set component adjacent to the arc.  Points
// whose chain image collapses onto the corner landmarks are excluded: the
// power link shrinks corner distances exponentially, and double precision
// cannot hold a direction at |image - corner| ~ 1e-13.
std::vector<cplx> lens_probes(const lens_chain_result& lens, int count, std::uint64_t seed) {
    sample_rng rng(seed);
    std::vector<cplx> out;
    const arc& a = lens.base_arc;
    int guard = 0;
    while (static_cast<int>(out.size()) < count && guard < 200000) {
        ++guard;
        const double theta = a.start + a.length * rng.uniform();
        const double t = rng.uniform() * 0.9;
        const cplx z = (1.0 - t) * unit(theta);
        if (!lens.in_domain(z)) continue;
        const cplx img = lens.chain.apply(z);
        if (std::abs(img - cplx(1.0, 0.0)) < 1e-5 || std::abs(img + cplx(1.0, 0.0)) < 1e-5)
            continue;
        out.push_back(z);
    }
    return out;
}

} // namespace

TEST_CASE("mobius basics") {
    mobius_map id = mobius_map::identity();
    CHECK(id.apply(cplx(0.3, 0.1)).value == cplx(0.3, 0.1));

    mobius_map cayley = mobius_map::disc_to_half_plane();
    CHECK(std::abs(cayley.apply(cplx(0.0, 0.0)).value - cplx(0.0, 1.0)) < 1e-15);
    // boundary angle theta lands on tan(theta/2)
    for (double th : {0.3, 1.0, 2.5, -1.2})
        CHECK(std::abs(cayley.apply(unit(th)).value - cplx(std::tan(th / 2), 0.0)) < 1e-12);

    CHECK_THROWS_AS(mobius_map(1.0, 2.0, 2.0, 4.0), std::invalid_argument);
}

TEST_CASE("mobius group laws on random samples") {
    sample_rng rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        mobius_map f(cplx(rng.uniform(-2, 2), rng.uniform(-2, 2)),
                     cplx(rng.uniform(-2, 2), rng.uniform(-2, 2)),
                     cplx(rng.uniform(-2, 2), rng.uniform(-2, 2)),
                     cplx(rng.uniform(-2, 2), rng.uniform(-2, 2)));
        mobius_map roundtrip = f.compose(f.inverse());
        for (int i = 0; i < 25; ++i) {
            const cplx t = rng.in_disc(0.0, 2.0);
            CHECK(std::abs(roundtrip.apply(t).value - t) <= 1e-12 * (1.0 + std::abs(t)));
        }
    }
}

TEST_CASE("triple transitivity is exact") {
    sample_rng rng(22);
    for (int trial = 0; trial < 50; ++trial) {
        cplx p[3], q[3];
        for (int i = 0; i < 3; ++i) {
            p[i] = rng.in_disc(0.0, 2.0);
            q[i] = rng.in_disc(0.0, 2.0);
        }
        if (std::abs(p[0] - p[1]) < 0.1 || std::abs(p[1] - p[2]) < 0.1 ||
            std::abs(p[0] - p[2]) < 0.1)
            continue;
        if (std::abs(q[0] - q[1]) < 0.1 || std::abs(q[1] - q[2]) < 0.1 ||
            std::abs(q[0] - q[2]) < 0.1)
            continue;
        mobius_map m = mobius_map::three_points(p[0], p[1], p[2], q[0], q[1], q[2]);
        for (int i = 0; i < 3; ++i) CHECK(std::abs(m.apply(p[i]).value - q[i]) <= 1e-10);
    }
}

TEST_CASE("mobius maps handle the point at infinity") {
    mobius_map m(1.0, -0.5, -1.0, 2.0); // t -> (t - 1/2)/(2 - t)
    CHECK(m.apply(sphere_point::inf()).value == cplx(-1.0, 0.0));
    CHECK(m.apply(sphere_point(cplx(2.0, 0.0))).infinite);
    CHECK(m.inverse().apply(sphere_point(cplx(-1.0, 0.0))).infinite);
}

TEST_CASE("power map: branch placement and rejection near the cut") {
    power_map p(2.0, 0.0, pi / 2);
    CHECK(std::abs(p.apply(cplx(0.0, 1.0)).value - cplx(-1.0, 0.0)) < 1e-15);
    CHECK(p.apply(sphere_point(0.0)).value == cplx(0.0, 0.0));
    CHECK(p.apply(sphere_point::inf()).infinite);
    // the cut sits opposite the sector bisector (here at angle 5pi/4)
    CHECK_THROWS_AS(p.apply(sphere_point(unit(pi / 4 + pi))), std::domain_error);
    // outside the declared sector
    CHECK_THROWS_AS(p.apply(sphere_point(unit(3.0))), std::domain_error);
}

TEST_CASE("power link scales angles by the exponent") {
    power_map p(1.0 / 0.75, 0.0, 0.75 * pi);
    sample_rng rng(23);
    for (int i = 0; i < 200; ++i) {
        const double theta = rng.uniform(0.01, 0.75 * pi - 0.01);
        const double rad = rng.uniform(0.1, 3.0);
        const cplx image = p.apply(sphere_point(rad * unit(theta))).value;
        CHECK(std::arg(image) == doctest::Approx(theta / 0.75).epsilon(1e-12));
    }
}

TEST_CASE("lens chain: corners land on -1 and +1, interior maps into E") {
    boundary_set A({arc(0.0, pi)});
    lens_chain_result lens = lens_chain(A, 0.5);
    const cplx c1 = lens.chain.apply(sphere_point(unit(0.0))).value;
    const cplx c2 = lens.chain.apply(sphere_point(unit(pi))).value;
    CHECK(std::abs(c1 - cplx(-1.0, 0.0)) < 1e-12);
    CHECK(std::abs(c2 - cplx(1.0, 0.0)) < 1e-12);
    CHECK(lens.image_of_arc.measure() == doctest::Approx(pi).epsilon(1e-12));

    for (const cplx& z : lens_probes(lens, 300, 31)) {
        const cplx img = lens.chain.apply(z);
        CHECK(std::abs(img) < 1.0);
        // round trip through the chain
        CHECK(std::abs(lens.chain.invert(img) - z) <= 1e-12);
    }
}

TEST_CASE("lens chain boundary calibration: level curve maps to the unit circle") {
    boundary_set A({arc(0.3, 0.3 + pi / 2)});
    const double delta = 0.25;
    lens_chain_result lens = lens_chain(A, delta);
    // bisect along rays through the arc for the level curve omega = 1 - delta
    sample_rng rng(32);
    for (int i = 0; i < 40; ++i) {
        const double theta = 0.3 + (pi / 2) * rng.uniform();
        double lo = 0.0, hi = 1.0 - 1e-13;
        for (int it = 0; it < 100; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (harmonic_measure(mid * unit(theta), A) < 1.0 - delta)
                hi = mid;
            else
                lo = mid; // near the arc omega is small; level curve is crossed once
        }
        // pick whichever end converged to the curve
        const cplx zc = hi * unit(theta);
        const double om = harmonic_measure(zc, A);
        if (std::abs(om - (1.0 - delta)) > 1e-8) continue;
        const cplx img = lens.chain.apply(zc);
        CHECK(std::abs(std::abs(img) - 1.0) <= 1e-8);
    }
}

TEST_CASE("lens chain degenerates toward the identity scale as delta -> 0") {
    boundary_set A({arc(0.0, pi)});
    lens_chain_result lens = lens_chain(A, 0.001);
    // the component fills most of the disc
    sample_rng rng(33);
    int inside = 0, total = 0;
    for (int i = 0; i < 2000; ++i) {
        const cplx z = rng.in_disc(0.0, 0.9);
        ++total;
        if (lens.in_domain(z)) ++inside;
    }
    CHECK(inside > 0.95 * total);
    for (const cplx& z : lens_probes(lens, 100, 34)) CHECK(std::abs(lens.chain.apply(z)) < 1.0);
}

TEST_CASE("lens chain rejects multi-arc sets and bad deltas") {
    boundary_set two({arc(0.0, 1.0), arc(2.0, 3.0)});
    CHECK_THROWS_AS(lens_chain(two, 0.5), std::invalid_argument);
    boundary_set one({arc(0.0, 1.0)});
    CHECK_THROWS_AS(lens_chain(one, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(lens_chain(one, 1.0), std::invalid_argument);
}

TEST_CASE("cross-ratio invariance of each mobius link in the lens chain") {
    boundary_set A({arc(0.5, 0.5 + 2.0)});
    lens_chain_result lens = lens_chain(A, 0.4);
    sample_rng rng(35);
    const mobius_map& front = std::get<mobius_map>(lens.chain.links[0]);
    for (int trial = 0; trial < 50; ++trial) {
        cplx pts[4];
        for (auto& p : pts) p = unit(rng.uniform(0.6, 2.4)); // boundary samples on the arc
        cplx imgs[4];
        bool finite = true;
        for (int i = 0; i < 4; ++i) {
            sphere_point s = front.apply(sphere_point(pts[i]));
            if (s.infinite) finite = false;
            else imgs[i] = s.value;
        }
        if (!finite) continue;
        const cplx cr0 = cross_ratio(pts[0], pts[1], pts[2], pts[3]);
        const cplx cr1 = cross_ratio(imgs[0], imgs[1], imgs[2], imgs[3]);
        CHECK(std::abs(cr0 - cr1) <= 1e-9 * (1.0 + std::abs(cr0)));
    }
}

TEST_CASE("lens chain is injective on sampled domain pairs") {
    boundary_set A({arc(0.2, 0.2 + 2.2)});
    lens_chain_result lens = lens_chain(A, 0.35);
    std::vector<cplx> probes = lens_probes(lens, 120, 38);
    std::vector<cplx> images;
    for (const cplx& z : probes) images.push_back(lens.chain.apply(z));
    for (std::size_t i = 0; i < probes.size(); ++i) {
        for (std::size_t j = i + 1; j < probes.size(); ++j) {
            if (std::abs(probes[i] - probes[j]) > 1e-6)
                CHECK(std::abs(images[i] - images[j]) > 1e-12);
        }
    }
}

TEST_CASE("measure transfer identity on the single-arc component") {
    boundary_set A({arc(0.0, pi)});
    const double delta = 0.5;
    lens_chain_result lens = lens_chain(A, delta);
    std::vector<cplx> probes = lens_probes(lens, 100, 36);
    check_report rep = verify_measure_transfer(A, delta, probes, 1e-8);
    CHECK(rep.all_pass());

    // probe near the internal level curve: both sides approach 1
    sample_rng rng(37);
    double lo = 0.0, hi = 1.0 - 1e-13;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (harmonic_measure(mid * unit(pi / 2), A) < 1.0 - delta)
            hi = mid;
        else
            lo = mid;
    }
    const cplx z_curve = (hi - 1e-9) * unit(pi / 2);
    if (lens.in_domain(z_curve)) {
        const double rhs = harmonic_measure(z_curve, A) / (1.0 - delta);
        const double lhs = harmonic_measure(lens.chain.apply(z_curve), lens.image_of_arc);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
        CHECK(rhs > 0.99);
    }

    // probe close to the interior of A: both sides approach 0
    const cplx z_arc = (1.0 - 1e-7) * unit(pi / 2);
    REQUIRE(lens.in_domain(z_arc));
    const double lhs = harmonic_measure(lens.chain.apply(z_arc), lens.image_of_arc);
    const double rhs = harmonic_measure(z_arc, A) / (1.0 - delta);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
    CHECK(rhs < 1e-2);

    // probes outside the component are rejected
    CHECK_THROWS_AS(verify_measure_transfer(A, delta, {cplx(0.0, -0.9)}, 1e-8),
                    std::invalid_argument);
}

TEST_CASE("measure transfer sweep over arc lengths and deltas") {
    const double lengths[] = {pi / 6, pi / 2, pi, 3 * pi / 2};
    const double deltas[] = {0.1, 0.25, 0.5, 0.9};
    std::uint64_t seed = 40;
    for (double L : lengths) {
        boundary_set A({arc(1.0, 1.0 + L)});
        for (double d : deltas) {
            lens_chain_result lens = lens_chain(A, d);
            std::vector<cplx> probes = lens_probes(lens, 25, seed++);
            REQUIRE(!probes.empty());
            check_report rep = verify_measure_transfer(A, d, probes, 1e-8);
            CHECK(rep.all_pass());
        }
    }
}
