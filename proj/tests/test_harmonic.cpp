#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bidisc/conformal.hpp"
#include "bidisc/harmonic.hpp"

using namespace bidisc;

namespace {

std::vector<arc> random_arcs(sample_rng& rng, int max_count = 5) {
    std::vector<arc> arcs;
    const int n = 1 + static_cast<int>(rng.uniform() * max_count);
    for (int i = 0; i < n; ++i) {
        const double s = rng.uniform(0.0, two_pi);
        arcs.push_back(arc(s, s + rng.uniform(0.05, 2.0)));
    }
    return arcs;
}

// Brownian-exit estimate of the lens harmonic measure by walk on spheres.
// Envelope convention: marked boundary counts 0, the rest counts 1.
double wos_lens_measure(cplx z, const boundary_set& A, double a_angle, double r, int walkers,
                        std::uint64_t seed, double eps = 1e-6) {
    sample_rng rng(seed);
    const cplx a = unit(a_angle);
    int unmarked = 0;
    for (int i = 0; i < walkers; ++i) {
        cplx p = z;
        for (int step = 0; step < 100000; ++step) {
            const double d1 = 1.0 - std::abs(p);
            const double d2 = r - std::abs(p - a);
            const double d = std::min(d1, d2);
            if (d < eps) {
                if (d1 < d2) {
                    if (!A.contains(wrap_angle(std::arg(p)))) ++unmarked;
                } else {
                    ++unmarked; // the inner circular arc is never marked
                }
                break;
            }
            p += d * unit(rng.uniform(0.0, two_pi));
        }
    }
    return static_cast<double>(unmarked) / walkers;
}

} // namespace

TEST_CASE("center identity: omega(0) = 1 - mes/2pi") {
    CHECK(harmonic_measure(0.0, boundary_set({arc(0.7, 0.7 + pi)})) == doctest::Approx(0.5));
    sample_rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        boundary_set A = boundary_set::normalize(random_arcs(rng));
        const double expected = 1.0 - A.measure() / two_pi;
        CHECK(std::abs(harmonic_measure(0.0, A) - expected) <= 1e-14);
    }
}

TEST_CASE("extreme sets: full circle gives 0, empty set gives 1") {
    sample_rng rng(8);
    for (int i = 0; i < 50; ++i) {
        const cplx z = rng.in_disc(0.0, 0.99);
        CHECK(harmonic_measure(z, boundary_set::full_circle()) == 0.0);
        CHECK(harmonic_measure(z, boundary_set()) == 1.0);
    }
}

TEST_CASE("rejects points outside the open disc") {
    boundary_set A({arc(0.0, 1.0)});
    CHECK_THROWS_AS(harmonic_measure(cplx(1.0, 0.0), A), std::domain_error);
    CHECK_THROWS_AS(harmonic_measure(cplx(0.8, 0.8), A), std::domain_error);
}

TEST_CASE("closed form agrees with Poisson quadrature") {
    boundary_set A({arc(pi / 2, 3 * pi / 2)});
    const cplx z(0.5, 0.0);
    CHECK(std::abs(harmonic_measure(z, A) - harmonic_measure_quadrature(z, A)) <= 1e-10);

    sample_rng rng(9);
    double worst = 0.0;
    for (int trial = 0; trial < 60; ++trial) {
        boundary_set S = boundary_set::normalize(random_arcs(rng));
        const cplx p = rng.in_disc(0.0, 0.95);
        worst = std::max(worst,
                         std::abs(harmonic_measure(p, S) - harmonic_measure_quadrature(p, S)));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("complement additivity") {
    sample_rng rng(10);
    for (int trial = 0; trial < 30; ++trial) {
        boundary_set A = boundary_set::normalize(random_arcs(rng));
        if (A.is_full_circle() || A.is_empty()) continue;
        boundary_set C = A.complement();
        for (int i = 0; i < 30; ++i) {
            const cplx z = rng.in_disc(0.0, 0.97);
            CHECK(std::abs(harmonic_measure(z, A) + harmonic_measure(z, C) - 1.0) <= 1e-10);
        }
    }
}

TEST_CASE("disjoint-arc additivity of the Poisson part") {
    boundary_set a1({arc(0.0, 1.0)});
    boundary_set a2({arc(2.0, 2.9)});
    boundary_set both = a1.set_union(a2);
    sample_rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const cplx z = rng.in_disc(0.0, 0.97);
        const double share1 = 1.0 - harmonic_measure(z, a1);
        const double share2 = 1.0 - harmonic_measure(z, a2);
        const double share = 1.0 - harmonic_measure(z, both);
        CHECK(std::abs(share - share1 - share2) <= 1e-12);
    }
}

TEST_CASE("rotation equivariance") {
    sample_rng rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        boundary_set A = boundary_set::normalize(random_arcs(rng));
        const double theta = rng.uniform(0.0, two_pi);
        std::vector<arc> rotated;
        for (const auto& a : A.arcs()) {
            if (a.full)
                rotated.push_back(arc::full_circle());
            else
                rotated.push_back(arc(a.start + theta, a.start + theta + a.length));
        }
        boundary_set Arot = boundary_set::normalize(rotated);
        const cplx z = rng.in_disc(0.0, 0.95);
        CHECK(std::abs(harmonic_measure(z * unit(theta), Arot) - harmonic_measure(z, A)) <= 1e-12);
    }
}

TEST_CASE("range and strict upper bound on the open disc") {
    sample_rng rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        boundary_set A = boundary_set::normalize(random_arcs(rng));
        for (int i = 0; i < 50; ++i) {
            const double om = harmonic_measure(rng.in_disc(0.0, 0.99), A);
            CHECK(om >= 0.0);
            CHECK(om <= 1.0);
            if (A.measure() > 0.0) CHECK(om < 1.0);
        }
    }
}

TEST_CASE("removing endpoints never changes the measure (exactly)") {
    sample_rng rng(14);
    for (int trial = 0; trial < 30; ++trial) {
        boundary_set A = boundary_set::normalize(random_arcs(rng));
        boundary_set reg = A.regular_points();
        const cplx z = rng.in_disc(0.0, 0.97);
        CHECK(harmonic_measure(z, A) == harmonic_measure(z, reg));
    }
}

TEST_CASE("radial boundary limits: 0 at regular marked points, 1 off the closure") {
    boundary_set A({arc(0.0, pi)});
    // interior of A
    for (double eps : {1e-2, 1e-4, 1e-6, 1e-8}) {
        const double v = harmonic_measure((1.0 - eps) * unit(pi / 2), A);
        CHECK(v <= 10.0 * std::sqrt(eps)); // tends to 0
    }
    CHECK(harmonic_measure((1.0 - 1e-8) * unit(pi / 2), A) < 1e-3);
    // interior of the complement
    CHECK(harmonic_measure((1.0 - 1e-8) * unit(3 * pi / 2), A) > 1.0 - 1e-3);
}

TEST_CASE("local measure: boundary value 0 on the marked lens arc") {
    boundary_set A = boundary_set::full_circle(); // marks the whole boundary arc of the lens
    const double r = 0.8;
    double prev = 1.0;
    for (double eps : {1e-2, 1e-4, 1e-6}) {
        const double v = local_harmonic_measure((1.0 - eps) * unit(0.0), A, 0.0, r);
        CHECK(v < prev + 1e-12);
        prev = v;
    }
    CHECK(prev < 1e-2);
}

TEST_CASE("local measure: empty marked portion gives 1") {
    boundary_set A({arc(pi - 0.3, pi + 0.3)}); // far from the lens at angle 0
    CHECK(local_harmonic_measure(cplx(0.9, 0.0), A, 0.0, 0.4) == 1.0);
}

TEST_CASE("local measure rejects points outside the lens") {
    boundary_set A = boundary_set::full_circle();
    CHECK_THROWS_AS(local_harmonic_measure(cplx(-0.5, 0.0), A, 0.0, 0.4), std::domain_error);
}

TEST_CASE("local measure: balanced point of the symmetric lens is 1/2") {
    // the preimage of the sector bisector sees the marked side with measure
    // exactly 1/2
    const double r = 0.7;
    lens_geometry lens = make_lens(0.0, r);
    const cplx z = lens.to_half_plane.invert(cplx(0.0, 1.0));
    REQUIRE(lens.contains(z));
    const double v = local_harmonic_measure(z, boundary_set::full_circle(), 0.0, r);
    CHECK(v == doctest::Approx(0.5).epsilon(1e-10));

    // Brownian-exit oracle, 10^6 walkers, 3 sigma
    const double mc = wos_lens_measure(z, boundary_set::full_circle(), 0.0, r, 1000000, 2024);
    const double sigma = std::sqrt(0.25 / 1000000.0);
    CHECK(std::abs(mc - 0.5) <= 3.0 * sigma);
}

TEST_CASE("local measure agrees with the Brownian oracle off symmetry") {
    // asymmetric marked portion: only part of the lens arc
    const double r = 0.9;
    boundary_set A({arc(-0.1, 0.35)});
    const cplx z = cplx(0.82, 0.05);
    const double exact = local_harmonic_measure(z, A, 0.0, r);
    const int n = 200000;
    const double mc = wos_lens_measure(z, A, 0.0, r, n, 99);
    const double sigma = std::sqrt(std::max(exact * (1.0 - exact), 0.05) / n);
    CHECK(std::abs(mc - exact) <= 3.5 * sigma);
}

TEST_CASE("regular points oracle: local measure vanishes only at interior points") {
    // radial approach through the lens at a point of the arc: the localized
    // measure tends to 0 at interior points and stays bounded away from 0 at
    // the endpoints
    boundary_set A({arc(0.0, pi)});
    const double r = 0.3;
    auto radial_limit = [&](double zeta) {
        double v = 1.0;
        for (double eps : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6})
            v = local_harmonic_measure((1.0 - eps) * unit(zeta), A, zeta, r);
        return v;
    };
    // interior points: locally regular
    for (double zeta : {0.5, pi / 2, 2.5}) CHECK(radial_limit(zeta) < 1e-2);
    // endpoints: half the local boundary is unmarked, the limit stays near 1/2
    CHECK(radial_limit(0.0) > 0.2);
    CHECK(radial_limit(pi) > 0.2);
    // and regular_points drops exactly the endpoints
    boundary_set reg = A.regular_points();
    CHECK(!reg.contains(0.0));
    CHECK(reg.contains(0.5));
}

TEST_CASE("angular harmonic measure: scaling and calibration") {
    boundary_set A({arc(0.0, pi)});
    sample_rng rng(15);
    // delta = 0 reduces to the plain measure
    for (int i = 0; i < 20; ++i) {
        const cplx z = rng.in_disc(0.0, 0.9);
        CHECK(angular_harmonic_measure(z, A, 0.0) == harmonic_measure(z, A));
    }
    // delta = 1/2 doubles the measure on its domain
    for (int i = 0; i < 100; ++i) {
        const cplx z = rng.in_disc(0.0, 0.9);
        const double om = harmonic_measure(z, A);
        if (om < 0.5) {
            CHECK(angular_harmonic_measure(z, A, 0.5) ==
                  doctest::Approx(2.0 * om).epsilon(1e-14));
            // cross-check against the quadrature path
            CHECK(std::abs(angular_harmonic_measure(z, A, 0.5) -
                           2.0 * harmonic_measure_quadrature(z, A)) <= 1e-10);
        }
    }
    // value tends to 1 when omega approaches 1 - delta
    const double delta = 0.25;
    // bisect along the ray toward the unmarked side for omega = 1 - delta - e
    for (double e : {1e-3, 1e-6, 1e-9}) {
        const double target = 1.0 - delta - e;
        double lo = 0.0, hi = 1.0 - 1e-12;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (harmonic_measure(mid * unit(3 * pi / 2), A) < target)
                lo = mid;
            else
                hi = mid;
        }
        const double v = angular_harmonic_measure(lo * unit(3 * pi / 2), A, delta);
        CHECK(v == doctest::Approx(target / (1.0 - delta)).epsilon(1e-9));
    }
    // outside the level-set domain: rejected
    CHECK_THROWS_AS(angular_harmonic_measure(0.999 * unit(3 * pi / 2), A, 0.5),
                    std::domain_error);
}

TEST_CASE("monotone convergence of nested boundary sets") {
    boundary_set A({arc(0.0, pi)});
    std::vector<boundary_set> steps;
    for (int k = 1; k <= 24; ++k) {
        const double eps = std::ldexp(1.0, -k);
        steps.push_back(boundary_set({arc(eps, pi - eps)}));
    }
    std::vector<cplx> probes;
    for (double t : {0.0, 0.2, 0.4, 0.6}) probes.push_back(cplx(0.0, t));
    check_report rep = check_monotone_convergence(steps, A, probes, 1e-6, 1e-6);
    CHECK(rep.all_pass());

    // constant schedule: zero gap
    std::vector<boundary_set> constant(5, A);
    check_report rep2 = check_monotone_convergence(constant, A, probes, 1e-12, 1e-12);
    CHECK(rep2.all_pass());

    // the center probe follows 1 - mes/2pi exactly
    std::vector<cplx> center{cplx(0.0, 0.0)};
    for (std::size_t k = 0; k < steps.size(); ++k) {
        const double expected = 1.0 - steps[k].measure() / two_pi;
        CHECK(harmonic_measure(0.0, steps[k]) == doctest::Approx(expected).epsilon(1e-13));
    }

    // non-nested schedules are rejected
    std::vector<boundary_set> bad{boundary_set({arc(0.0, 2.0)}), boundary_set({arc(1.0, 2.5)})};
    CHECK_THROWS_AS(check_monotone_convergence(bad, A, probes), std::invalid_argument);
}

TEST_CASE("laplacian residual: constants are exactly harmonic") {
    measure_field full{boundary_set::full_circle(), eval_mode::closed_form, {}};
    CHECK(laplacian_residual(full, 0.8, 1e-2) == 0.0);
    measure_field empty{boundary_set(), eval_mode::closed_form, {}};
    CHECK(laplacian_residual(empty, 0.8, 1e-2) == 0.0);
}

TEST_CASE("laplacian residual scales like h^2 (Richardson)") {
    measure_field f{boundary_set({arc(0.0, pi)}), eval_mode::closed_form, {}};
    const double r1 = laplacian_residual(f, 0.8, 1e-3);
    const double r2 = laplacian_residual(f, 0.8, 5e-4);
    CHECK(r1 / r2 > 2.0); // ~4 for the five-point stencil on a harmonic field
    CHECK(r1 / r2 < 8.0);
    CHECK(r1 <= 1e-2);
}

TEST_CASE("laplacian residual rejects grids touching the boundary") {
    measure_field f{boundary_set({arc(0.0, pi)}), eval_mode::closed_form, {}};
    CHECK_THROWS_AS(laplacian_residual(f, 0.999, 1e-3), std::invalid_argument);
}
