#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bidisc/boundary.hpp"

using namespace bidisc;

namespace {

bool sets_equal(const boundary_set& a, const boundary_set& b, double tol = 1e-12) {
    if (a.arcs().size() != b.arcs().size()) return false;
    for (std::size_t i = 0; i < a.arcs().size(); ++i) {
        if (a.arcs()[i].full != b.arcs()[i].full) return false;
        if (!near(a.arcs()[i].start, b.arcs()[i].start, tol)) return false;
        if (!near(a.arcs()[i].length, b.arcs()[i].length, tol)) return false;
    }
    return true;
}

std::vector<arc> random_arcs(sample_rng& rng, int max_count = 6) {
    std::vector<arc> arcs;
    const int n = 1 + static_cast<int>(rng.uniform() * max_count);
    for (int i = 0; i < n; ++i) {
        const double s = rng.uniform(0.0, two_pi);
        const double len = rng.uniform(0.05, 2.5);
        arcs.push_back(arc(s, s + len));
    }
    return arcs;
}

} // namespace

TEST_CASE("normalize: single arc keeps its measure") {
    boundary_set s({arc(0.0, pi)});
    CHECK(s.arcs().size() == 1);
    CHECK(s.measure() == doctest::Approx(pi).epsilon(1e-15));
}

TEST_CASE("normalize: overlapping arcs merge") {
    boundary_set s({arc(0.0, pi), arc(pi / 2, 3 * pi / 2)});
    REQUIRE(s.arcs().size() == 1);
    CHECK(s.arcs()[0].start == doctest::Approx(0.0));
    CHECK(s.measure() == doctest::Approx(3 * pi / 2));
}

TEST_CASE("normalize: empty input") {
    boundary_set s;
    CHECK(s.is_empty());
    CHECK(s.measure() == 0.0);
}

TEST_CASE("normalize rejects zero-length arcs") {
    CHECK_THROWS_AS(arc(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("normalize handles the seam") {
    boundary_set s({arc(5.5, 1.0)}); // crosses 0
    CHECK(s.measure() == doctest::Approx(two_pi - 5.5 + 1.0));
    CHECK(s.contains(0.0));
    CHECK(s.contains(6.0));
    CHECK(s.contains(0.5));
    CHECK(!s.contains(2.0));

    // two pieces meeting exactly at the seam merge into one crossing arc
    boundary_set t({arc(5.5, two_pi - 1e-15), arc(0.0, 1.0)});
    CHECK(t.arcs().size() == 1);
}

TEST_CASE("measure: full circle and sums") {
    CHECK(boundary_set::full_circle().measure() == doctest::Approx(two_pi));
    CHECK(boundary_set({arc(0.0, pi / 3)}).measure() == doctest::Approx(pi / 3));
    boundary_set u({arc(0.0, 0.5), arc(1.0, 1.7)});
    CHECK(u.measure() == doctest::Approx(1.2).epsilon(1e-14));
}

TEST_CASE("normalization is idempotent on random arc lists") {
    sample_rng rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<arc> arcs = random_arcs(rng);
        boundary_set once = boundary_set::normalize(arcs);
        boundary_set twice = boundary_set::normalize(once.arcs());
        CHECK(sets_equal(once, twice));
    }
}

TEST_CASE("indicator equivalence of raw union and normalized set") {
    sample_rng rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<arc> arcs = random_arcs(rng);
        boundary_set norm = boundary_set::normalize(arcs);
        for (int i = 0; i < 500; ++i) {
            const double theta = rng.uniform(0.0, two_pi);
            bool raw = false;
            for (const auto& a : arcs) raw = raw || a.contains(theta);
            // skip angles within tolerance of an endpoint: merge decisions
            // there are deliberately tolerant
            bool near_endpoint = false;
            for (const auto& a : arcs) {
                if (near(theta, a.start, 1e-9) || near(theta, a.end(), 1e-9)) near_endpoint = true;
            }
            if (near_endpoint) continue;
            CHECK(raw == norm.contains(theta));
        }
    }
}

TEST_CASE("inclusion-exclusion of measures on random pairs") {
    sample_rng rng(44);
    for (int trial = 0; trial < 100; ++trial) {
        boundary_set a = boundary_set::normalize(random_arcs(rng));
        boundary_set b = boundary_set::normalize(random_arcs(rng));
        const double lhs = a.set_union(b).measure() + a.set_intersection(b).measure();
        const double rhs = a.measure() + b.measure();
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("complement and difference behave like set algebra") {
    boundary_set a({arc(0.0, pi)});
    CHECK(a.complement().measure() == doctest::Approx(pi).epsilon(1e-14));
    CHECK(a.set_difference(a).is_empty());
    CHECK(sets_equal(a.complement().complement(), a));
    CHECK(boundary_set::full_circle().complement().is_empty());
}

TEST_CASE("regular points: same arcs, open membership, same measure") {
    boundary_set a({arc(0.0, pi)});
    boundary_set reg = a.regular_points();
    CHECK(reg.measure() == a.measure());
    CHECK(a.contains(0.0));
    CHECK(!reg.contains(0.0));
    CHECK(!reg.contains(pi));
    CHECK(reg.contains(pi / 2));

    CHECK(boundary_set::full_circle().regular_points().contains(1.0));
    CHECK(boundary_set().regular_points().is_empty());
}

TEST_CASE("stolz region membership") {
    stolz_region s1(0.0, pi / 4);
    CHECK(s1.contains(cplx(0.9, 0.0)));
    CHECK(s1.contains(cplx(0.0, 0.0)));

    stolz_region s2(0.0, pi / 6);
    CHECK(!s2.contains(cplx(0.9, 0.09))); // |arg(0.1 - 0.09i)| ~ 0.733 > pi/6
    CHECK(!s2.contains(cplx(2.0, 0.0)));  // outside the disc

    CHECK_THROWS_AS(stolz_region(0.0, 2.0), std::invalid_argument);
}

TEST_CASE("stolz monotonicity in the opening") {
    sample_rng rng(45);
    stolz_region narrow(1.0, 0.3), wide(1.0, 1.2);
    for (int i = 0; i < 5000; ++i) {
        const cplx z = rng.in_disc();
        if (narrow.contains(z)) CHECK(wide.contains(z));
    }
}

TEST_CASE("stolz region accumulates at its vertex") {
    stolz_region s(pi / 3, pi / 4);
    for (double eps : {1e-2, 1e-5, 1e-9})
        CHECK(s.contains((1.0 - eps) * unit(pi / 3)));
}

TEST_CASE("approach path: radial bisector with geometric distances") {
    approach_path p = make_approach_path(0.0, pi / 4, 3, 0.5, 0.5);
    REQUIRE(p.points.size() == 3);
    CHECK(p.points[0].real() == doctest::Approx(0.5));
    CHECK(p.points[1].real() == doctest::Approx(0.75));
    CHECK(p.points[2].real() == doctest::Approx(0.875));
    for (const auto& z : p.points) CHECK(z.imag() == 0.0);

    stolz_region s(0.0, pi / 4);
    for (const auto& z : p.points) CHECK(s.contains(z));

    // geometric distances with ratio q
    const cplx zeta = p.vertex_point();
    for (std::size_t k = 0; k + 1 < p.points.size(); ++k) {
        const double dk = std::abs(p.points[k] - zeta);
        const double dk1 = std::abs(p.points[k + 1] - zeta);
        CHECK(dk1 / dk == doctest::Approx(0.5).epsilon(1e-12));
    }

    CHECK_THROWS_AS(make_approach_path(0.0, pi / 4, 3, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(make_approach_path(0.0, pi / 4, 2, 0.5), std::invalid_argument);
}

TEST_CASE("approach path points always pass the stolz test") {
    sample_rng rng(46);
    for (int trial = 0; trial < 50; ++trial) {
        const double vertex = rng.uniform(0.0, two_pi);
        const double alpha = rng.uniform(0.1, 1.4);
        const double q = rng.uniform(0.2, 0.9);
        approach_path p = make_approach_path(vertex, alpha, 10, q, 0.3);
        stolz_region s(vertex, alpha);
        for (const auto& z : p.points) CHECK(s.contains(z));
    }
}
