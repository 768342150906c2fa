#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ballbody/disk_polygon.hpp"
#include "ballbody/random_bodies.hpp"
#include "ballbody/symmetry.hpp"

using namespace ballbody;

namespace {
constexpr double pi = 3.14159265358979323846;
}

TEST_CASE("reflecting a body") {
    DiskPolygon K = chull(random_point_set(12));
    ReflectionAxis axis{normalized({0.3, 1.0}), 0.1};
    DiskPolygon R = reflect(K, axis);
    CHECK(hausdorff(K, reflect(R, axis)) < 1e-9);
    CHECK(area(R) == doctest::Approx(area(K)).epsilon(1e-12));
}

TEST_CASE("Minkowski symmetral keeps mean width and gains volume") {
    for (std::uint64_t seed : {4u, 29u, 333u}) {
        DiskPolygon K = chull(random_point_set(seed));
        auto rng = seeded_engine(seed, 1);
        Vec2 u = random_direction(rng);
        MinkowskiSymmetral M = minkowski_symmetral(K, u);
        CHECK(M.mean_width == doctest::Approx(mean_width(K)).epsilon(1e-12));
        CHECK(M.area >= area(K) - 1e-12);
        // the result is symmetric under the reflection
        ReflectionAxis axis{u, 0.0};
        for (std::size_t i = 0; i < M.profile.angles.size(); i += 7) {
            double th = M.profile.angles[i];
            Vec2 v = unit_vec(th);
            Vec2 rv = reflect_point(v, axis);  // linear reflection of the direction
            CHECK(M.pieces.value(th) ==
                  doctest::Approx(M.pieces.value(std::atan2(rv.y, rv.x))).epsilon(1e-10));
        }
    }
}

TEST_CASE("Minkowski symmetral of a symmetric body is the body") {
    // a lens across the axis direction is invariant
    DiskPolygon lens = intersect_unit_disks(PointSet::make({{0, -0.4}, {0, 0.4}}));
    MinkowskiSymmetral M = minkowski_symmetral(lens, {0, 1});
    SupportPieces sp = support_pieces(lens);
    for (int i = 0; i < 157; ++i) {
        double th = 2 * pi * i / 157.0;
        CHECK(M.pieces.value(th) == doctest::Approx(sp.value(th)).epsilon(1e-12));
    }
    CHECK(M.area == doctest::Approx(area(lens)).epsilon(1e-12));
}

TEST_CASE("Steiner symmetral of a symmetric lens is itself") {
    DiskPolygon lens = intersect_unit_disks(PointSet::make({{0, -0.4}, {0, 0.4}}));
    EnvelopeBody env = steiner_symmetral(lens, {0, 1});
    // upper graph must match the original upper boundary sqrt(1-x^2) - 0.4
    for (std::size_t i = 0; i < env.xs.size(); i += 97) {
        double x = env.xs[i];
        double expect = std::sqrt(std::max(0.0, 1.0 - x * x)) - 0.4;
        if (expect < 0) continue;  // pinned endpoints
        CHECK(env.upper[i] == doctest::Approx(expect).epsilon(1e-7));
        CHECK(env.lower[i] == doctest::Approx(-expect).epsilon(1e-7));
    }
}

TEST_CASE("Steiner symmetral curvature matches a finite-difference oracle") {
    /* Lens with upper arc around (0, -0.2) and lower arc around (0.1, 0.3).
     * The averaged upper graph is
     *   S(x) = (sqrt(1-x^2) + sqrt(1-(x-0.1)^2) - 0.5) / 2
     * whose curvature at x is computable by central differences. */
    DiskPolygon lens = intersect_unit_disks(PointSet::make({{0, -0.2}, {0.1, 0.3}}));
    REQUIRE(lens.kind == BodyClass::Proper);
    EnvelopeBody env = steiner_symmetral(lens, {0, 1}, 4096);
    CurvatureProfile cp = curvature_profile(env);
    REQUIRE(!cp.xs.empty());

    auto S = [](double x) {
        return 0.5 * (std::sqrt(1 - x * x) + std::sqrt(1 - (x - 0.1) * (x - 0.1)) - 0.5);
    };
    auto fd_kappa = [&](double x) {
        double h = 1e-4;
        double d1 = (S(x + h) - S(x - h)) / (2 * h);
        double d2 = (S(x + h) - 2 * S(x) + S(x - h)) / (h * h);
        return std::fabs(d2) / std::pow(1 + d1 * d1, 1.5);
    };
    int tested = 0;
    for (std::size_t i = 0; i < cp.xs.size(); i += 173) {
        if (std::fabs(cp.xs[i]) > 0.6) continue;  // keep the FD step well inside
        CHECK(cp.kappas[i] == doctest::Approx(fd_kappa(cp.xs[i])).epsilon(1e-5));
        ++tested;
    }
    CHECK(tested > 3);
    // both arcs have unit radius, so the average is strictly curved above 1
    SymmetralVerdict v = verify_in_S2(env);
    CHECK(v.pass);
    CHECK(v.min_curvature >= 1.0);
}

TEST_CASE("Steiner symmetral preserves area") {
    DiskPolygon K = chull(random_point_set(77));
    auto rng = seeded_engine(77, 2);
    Vec2 u = random_direction(rng);
    // trapezoid area of the envelope at a fine grid vs the exact body area
    EnvelopeBody env = steiner_symmetral(K, u, 1 << 20);
    double a = 0.0;
    for (std::size_t i = 0; i + 1 < env.xs.size(); ++i) {
        double w0 = env.upper[i] - env.lower[i];
        double w1 = env.upper[i + 1] - env.lower[i + 1];
        a += 0.5 * (w0 + w1) * (env.xs[i + 1] - env.xs[i]);
    }
    CHECK(a == doctest::Approx(area(K)).epsilon(2e-6));
}

TEST_CASE("Steiner symmetral sits inside the Minkowski symmetral") {
    for (std::uint64_t seed : {6u, 91u}) {
        DiskPolygon K = chull(random_point_set(seed));
        auto rng = seeded_engine(seed, 3);
        Vec2 u = random_direction(rng);
        EnvelopeBody env = steiner_symmetral(K, u);
        MinkowskiSymmetral M = minkowski_symmetral(K, u);
        double worst = -1e9;
        for (const Vec2& p : envelope_boundary(env))
            worst = std::max(worst, M.pieces.max_support_violation(p));
        CHECK(worst <= 1e-9);
    }
}

TEST_CASE("symmetral verdict holds on seeded bodies") {
    for (std::uint64_t seed : {1u, 2u, 3u, 500u}) {
        DiskPolygon K = random_disk_polygon(seed);
        auto rng = seeded_engine(seed, 4);
        Vec2 u = random_direction(rng);
        EnvelopeBody env = steiner_symmetral(K, u);
        SymmetralVerdict v = verify_in_S2(env);
        CHECK(v.pass);
        CHECK(v.min_curvature >= 1.0 - 1e-6);
        CHECK(v.hausdorff_to_chull <= 5.0 * env.spacing());
    }
}

TEST_CASE("dual volume never drops under Steiner symmetrization") {
    for (std::uint64_t seed : {10u, 20u, 30u}) {
        DiskPolygon K = random_disk_polygon(seed);
        auto rng = seeded_engine(seed, 5);
        DualVolumePair p = steiner_dual_volume_check(K, random_direction(rng));
        CHECK(p.after >= p.before - 1e-6);
    }
    SUBCASE("already symmetric: the dual volume is unchanged") {
        // both sides approximate the same dual from different boundary
        // samplings, so agreement is limited by the sampling bias
        DiskPolygon lens = intersect_unit_disks(PointSet::make({{0, -0.3}, {0, 0.3}}));
        DualVolumePair p = steiner_dual_volume_check(lens, {0, 1});
        CHECK(p.after == doctest::Approx(p.before).epsilon(1e-4));
    }
    SUBCASE("degenerate bodies are rejected") {
        DiskPolygon pt = chull(PointSet::make({{0.1, 0.1}}));
        CHECK_THROWS_AS(steiner_dual_volume_check(pt, {0, 1}), std::invalid_argument);
    }
}

TEST_CASE("envelope frame round trip") {
    DiskPolygon K = chull(random_point_set(55));
    Vec2 u = normalized({1.0, 2.0});
    EnvelopeBody env = steiner_symmetral(K, u);
    // rotated-frame samples map to world points whose u-projection is the height
    std::size_t mid = env.xs.size() / 2;
    Vec2 w = envelope_to_world(env, {env.xs[mid], env.upper[mid]});
    CHECK(dot(w, u) == doctest::Approx(env.upper[mid]).epsilon(1e-12));
    Vec2 u_perp{u.y, -u.x};
    CHECK(dot(w, u_perp) == doctest::Approx(env.xs[mid]).epsilon(1e-12));
}
