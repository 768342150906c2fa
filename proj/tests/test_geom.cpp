#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "ballbody/geom.hpp"

using namespace ballbody;

namespace {
constexpr double pi = 3.14159265358979323846;
}

TEST_CASE("circle intersection basic configurations") {
    // unit circles around (0,0) and (1,0) meet at (1/2, +-sqrt(3)/2)
    auto pts = circle_circle_intersection({0, 0}, {1, 0}, 1.0);
    REQUIRE(pts.size() == 2);
    // first point lies left of the directed center line
    CHECK(pts[0].x == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(pts[0].y == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-12));
    CHECK(pts[1].y == doctest::Approx(-std::sqrt(3.0) / 2).epsilon(1e-12));

    SUBCASE("tangency snaps to a single midpoint") {
        auto t = circle_circle_intersection({0, 0}, {2.0 + 1e-12, 0}, 1.0);
        REQUIRE(t.size() == 1);
        CHECK(t[0].x == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(std::fabs(t[0].y) < 1e-6);
    }
    SUBCASE("disjoint circles") {
        CHECK(circle_circle_intersection({0, 0}, {2.5, 0}, 1.0).empty());
    }
    SUBCASE("coincident centers are rejected") {
        CHECK_THROWS_AS(circle_circle_intersection({0.3, 0.3}, {0.3, 0.3}, 1.0),
                        std::invalid_argument);
    }
}

TEST_CASE("smallest enclosing ball") {
    SUBCASE("two points") {
        Ball2 b = smallest_enclosing_ball({{-1, 0}, {1, 0}});
        CHECK(b.center.x == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(b.radius == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("equilateral triangle needs all three") {
        double r = 2.0 / std::sqrt(3.0);  // circumradius of side-2 triangle
        Ball2 b = smallest_enclosing_ball({{-1, 0}, {1, 0}, {0, std::sqrt(3.0)}});
        CHECK(b.radius == doctest::Approx(r).epsilon(1e-12));
        CHECK(b.center.y == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-10));
    }
    SUBCASE("interior points are irrelevant") {
        Ball2 a = smallest_enclosing_ball({{-1, 0}, {1, 0}});
        Ball2 b = smallest_enclosing_ball({{-1, 0}, {1, 0}, {0.1, 0.05}, {-0.2, -0.1}});
        CHECK(b.radius == doctest::Approx(a.radius).epsilon(1e-12));
    }
    SUBCASE("obtuse triangle: diameter pair wins") {
        Ball2 b = smallest_enclosing_ball({{-1, 0}, {1, 0}, {0.5, 0.1}});
        CHECK(b.radius == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("all inputs end up inside") {
        std::mt19937_64 rng(42);
        std::vector<Vec2> pts;
        for (int i = 0; i < 60; ++i) {
            double x = (rng() >> 11) * 0x1.0p-53, y = (rng() >> 11) * 0x1.0p-53;
            pts.push_back({2 * x - 1, 2 * y - 1});
        }
        Ball2 b = smallest_enclosing_ball(pts);
        for (Vec2 p : pts) CHECK(dist(p, b.center) <= b.radius + 1e-9);
    }
    SUBCASE("empty input is rejected") {
        CHECK_THROWS_AS(smallest_enclosing_ball({}), std::invalid_argument);
    }
}

TEST_CASE("adaptive quadrature") {
    double s = integrate([](double t) { return std::sin(t); }, 0.0, pi, 1e-12);
    CHECK(s == doctest::Approx(2.0).epsilon(1e-11));

    // sqrt endpoint singularity: d/dt asin, integrable but infinite at the ends
    double v = integrate([](double t) { return 1.0 / std::sqrt(1.0 - t * t); }, 0.0, 1.0,
                         1e-10, EndpointRule::SqrtSingularity);
    CHECK(v == doctest::Approx(pi / 2).epsilon(1e-9));

    CHECK_THROWS_AS(
        integrate([](double t) { return std::log(t - 0.5); }, 0.0, 1.0, 1e-10),
        std::runtime_error);
}

TEST_CASE("unit ball volumes") {
    CHECK(unit_ball_volume(0) == doctest::Approx(1.0));
    CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
    CHECK(unit_ball_volume(2) == doctest::Approx(pi).epsilon(1e-14));
    CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * pi / 3).epsilon(1e-14));
    // recurrence kappa_n = kappa_{n-1} * 2*pi/n holds two dimensions apart
    for (int n = 2; n <= 8; ++n)
        CHECK(unit_ball_volume(n) ==
              doctest::Approx(unit_ball_volume(n - 2) * 2.0 * pi / n).epsilon(1e-13));
}

TEST_CASE("reflections") {
    ReflectionAxis x_axis{{0.0, 1.0}, 0.0};
    Vec2 p = reflect_point({0.3, 0.7}, x_axis);
    CHECK(p.x == doctest::Approx(0.3));
    CHECK(p.y == doctest::Approx(-0.7));

    // reflecting twice is the identity, also for a shifted diagonal axis
    ReflectionAxis diag{normalized({1.0, 1.0}), 0.25};
    Vec2 q{0.1, -0.9};
    Vec2 qq = reflect_point(reflect_point(q, diag), diag);
    CHECK(dist(q, qq) < 1e-14);

    // points on the axis stay fixed
    Vec2 on_axis = 0.25 * diag.direction;
    CHECK(dist(reflect_point(on_axis, diag), on_axis) < 1e-14);
}

TEST_CASE("angles and dedup") {
    CHECK(wrap_angle(3 * pi) == doctest::Approx(pi));
    CHECK(wrap_angle(-pi) == doctest::Approx(pi));  // the branch point maps up
    CHECK(wrap_angle(0.3) == doctest::Approx(0.3));

    auto d = dedup_points({{0, 0}, {1e-12, 0}, {1, 1}, {1, 1 + 1e-12}, {2, 2}}, 1e-9);
    CHECK(d.size() == 3);
}

TEST_CASE("seed mixing is deterministic and spreads") {
    CHECK(mix_seed(1, 0) == mix_seed(1, 0));
    CHECK(mix_seed(1, 0) != mix_seed(1, 1));
    CHECK(mix_seed(1, 0) != mix_seed(2, 0));
}

TEST_CASE("tolerance validation") {
    ToleranceConfig bad;
    bad.eps_geom = -1.0;
    CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    ToleranceConfig coarse;
    coarse.grid_default = 1;
    CHECK_THROWS_AS(validate(coarse), std::invalid_argument);
    CHECK_NOTHROW(validate(default_tolerances()));
}
