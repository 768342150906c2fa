#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace ballbody {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 a) { return dot(a, a); }
double norm(Vec2 a);
double dist(Vec2 a, Vec2 b);
// counterclockwise quarter turn
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }
Vec2 unit_vec(double angle);
Vec2 normalized(Vec2 a);

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
double norm(Vec3 a);

struct Ball2 {
    Vec2 center;
    double radius = 1.0;
};

/* Shared numeric knobs.  eps_geom is the exact-kernel snapping tolerance,
 * eps_quad the quadrature target, grid_default the boundary sampling density
 * used by Hausdorff distances and similar sampled checks. */
struct ToleranceConfig {
    double eps_geom = 1e-9;
    double eps_quad = 1e-10;
    int grid_default = 256;
};

const ToleranceConfig& default_tolerances();
void validate(const ToleranceConfig& tol);

// affine reflection hyperplane {x : <x, direction> = offset}
struct ReflectionAxis {
    Vec2 direction{0.0, 1.0};  // unit vector
    double offset = 0.0;
};

Vec2 reflect_point(Vec2 p, const ReflectionAxis& axis);

// Intersection points of two circles of common radius r.  Zero points when the
// circles are too far apart, one at (snapped) tangency booked as the midpoint
// configuration, two otherwise; with two points the first lies to the left of
// the directed line c1 -> c2.  Coincident centers are rejected.
std::vector<Vec2> circle_circle_intersection(Vec2 c1, Vec2 c2, double r,
                                             const ToleranceConfig& tol = default_tolerances());

// Exact minimal enclosing ball (Welzl's randomized incremental algorithm with
// a deterministic shuffle; at most 3 support points in the plane).
Ball2 smallest_enclosing_ball(const std::vector<Vec2>& points,
                              std::uint64_t shuffle_seed = 0x8ba92fa0d3b27c11ULL);

enum class EndpointRule {
    Plain,
    // substitute t = m + r*sin(theta) so that sqrt-type endpoint
    // singularities integrate smoothly
    SqrtSingularity,
};

// Adaptive Gauss-Kronrod quadrature of f over [a, b] to absolute accuracy tol.
// Throws if the integrand produces a non-finite value (the message names the
// abscissa) or if subdivision fails to converge.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol, EndpointRule rule = EndpointRule::Plain);

// volume of the n-dimensional unit ball
double unit_ball_volume(int n);

// wrap an angle into (-pi, pi]
double wrap_angle(double a);

// Remove duplicates within tolerance eps (one representative per cluster).
std::vector<Vec2> dedup_points(std::vector<Vec2> pts, double eps);

// splitmix64; used to derive per-case seeds from a master seed
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace ballbody
