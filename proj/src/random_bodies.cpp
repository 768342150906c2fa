#include "ballbody/random_bodies.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ballbody {

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream) {
    return std::mt19937_64(mix_seed(seed, stream));
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_in(std::mt19937_64& rng, double a, double b) {
    return a + (b - a) * uniform01(rng);
}

Vec2 random_direction(std::mt19937_64& rng) {
    double th = uniform_in(rng, 0.0, 2.0 * std::numbers::pi);
    return {std::cos(th), std::sin(th)};
}

Vec2 random_point_in_disk(std::mt19937_64& rng, double radius) {
    double r = radius * std::sqrt(uniform01(rng));
    Vec2 u = random_direction(rng);
    return r * u;
}

PointSet random_point_set(std::uint64_t seed, int max_points, double radius) {
    if (max_points < 2) throw std::invalid_argument("random point set needs max_points >= 2");
    auto rng = seeded_engine(seed, 0x9e3779b97f4a7c15ULL);
    int m = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_points - 1));
    std::vector<Vec2> pts;
    pts.reserve(m);
    for (int i = 0; i < m; ++i) pts.push_back(random_point_in_disk(rng, radius));
    return PointSet::make(std::move(pts));
}

DiskPolygon random_disk_polygon(std::uint64_t seed, int max_points, double radius) {
    for (std::uint64_t bump = 0; bump < 16; ++bump) {
        PointSet A = random_point_set(mix_seed(seed, bump), max_points, radius);
        if (A.pts.size() >= 2) {
            DiskPolygon K = chull(A);
            if (K.kind == BodyClass::Proper) return K;
        }
    }
    throw std::runtime_error("random disk polygon generation kept degenerating");
}

LinearParameterSystem random_system(std::uint64_t seed) {
    auto rng = seeded_engine(seed, 0x7f4a7c159e3779b9ULL);
    int m = 2 + static_cast<int>(rng() % 5);
    std::vector<Vec2> pts;
    std::vector<double> vel;
    for (int i = 0; i < m; ++i) {
        pts.push_back(random_point_in_disk(rng, 0.45));
        vel.push_back(uniform_in(rng, -1.0, 1.0));
    }
    return make_system(std::move(pts), std::move(vel), random_direction(rng));
}

}  // namespace ballbody
