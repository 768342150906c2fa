#pragma once

#include <cstdint>
#include <random>

#include "ballbody/disk_polygon.hpp"
#include "ballbody/lps.hpp"

namespace ballbody {

/* Seeded generators for the property suites.  All draws go through
 * mt19937_64 with hand-rolled uniform mappings (std distributions are not
 * bit-stable across standard libraries), so a seed pins every byte of a
 * report. */

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream = 0);

double uniform01(std::mt19937_64& rng);
double uniform_in(std::mt19937_64& rng, double a, double b);
Vec2 random_direction(std::mt19937_64& rng);
Vec2 random_point_in_disk(std::mt19937_64& rng, double radius);

// 2..max_points generators inside the disk of the given radius around 0
PointSet random_point_set(std::uint64_t seed, int max_points = 8, double radius = 0.45);

// c-hull of a random point set; always Proper for radius < 1
DiskPolygon random_disk_polygon(std::uint64_t seed, int max_points = 8, double radius = 0.45);

// 2..6 base points in the 0.45 disk, velocities in [-1,1], random unit direction
LinearParameterSystem random_system(std::uint64_t seed);

}  // namespace ballbody
