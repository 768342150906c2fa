#pragma once

#include <string>
#include <vector>

#include "ballbody/geom.hpp"

namespace ballbody {

// Nonempty planar point set with duplicates removed.
struct PointSet {
    std::vector<Vec2> pts;

    static PointSet make(std::vector<Vec2> pts,
                         const ToleranceConfig& tol = default_tolerances());
};

enum class BodyClass { Empty, SinglePoint, FullDisk, Proper };

/* Intersection of finitely many unit disks, stored canonically: only active
 * arcs are kept, vertices run counterclockwise starting from the
 * lexicographically smallest one, and arc i joins vertices[i] to
 * vertices[i+1 mod m] on the unit circle around arc_centers[i].  The
 * degenerate classes carry their datum in `point` (single point location or
 * full-disk center). */
struct DiskPolygon {
    BodyClass kind = BodyClass::Empty;
    Vec2 point;
    std::vector<Vec2> vertices;
    std::vector<Vec2> arc_centers;
};

DiskPolygon intersect_unit_disks(const PointSet& centers,
                                 const ToleranceConfig& tol = default_tolerances());

// c-dual: the intersection of all unit disks centered at the given points
DiskPolygon cdual(const PointSet& points,
                  const ToleranceConfig& tol = default_tolerances());

// c-hull (dual of the dual).  Throws "c-hull is the whole plane" when the
// generators do not fit in any unit disk.
DiskPolygon chull(const PointSet& points,
                  const ToleranceConfig& tol = default_tolerances());

// Minimal generating set: the vertices of a proper body, the point of a
// single-point body.  Empty and full-disk bodies have none.
std::vector<Vec2> c_extremal(const DiskPolygon& body);

double area(const DiskPolygon& body);

bool contains(const DiskPolygon& body, Vec2 p,
              const ToleranceConfig& tol = default_tolerances());

// Euclidean distance from p to the body (0 inside).
double distance_to(const DiskPolygon& body, Vec2 p);

// support function value h(theta) = max over the body of <x, u(theta)>
double support(const DiskPolygon& body, double theta);

struct SupportProfile {
    std::vector<double> angles;  // uniform on [0, 2*pi)
    std::vector<double> values;
    std::vector<double> derivatives;
};

SupportProfile support_profile(const DiskPolygon& body, int grid);

// mean width with the normalized sphere measure (unit disk -> 1), exact
double mean_width(const DiskPolygon& body);

// symmetric Hausdorff distance via boundary sampling (grid points per arc)
double hausdorff(const DiskPolygon& a, const DiskPolygon& b, int grid = 0);

// boundary sample points: all vertices plus per_arc points along each arc
std::vector<Vec2> boundary_samples(const DiskPolygon& body, int per_arc);

std::string to_json(const DiskPolygon& body);

void validate(const DiskPolygon& body, const ToleranceConfig& tol = default_tolerances());

/* Piecewise description of a support function.  On each angular piece
 * [angles[k], angles[k+1]] the value is offset[k] + <anchor[k], u(theta)>:
 * arcs contribute offset 1 with the arc center as anchor, vertex normal cones
 * contribute offset 0 with the vertex.  Pieces cover one full turn.  Averaging
 * two such descriptions stays in the class, which makes Minkowski means and
 * the Cauchy area formula exact. */
struct SupportPieces {
    std::vector<double> angles;   // size m+1, increasing, angles[m] = angles[0] + 2*pi
    std::vector<double> offsets;  // size m
    std::vector<Vec2> anchors;    // size m

    double value(double theta) const;
    double derivative(double theta) const;
    Vec2 boundary_point(double theta) const;
    std::size_t piece_index(double theta) const;
    // exact max over theta of <p, u(theta)> - h(theta); <= 0 iff p lies in the body
    double max_support_violation(Vec2 p) const;
};

SupportPieces support_pieces(const DiskPolygon& body);
SupportPieces average(const SupportPieces& a, const SupportPieces& b);
// integral of h over a full turn
double integral_h(const SupportPieces& sp);
// Cauchy area: (1/2) * integral of (h^2 - h'^2)
double cauchy_area(const SupportPieces& sp);

}  // namespace ballbody
