#pragma once

#include <string>
#include <vector>

#include "ballbody/disk_polygon.hpp"
#include "ballbody/geom.hpp"

namespace ballbody {

DiskPolygon reflect(const DiskPolygon& body, const ReflectionAxis& axis,
                    const ToleranceConfig& tol = default_tolerances());

// Minkowski symmetral M_u K = (K + R_u K) / 2, held exactly through its
// piecewise support function. `profile` is a uniform sampling for export;
// area and mean width come from the closed-form piece integrals.
struct MinkowskiSymmetral {
    SupportPieces pieces;
    SupportProfile profile;
    double area = 0.0;
    double mean_width = 0.0;
};

MinkowskiSymmetral minkowski_symmetral(const DiskPolygon& body, Vec2 direction, int grid = 0,
                                       const ToleranceConfig& tol = default_tolerances());

/* Steiner symmetral, represented by sampled boundary graphs. Everything is
 * stored in the rotated frame where the symmetrization direction is the
 * second coordinate axis: a point (x, y) here corresponds to
 * x * axis_perp + y * axis in the original frame, with
 * axis_perp = (axis.y, -axis.x).
 *
 * The averaged fiber halfwidth (upper = -lower) is not a circular arc, so no
 * disk-polygon representation exists; instead each sample records which
 * defining circle was active on the top and bottom of the original body, and
 * curvature is later evaluated from those circles in closed form. The two
 * endpoint samples are pinned to halfwidth zero (the symmetral has no
 * vertical boundary segments); fiber_hi/fiber_lo keep the raw envelope
 * values there. */
struct EnvelopeBody {
    Vec2 axis{0.0, 1.0};
    double lo = 0.0;  // projection interval in the rotated frame
    double hi = 0.0;
    std::vector<double> xs;
    std::vector<double> upper;
    std::vector<double> lower;
    std::vector<int> piece_upper;  // index into circles, -1 when unknown
    std::vector<int> piece_lower;
    std::vector<double> fiber_hi;  // original fiber [L(x), U(x)] before recentring
    std::vector<double> fiber_lo;
    std::vector<Vec2> circles;  // rotated-frame arc centers; empty for hand-built envelopes

    double spacing() const { return xs.size() > 1 ? xs[1] - xs[0] : 0.0; }
};

constexpr int kEnvelopeGridDefault = 2048;

EnvelopeBody steiner_symmetral(const DiskPolygon& body, Vec2 direction,
                               int grid = kEnvelopeGridDefault,
                               const ToleranceConfig& tol = default_tolerances());

// map a rotated-frame envelope point back to the original frame
Vec2 envelope_to_world(const EnvelopeBody& env, Vec2 rotated);

// boundary samples of the envelope in the original frame (top chain then
// bottom chain, shared endpoints emitted once)
std::vector<Vec2> envelope_boundary(const EnvelopeBody& env);

// curvature of the upper boundary graph, skipping a 3-sample margin around
// active-piece changes and the interval endpoints
struct CurvatureProfile {
    std::vector<double> xs;
    std::vector<double> kappas;
    std::vector<double> skipped_xs;  // samples dropped for ambiguous active piece
};

CurvatureProfile curvature_profile(const EnvelopeBody& env,
                                   const ToleranceConfig& tol = default_tolerances());

struct SymmetralVerdict {
    double min_curvature = 0.0;
    double hausdorff_to_chull = 0.0;
    bool endpoint_support_ok = false;
    bool pass = false;
};

SymmetralVerdict verify_in_S2(const EnvelopeBody& env,
                              const ToleranceConfig& tol = default_tolerances());

struct DualVolumePair {
    double before = 0.0;
    double after = 0.0;
};

DualVolumePair steiner_dual_volume_check(const DiskPolygon& body, Vec2 direction,
                                         const ToleranceConfig& tol = default_tolerances());

std::string envelope_to_csv(const EnvelopeBody& env);
std::string verdict_to_json(const SymmetralVerdict& v);

}  // namespace ballbody
