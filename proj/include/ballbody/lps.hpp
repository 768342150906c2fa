#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ballbody/disk_polygon.hpp"
#include "ballbody/geom.hpp"

namespace ballbody {

/* Family of planar point trajectories A_t = {x_i + t a_i v} studied through
 * the bodies L_t = chull(A_t).  Points and velocities stay index-aligned, so
 * duplicates are allowed here (unlike PointSet). */
struct LinearParameterSystem {
    std::vector<Vec2> points;
    std::vector<double> velocities;
    Vec2 direction{1.0, 0.0};  // unit
};

// validates sizes and normalizes the direction
LinearParameterSystem make_system(std::vector<Vec2> points, std::vector<double> velocities,
                                  Vec2 direction);

// parse {"points": [[x,y],...], "velocities": [...], "direction": [vx,vy]}
LinearParameterSystem parse_system_json(const std::string& text);
std::string system_to_json(const LinearParameterSystem& sys);

PointSet points_at(const LinearParameterSystem& sys, double t);

double outradius_at(const LinearParameterSystem& sys, double t);

// c-hull of the displaced points; out-radius beyond 1 means the hull is the
// whole plane and comes back as nullopt
std::optional<DiskPolygon> body_at(const LinearParameterSystem& sys, double t,
                                   const ToleranceConfig& tol = default_tolerances());

struct FeasibilityInterval {
    double t_min = 0.0;
    double t_max = 0.0;
    bool unbounded = false;  // constant velocities: the trajectory translates rigidly
};

/* Locates the parameter interval where the hull is a proper body.  The
 * out-radius is convex in t, so a ternary search finds a feasible seed and a
 * bisection pins each endpoint of {Outrad = 1} to eps_geom. */
FeasibilityInterval feasibility_interval(const LinearParameterSystem& sys,
                                         const ToleranceConfig& tol = default_tolerances());

struct VolumeTrace {
    std::vector<double> ts;       // strictly increasing
    std::vector<double> values;   // +inf marks an infeasible hull
    std::vector<std::uint8_t> feasible;
    std::string label;            // volume | dual_volume | dual_volume_root | outradius
};

std::vector<double> uniform_grid(double a, double b, int n = 201);

// 201 points across the feasibility interval (clipped to [-1,1] when unbounded)
std::vector<double> default_trace_grid(const LinearParameterSystem& sys,
                                       const ToleranceConfig& tol = default_tolerances());

VolumeTrace volume_trace(const LinearParameterSystem& sys, const std::vector<double>& t_grid,
                         const ToleranceConfig& tol = default_tolerances());

// areas of the duals A_t^c (equal to L_t^c) and their square roots
std::pair<VolumeTrace, VolumeTrace> dual_volume_trace(
    const LinearParameterSystem& sys, const std::vector<double>& t_grid,
    const ToleranceConfig& tol = default_tolerances());

VolumeTrace outradius_trace(const LinearParameterSystem& sys, const std::vector<double>& t_grid);

struct ConvexityVerdict {
    std::string label;
    bool concave_sense = false;  // which shape was tested
    bool holds = false;
    double worst_violation = 0.0;  // most negative slack, as a magnitude; 0 if clean
    double t_at_worst = 0.0;
};

/* Discrete convexity (or concavity) of a trace: every interior finite sample
 * must lie on or below (above) the chord of its neighbours, with slack
 * tol = 1e-7 * max(1, largest finite value) unless overridden (tol >= 0). */
ConvexityVerdict convexity_verdict(const VolumeTrace& trace, bool concave = false,
                                   double tol = -1.0);

std::string verdict_json(const ConvexityVerdict& v);

// CSV rows t,value,label,feasible for any number of traces
std::string traces_to_csv(const std::vector<VolumeTrace>& traces);

/* Steiner symmetrization realized as a linear parameter system: both fiber
 * endpoints of K over a projection grid, each moving with velocity
 * -(lower+upper)/2 along u, so t=0 gives K, t=1 the symmetral, t=2 the
 * reflection. */
LinearParameterSystem steiner_system_from_body(const DiskPolygon& K, Vec2 u, int samples,
                                               const ToleranceConfig& tol = default_tolerances());

/* The 3D obstruction, recorded as a logical consequence of the curvature
 * witness: the symmetral of the standard lens leaves the ball-body class, so
 * its c-hull is strictly larger and the volume trace of the associated system
 * cannot be convex.  pass means the witness was reproduced. */
std::string steiner3d_failure_verdict_json();

}  // namespace ballbody
