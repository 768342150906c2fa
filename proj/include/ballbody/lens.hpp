#pragma once

#include <array>
#include <string>
#include <vector>

#include "ballbody/geom.hpp"
#include "ballbody/reports.hpp"

namespace ballbody {

/* ---- lens volume in n dimensions ----------------------------------------
 * A lens is the intersection of two unit balls.  With 2d the distance
 * between its tips (so the defining centers sit at distance 2*sqrt(1-d^2)),
 * its volume is 2*kappa_{n-1}*F_n(d) where
 *   F_n(d) = int_0^d (sqrt(1-t^2) - sqrt(1-d^2))^{n-1} dt
 * and kappa_m is the unit-ball volume in dimension m. */

double lens_F(int n, double d, const ToleranceConfig& tol = default_tolerances());

// +infinity when d > 1 (no single ball contains both tips)
double lens_volume(int n, double d, const ToleranceConfig& tol = default_tolerances());

// tip half-distance <-> center half-distance; the relation is an involution
double lens_conjugate_halfdist(double h);

struct DerivativeCheck {
    double lhs = 0.0;  // central finite difference of F_n
    double rhs = 0.0;  // (n-1) * d * (1-d^2)^{-1/2} * F_{n-1}(d)
};

DerivativeCheck lens_volume_derivative_check(int n, double d,
                                             const ToleranceConfig& tol = default_tolerances());

// volume of the c-hull of two points (a lens with those tips)
double two_point_chull_volume(const std::vector<double>& x, const std::vector<double>& y,
                              const ToleranceConfig& tol = default_tolerances());

/* ---- sectional curvature machinery --------------------------------------
 * For a graph z = H(w) over a hyperplane, the normal curvature at (w, H(w))
 * in base direction e1 is |(Hess H)_11| / psi(<e1, grad>, orth part), with
 *   psi(s, t) = sqrt(1 + s^2 + t^2) * (1 + s^2). */

double psi(double s, double t);

double sectional_curvature(double hessian_11, Vec2 gradient);

/* ---- 3D lens with closed-form boundary patches --------------------------
 * Boundary graphs over the base plane: the ball around (base_plus, z_plus)
 * contributes f_u = z_plus + s and -f_d = z_plus - s with
 * s(w) = sqrt(1 - |w - base_plus|^2); the ball around (base_minus, z_minus)
 * contributes g_u and -g_d the same way.
 *
 * q_plus/q_minus cache 1 - |base|^2 in an exactly computed form: for very
 * flat lenses the centers sit within 1e-12 of the unit sphere and
 * recomputing 1 - |base|^2 from the coordinates would cancel away all the
 * precision that the curvature identities need. */
struct Lens3 {
    Vec2 base_plus;
    double z_plus = 0.0;
    Vec2 base_minus;
    double z_minus = 0.0;
    double q_plus = 1.0;
    double q_minus = 1.0;

    static Lens3 from_centers(Vec3 c_plus, Vec3 c_minus, bool allow_degenerate = false);

    // the explicit nonpreservation lens: centers +-(-0.2794, 0.2451, 0.36)
    static Lens3 counterexample();
};

// one spherical cap graph z = zc + orientation * sqrt(q(w))
struct SpherePatch {
    std::string name;
    Vec2 center;
    double zc = 0.0;
    double q0 = 1.0;         // q(w) = q0 + 2<w, center> - |w|^2
    double orientation = 1;  // +1 upper half, -1 lower half

    double q(Vec2 w) const;
    double value(Vec2 w) const;              // throws outside the open cap
    Vec2 gradient(Vec2 w) const;
    std::array<double, 3> hessian(Vec2 w) const;  // (h11, h12, h22)
};

struct LensPatches {
    SpherePatch f_upper;   // f_u
    SpherePatch f_lower;   // -f_d
    SpherePatch g_upper;   // g_u
    SpherePatch g_lower;   // -g_d
};

LensPatches lens_patches(const Lens3& lens);

enum class FiberClass { Outside, OneBall, Cross };

FiberClass fiber_classification(const Lens3& lens, Vec2 w,
                                const ToleranceConfig& tol = default_tolerances());

/* Sectional curvature of the Steiner symmetral (along the z axis) of the
 * lens at (w, h(w)) in base direction dir.  Requires a Cross fiber: both
 * averaged endpoints then come from different spheres and the averaged graph
 * has closed-form derivatives.  A OneBall fiber is governed by one sphere
 * (curvature exactly 1); callers may opt into that value instead of the
 * error. */
double steiner_fiber_curvature(const Lens3& lens, Vec2 w, Vec2 dir,
                               bool one_ball_returns_unit = false,
                               const ToleranceConfig& tol = default_tolerances());

struct CounterexampleReport {
    Lens3 lens;
    Vec2 w;
    double kappa = 0.0;
    bool violation_found = false;  // kappa < 1
    std::vector<QuantityCheck> quantities;
    bool pass = false;
};

// recompute every displayed quantity of the explicit 3D example (or of a
// perturbed center/base point, in which case no reference digits apply)
CounterexampleReport verify_counterexample();
CounterexampleReport verify_counterexample(Vec3 c0, Vec2 w);

std::string counterexample_report_json(const CounterexampleReport& rep);

/* psi midpoint-to-mean ratio R(t) for the family P0 = (2t, 0),
 * P1 = (0, 2t^k); computed from the closed form and cross-checked against
 * direct psi evaluation to 1e-10. */
double psi_gap(double t, double k);

struct ConstructedLens {
    Lens3 lens;
    std::vector<QuantityCheck> certificate;
    bool pass = false;
};

/* Lens whose lower boundary has gradient u and upper boundary gradient v at
 * the origin of the base plane (3D).  The finite-difference certificate
 * checks both gradients and that the origin fiber is a Cross fiber. */
ConstructedLens construct_lens_with_gradients(Vec2 u, Vec2 v,
                                              const ToleranceConfig& tol = default_tolerances());

struct FlatResult {
    Lens3 lens;
    double t = 0.0;
    double gap = 0.0;    // R(t)
    double kappa = 0.0;  // curvature of the symmetral at the base point
    std::vector<QuantityCheck> quantities;
    bool pass = false;
};

// lens whose Steiner symmetral has sectional curvature below epsilon at the
// base point; doubling search on t with kappa * R(t) = 1 as a checked identity
FlatResult flat_counterexample(double epsilon,
                               const ToleranceConfig& tol = default_tolerances());

std::string flat_report_json(const FlatResult& rep);

// active constraints at a boundary point of an intersection of unit balls
std::vector<Vec3> supporting_balls(const std::vector<Vec3>& centers, Vec3 p,
                                   const ToleranceConfig& tol = default_tolerances());

}  // namespace ballbody
