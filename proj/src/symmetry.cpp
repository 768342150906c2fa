#include "ballbody/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ballbody/reports.hpp"

namespace ballbody {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

Vec2 require_unit(Vec2 direction) {
    double n = norm(direction);
    if (!(n > 1e-12)) throw std::invalid_argument("symmetrization direction must be nonzero");
    return (1.0 / n) * direction;
}

// rotated frame: u becomes the second coordinate axis
Vec2 to_frame(Vec2 u, Vec2 p) { return {p.x * u.y - p.y * u.x, dot(p, u)}; }
Vec2 from_frame(Vec2 u, Vec2 q) { return q.x * Vec2{u.y, -u.x} + q.y * u; }

struct FiberEval {
    bool covered = false;  // every defining circle reaches this abscissa
    double U = inf;        // upper envelope min_c (c_y + s), lower max_c (c_y - s)
    double L = -inf;
    int iu = -1;
    int il = -1;
    double gap_u = inf;  // margin to the runner-up circle
    double gap_l = inf;
};

FiberEval eval_fiber(const std::vector<Vec2>& circles, double x) {
    FiberEval e;
    e.covered = true;
    double second_u = inf, second_l = -inf;
    for (std::size_t i = 0; i < circles.size(); ++i) {
        double t = x - circles[i].x;
        if (std::abs(t) > 1.0) {
            if (std::abs(t) > 1.0 + 1e-15) e.covered = false;
            t = std::clamp(t, -1.0, 1.0);
        }
        double s = std::sqrt(std::max(0.0, 1.0 - t * t));
        double up = circles[i].y + s;
        double lo = circles[i].y - s;
        if (up < e.U) {
            second_u = e.U;
            e.U = up;
            e.iu = static_cast<int>(i);
        } else {
            second_u = std::min(second_u, up);
        }
        if (lo > e.L) {
            second_l = e.L;
            e.L = lo;
            e.il = static_cast<int>(i);
        } else {
            second_l = std::max(second_l, lo);
        }
    }
    e.gap_u = second_u - e.U;
    e.gap_l = e.L - second_l;
    return e;
}

bool fiber_feasible(const std::vector<Vec2>& circles, double x) {
    FiberEval e = eval_fiber(circles, x);
    return e.covered && e.U >= e.L;
}

// one endpoint of {x : fiber nonempty}; `good` is feasible, `bad` is not
double bisect_edge(const std::vector<Vec2>& circles, double good, double bad, double eps) {
    for (int it = 0; it < 200 && std::abs(bad - good) > eps; ++it) {
        double mid = 0.5 * (good + bad);
        if (fiber_feasible(circles, mid))
            good = mid;
        else
            bad = mid;
    }
    return good;
}

double point_segment_distance(Vec2 q, Vec2 a, Vec2 b) {
    Vec2 ab = b - a;
    double len2 = norm2(ab);
    double t = len2 > 0.0 ? std::clamp(dot(q - a, ab) / len2, 0.0, 1.0) : 0.0;
    return dist(q, a + t * ab);
}

/* Distance from q (rotated frame) to the envelope region.  The boundary
 * chains have bounded slope away from the tips, so only segments within
 * `window` indices of q.x plus the two tip regions can be nearest — unless
 * the true distance already exceeds window*spacing, in which case the
 * returned overestimate still fails any few-spacings threshold. */
double region_distance(const EnvelopeBody& env, Vec2 q, int window) {
    const std::size_t n = env.xs.size();
    const double d = env.spacing();
    if (q.x >= env.lo && q.x <= env.hi && d > 0.0) {
        std::size_t k = std::min(n - 2, static_cast<std::size_t>(
                                            std::max(0.0, (q.x - env.lo) / d)));
        double w = (q.x - env.xs[k]) / d;
        double up = env.upper[k] + w * (env.upper[k + 1] - env.upper[k]);
        double lo = env.lower[k] + w * (env.lower[k + 1] - env.lower[k]);
        if (q.y >= lo - 1e-12 && q.y <= up + 1e-12) return 0.0;
    }
    double best = inf;
    auto scan = [&](std::size_t first, std::size_t last) {
        for (std::size_t j = first; j < last; ++j) {
            Vec2 a{env.xs[j], env.upper[j]}, b{env.xs[j + 1], env.upper[j + 1]};
            best = std::min(best, point_segment_distance(q, a, b));
            a = {env.xs[j], env.lower[j]};
            b = {env.xs[j + 1], env.lower[j + 1]};
            best = std::min(best, point_segment_distance(q, a, b));
        }
    };
    std::size_t kc = 0;
    if (d > 0.0)
        kc = static_cast<std::size_t>(
            std::clamp((q.x - env.lo) / d, 0.0, static_cast<double>(n - 1)));
    std::size_t w = static_cast<std::size_t>(window);
    scan(kc > w ? kc - w : 0, std::min(n - 1, kc + w));
    scan(0, std::min(n - 1, w));                    // left tip
    scan(n - 1 > w ? n - 1 - w : 0, n - 1);         // right tip
    return best;
}

}  // namespace

DiskPolygon reflect(const DiskPolygon& body, const ReflectionAxis& axis,
                    const ToleranceConfig& tol) {
    switch (body.kind) {
        case BodyClass::Empty: return body;
        case BodyClass::SinglePoint:
        case BodyClass::FullDisk: {
            DiskPolygon out = body;
            out.point = reflect_point(body.point, axis);
            return out;
        }
        case BodyClass::Proper: break;
    }
    // reflecting every defining disk reflects their intersection
    std::vector<Vec2> centers;
    centers.reserve(body.arc_centers.size());
    for (const Vec2& c : body.arc_centers) centers.push_back(reflect_point(c, axis));
    return intersect_unit_disks(PointSet::make(std::move(centers), tol), tol);
}

MinkowskiSymmetral minkowski_symmetral(const DiskPolygon& body, Vec2 direction, int grid,
                                       const ToleranceConfig& tol) {
    if (body.kind == BodyClass::Empty)
        throw std::invalid_argument("minkowski symmetral of empty body");
    Vec2 u = require_unit(direction);
    if (grid <= 0) grid = tol.grid_default;
    DiskPolygon mirrored = reflect(body, ReflectionAxis{u, 0.0}, tol);

    MinkowskiSymmetral out;
    out.pieces = average(support_pieces(body), support_pieces(mirrored));
    out.profile.angles.reserve(grid);
    out.profile.values.reserve(grid);
    out.profile.derivatives.reserve(grid);
    for (int i = 0; i < grid; ++i) {
        double theta = two_pi * i / grid;
        out.profile.angles.push_back(theta);
        out.profile.values.push_back(out.pieces.value(theta));
        out.profile.derivatives.push_back(out.pieces.derivative(theta));
    }
    out.area = cauchy_area(out.pieces);
    out.mean_width = integral_h(out.pieces) / two_pi;
    return out;
}

EnvelopeBody steiner_symmetral(const DiskPolygon& body, Vec2 direction, int grid,
                               const ToleranceConfig& tol) {
    if (body.kind == BodyClass::Empty || body.kind == BodyClass::SinglePoint)
        throw std::invalid_argument("degenerate symmetral");
    Vec2 u = require_unit(direction);
    if (grid < 8) throw std::invalid_argument("steiner_symmetral: grid too small");

    EnvelopeBody env;
    env.axis = u;
    double seed_x = 0.0;
    if (body.kind == BodyClass::FullDisk) {
        Vec2 c = to_frame(u, body.point);
        env.circles = {c};
        seed_x = c.x;
    } else {
        env.circles.reserve(body.arc_centers.size());
        for (const Vec2& c : body.arc_centers) env.circles.push_back(to_frame(u, c));
        Vec2 centroid{0.0, 0.0};
        for (const Vec2& v : body.vertices) centroid = centroid + to_frame(u, v);
        seed_x = centroid.x / static_cast<double>(body.vertices.size());
    }
    if (!fiber_feasible(env.circles, seed_x))
        throw std::runtime_error("steiner_symmetral: seed abscissa infeasible");

    double far_left = inf, far_right = -inf;
    for (const Vec2& c : env.circles) {
        far_left = std::min(far_left, c.x - 1.5);
        far_right = std::max(far_right, c.x + 1.5);
    }
    env.lo = bisect_edge(env.circles, seed_x, far_left, tol.eps_geom);
    env.hi = bisect_edge(env.circles, seed_x, far_right, tol.eps_geom);

    env.xs.resize(grid);
    env.upper.resize(grid);
    env.lower.resize(grid);
    env.piece_upper.resize(grid);
    env.piece_lower.resize(grid);
    env.fiber_hi.resize(grid);
    env.fiber_lo.resize(grid);
    for (int i = 0; i < grid; ++i) {
        double x = env.lo + (env.hi - env.lo) * i / (grid - 1);
        FiberEval e = eval_fiber(env.circles, x);
        double half = std::max(0.0, 0.5 * (e.U - e.L));
        // the fiber length vanishes at the tips; the 1e-9 bisection localizes
        // the root in x, so the value there is pinned to exactly zero
        if (i == 0 || i == grid - 1) half = 0.0;
        env.xs[i] = x;
        env.upper[i] = half;
        env.lower[i] = -half;
        env.piece_upper[i] = e.iu;
        env.piece_lower[i] = e.il;
        env.fiber_hi[i] = e.U;
        env.fiber_lo[i] = e.L;
    }
    return env;
}

Vec2 envelope_to_world(const EnvelopeBody& env, Vec2 rotated) {
    return from_frame(env.axis, rotated);
}

std::vector<Vec2> envelope_boundary(const EnvelopeBody& env) {
    const std::size_t n = env.xs.size();
    std::vector<Vec2> out;
    out.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(from_frame(env.axis, {env.xs[i], env.upper[i]}));
    for (std::size_t i = n - 1; i-- > 1;)
        out.push_back(from_frame(env.axis, {env.xs[i], env.lower[i]}));
    return out;
}

CurvatureProfile curvature_profile(const EnvelopeBody& env, const ToleranceConfig& tol) {
    const std::size_t n = env.xs.size();
    if (n < 8) throw std::invalid_argument("curvature_profile: envelope grid too small");
    const double d = env.spacing();
    CurvatureProfile prof;
    const bool analytic = !env.circles.empty();

    for (std::size_t i = 3; i + 3 < n; ++i) {
        double x = env.xs[i];
        double hp, hpp;
        if (analytic) {
            bool stable = true;
            for (std::size_t j = i - 3; j <= i + 3 && stable; ++j)
                stable = env.piece_upper[j] == env.piece_upper[i] &&
                         env.piece_lower[j] == env.piece_lower[i];
            if (!stable) continue;
            FiberEval e = eval_fiber(env.circles, x);
            if (e.gap_u < tol.eps_geom || e.gap_l < tol.eps_geom) {
                prof.skipped_xs.push_back(x);
                continue;
            }
            const Vec2& cu = env.circles[env.piece_upper[i]];
            const Vec2& cl = env.circles[env.piece_lower[i]];
            double tu = x - cu.x, tl = x - cl.x;
            double su = std::sqrt(std::max(1e-24, 1.0 - tu * tu));
            double sl = std::sqrt(std::max(1e-24, 1.0 - tl * tl));
            // h = (U - L)/2 with U, L graphs of unit-circle arcs
            hp = 0.5 * (-tu / su - tl / sl);
            hpp = 0.5 * (-1.0 / (su * su * su) - 1.0 / (sl * sl * sl));
        } else {
            hp = (env.upper[i + 1] - env.upper[i - 1]) / (2.0 * d);
            hpp = (env.upper[i + 1] - 2.0 * env.upper[i] + env.upper[i - 1]) / (d * d);
        }
        double kappa = std::abs(hpp) / std::pow(1.0 + hp * hp, 1.5);
        prof.xs.push_back(x);
        prof.kappas.push_back(kappa);
    }
    return prof;
}

SymmetralVerdict verify_in_S2(const EnvelopeBody& env, const ToleranceConfig& tol) {
    const std::size_t n = env.xs.size();
    if (n < 8 || !(env.hi > env.lo)) throw std::invalid_argument("verify_in_S2: degenerate envelope");

    CurvatureProfile prof = curvature_profile(env, tol);
    SymmetralVerdict v;
    v.min_curvature = inf;
    for (double k : prof.kappas) v.min_curvature = std::min(v.min_curvature, k);

    /* The region between the sampled chains is a union of trapezoids whose
     * corners all lie in the sample set, hence inside the c-hull; only the
     * hull-to-region direction of the Hausdorff distance can be nonzero. */
    std::vector<Vec2> boundary;
    boundary.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) boundary.push_back({env.xs[i], env.upper[i]});
    for (std::size_t i = n - 1; i-- > 1;) boundary.push_back({env.xs[i], env.lower[i]});
    DiskPolygon hull = chull(PointSet::make(boundary, tol), tol);
    int per_arc = 8192;
    if (hull.kind == BodyClass::Proper)
        per_arc = std::max(2, static_cast<int>(8192 / hull.arc_centers.size()));
    v.hausdorff_to_chull = 0.0;
    for (const Vec2& q : boundary_samples(hull, per_arc))
        v.hausdorff_to_chull = std::max(v.hausdorff_to_chull, region_distance(env, q, 64));

    // no vertical segments at the tips: the whole symmetral must fit in the
    // unit disks tangent there from inside
    Vec2 left{env.lo + 1.0, 0.0}, right{env.hi - 1.0, 0.0};
    v.endpoint_support_ok = true;
    for (const Vec2& p : boundary) {
        if (dist(p, left) > 1.0 + 1e-7 || dist(p, right) > 1.0 + 1e-7) {
            v.endpoint_support_ok = false;
            break;
        }
    }

    v.pass = v.min_curvature >= 1.0 - 1e-6 &&
             v.hausdorff_to_chull <= 5.0 * env.spacing() && v.endpoint_support_ok;
    return v;
}

DualVolumePair steiner_dual_volume_check(const DiskPolygon& body, Vec2 direction,
                                         const ToleranceConfig& tol) {
    if (body.kind == BodyClass::Empty || body.kind == BodyClass::SinglePoint)
        throw std::invalid_argument("dual volume check needs a full-dimensional body");
    int per_arc = 8192;
    if (body.kind == BodyClass::Proper)
        per_arc = std::max(8, static_cast<int>(8192 / body.arc_centers.size()));
    DiskPolygon dual_before =
        intersect_unit_disks(PointSet::make(boundary_samples(body, per_arc), tol), tol);
    if (dual_before.kind == BodyClass::Empty)
        throw std::runtime_error("dual volume check: empty dual");

    EnvelopeBody env = steiner_symmetral(body, direction, kEnvelopeGridDefault, tol);
    DiskPolygon dual_after =
        intersect_unit_disks(PointSet::make(envelope_boundary(env), tol), tol);
    if (dual_after.kind == BodyClass::Empty)
        throw std::runtime_error("dual volume check: empty dual after symmetrization");
    return {area(dual_before), area(dual_after)};
}

std::string envelope_to_csv(const EnvelopeBody& env) {
    CsvTable t;
    t.header = {"x", "upper", "lower", "piece_upper", "piece_lower"};
    for (std::size_t i = 0; i < env.xs.size(); ++i) {
        t.rows.push_back({fmt_double(env.xs[i]), fmt_double(env.upper[i]),
                          fmt_double(env.lower[i]), std::to_string(env.piece_upper[i]),
                          std::to_string(env.piece_lower[i])});
    }
    return csv_to_string(t);
}

std::string verdict_to_json(const SymmetralVerdict& v) {
    auto jnum = [](double x) {
        std::string s = fmt_double(x);
        return std::isfinite(x) ? s : "\"" + s + "\"";
    };
    std::ostringstream os;
    os << "{\"schema\":\"ballbody/1\",\"min_curvature\":" << jnum(v.min_curvature)
       << ",\"hausdorff_to_chull\":" << jnum(v.hausdorff_to_chull)
       << ",\"endpoint_support_ok\":" << (v.endpoint_support_ok ? "true" : "false")
       << ",\"pass\":" << (v.pass ? "true" : "false") << "}\n";
    return os.str();
}

}  // namespace ballbody
