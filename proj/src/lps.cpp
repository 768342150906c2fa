#include "ballbody/lps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ballbody/lens.hpp"
#include "ballbody/reports.hpp"
#include "ballbody/symmetry.hpp"

namespace ballbody {

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
}

LinearParameterSystem make_system(std::vector<Vec2> points, std::vector<double> velocities,
                                  Vec2 direction) {
    if (points.empty()) throw std::invalid_argument("parameter system needs at least one point");
    if (points.size() != velocities.size())
        throw std::invalid_argument("parameter system: one velocity per point");
    double n = norm2(direction);
    if (!(n > 1e-24)) throw std::invalid_argument("parameter system direction must be nonzero");
    LinearParameterSystem sys;
    sys.points = std::move(points);
    sys.velocities = std::move(velocities);
    sys.direction = (1.0 / std::sqrt(n)) * direction;
    return sys;
}

PointSet points_at(const LinearParameterSystem& sys, double t) {
    std::vector<Vec2> out;
    out.reserve(sys.points.size());
    for (std::size_t i = 0; i < sys.points.size(); ++i)
        out.push_back(sys.points[i] + (t * sys.velocities[i]) * sys.direction);
    return PointSet::make(std::move(out));
}

double outradius_at(const LinearParameterSystem& sys, double t) {
    std::vector<Vec2> pts;
    pts.reserve(sys.points.size());
    for (std::size_t i = 0; i < sys.points.size(); ++i)
        pts.push_back(sys.points[i] + (t * sys.velocities[i]) * sys.direction);
    return smallest_enclosing_ball(pts).radius;
}

std::optional<DiskPolygon> body_at(const LinearParameterSystem& sys, double t,
                                   const ToleranceConfig& tol) {
    if (outradius_at(sys, t) > 1.0 + tol.eps_geom) return std::nullopt;
    return chull(points_at(sys, t), tol);
}

FeasibilityInterval feasibility_interval(const LinearParameterSystem& sys,
                                         const ToleranceConfig& tol) {
    auto [vmin, vmax] = std::minmax_element(sys.velocities.begin(), sys.velocities.end());
    if (*vmin == *vmax) {
        if (outradius_at(sys, 0.0) <= 1.0 + tol.eps_geom) return {0.0, 0.0, true};
        throw std::runtime_error("no feasible parameter: rigid translation of an infeasible set");
    }

    // the out-radius is convex in t; locate a feasible seed
    double seed = 0.0;
    if (outradius_at(sys, seed) > 1.0) {
        double lo = -1024.0, hi = 1024.0;
        for (int it = 0; it < 200; ++it) {
            double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
            if (outradius_at(sys, m1) <= outradius_at(sys, m2))
                hi = m2;
            else
                lo = m1;
        }
        seed = 0.5 * (lo + hi);
        if (outradius_at(sys, seed) > 1.0)
            throw std::runtime_error("no feasible parameter found in the scanned range");
    }

    auto endpoint = [&](double dir) {
        double a = seed, step = 1.0, b = seed + dir;
        while (outradius_at(sys, b) <= 1.0) {
            a = b;
            step *= 2.0;
            if (step > 1.1e12)
                throw std::runtime_error("feasibility endpoint escapes the scanned range");
            b = seed + dir * step;
        }
        while (std::abs(b - a) > tol.eps_geom) {
            double mid = 0.5 * (a + b);
            (outradius_at(sys, mid) <= 1.0 ? a : b) = mid;
        }
        return a;  // last feasible parameter
    };

    FeasibilityInterval out;
    out.t_max = endpoint(+1.0);
    out.t_min = endpoint(-1.0);
    return out;
}

std::vector<double> uniform_grid(double a, double b, int n) {
    if (n < 2) throw std::invalid_argument("uniform_grid: need at least two points");
    if (!(a < b)) throw std::invalid_argument("uniform_grid: empty range");
    std::vector<double> ts(n);
    for (int i = 0; i < n; ++i) ts[i] = a + (b - a) * i / (n - 1);
    ts.front() = a;
    ts.back() = b;
    return ts;
}

std::vector<double> default_trace_grid(const LinearParameterSystem& sys,
                                       const ToleranceConfig& tol) {
    FeasibilityInterval fi = feasibility_interval(sys, tol);
    if (fi.unbounded) return uniform_grid(-1.0, 1.0, 201);
    if (!(fi.t_min < fi.t_max)) {
        // tangency: single feasible instant, pad symmetrically for context
        return uniform_grid(fi.t_min - 0.5, fi.t_max + 0.5, 201);
    }
    return uniform_grid(fi.t_min, fi.t_max, 201);
}

VolumeTrace volume_trace(const LinearParameterSystem& sys, const std::vector<double>& t_grid,
                         const ToleranceConfig& tol) {
    VolumeTrace tr;
    tr.label = "volume";
    tr.ts = t_grid;
    for (double t : t_grid) {
        auto body = body_at(sys, t, tol);
        tr.feasible.push_back(body ? 1 : 0);
        tr.values.push_back(body ? area(*body) : inf);
    }
    return tr;
}

std::pair<VolumeTrace, VolumeTrace> dual_volume_trace(const LinearParameterSystem& sys,
                                                      const std::vector<double>& t_grid,
                                                      const ToleranceConfig& tol) {
    VolumeTrace dv, rt;
    dv.label = "dual_volume";
    rt.label = "dual_volume_root";
    dv.ts = rt.ts = t_grid;
    for (double t : t_grid) {
        DiskPolygon dual = cdual(points_at(sys, t), tol);
        double a = area(dual);
        std::uint8_t ok = dual.kind != BodyClass::Empty ? 1 : 0;
        dv.values.push_back(a);
        dv.feasible.push_back(ok);
        rt.values.push_back(std::sqrt(a));
        rt.feasible.push_back(ok);
    }
    return {dv, rt};
}

VolumeTrace outradius_trace(const LinearParameterSystem& sys, const std::vector<double>& t_grid) {
    VolumeTrace tr;
    tr.label = "outradius";
    tr.ts = t_grid;
    for (double t : t_grid) {
        tr.values.push_back(outradius_at(sys, t));
        tr.feasible.push_back(1);
    }
    return tr;
}

ConvexityVerdict convexity_verdict(const VolumeTrace& trace, bool concave, double tol) {
    const auto& v = trace.values;
    const auto& ts = trace.ts;
    if (v.size() != ts.size()) throw std::invalid_argument("trace arrays disagree in length");
    long finite = std::count_if(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
    if (finite < 3)
        throw std::invalid_argument("convexity verdict needs at least three finite samples");

    double vmax = 0.0;
    for (double x : v)
        if (std::isfinite(x)) vmax = std::max(vmax, std::abs(x));
    double slack = tol >= 0.0 ? tol : 1e-7 * std::max(1.0, vmax);

    ConvexityVerdict out;
    out.label = trace.label;
    out.concave_sense = concave;
    double worst = inf;
    bool any = false;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        if (!std::isfinite(v[i - 1]) || !std::isfinite(v[i]) || !std::isfinite(v[i + 1])) continue;
        double h1 = ts[i] - ts[i - 1], h2 = ts[i + 1] - ts[i];
        if (!(h1 > 0.0 && h2 > 0.0)) throw std::invalid_argument("trace grid not increasing");
        // equals the plain second difference v[i-1] - 2 v[i] + v[i+1] on a uniform grid
        double d = 2.0 * ((h2 * v[i - 1] + h1 * v[i + 1]) / (h1 + h2) - v[i]);
        if (concave) d = -d;
        if (d < worst) {
            worst = d;
            out.t_at_worst = ts[i];
        }
        any = true;
    }
    if (!any)
        throw std::invalid_argument("convexity verdict needs three consecutive finite samples");
    out.holds = worst >= -slack;
    out.worst_violation = std::max(0.0, -worst);
    return out;
}

std::string verdict_json(const ConvexityVerdict& v) {
    std::ostringstream os;
    os << "{\"schema\":\"ballbody/1\",\"label\":\"" << json_escape(v.label) << "\",\"sense\":\""
       << (v.concave_sense ? "concave" : "convex")
       << "\",\"is_convex_or_concave\":" << (v.holds ? "true" : "false")
       << ",\"worst_violation\":" << json_number(v.worst_violation)
       << ",\"t_at_worst\":" << json_number(v.t_at_worst) << "}";
    return os.str();
}

std::string traces_to_csv(const std::vector<VolumeTrace>& traces) {
    CsvTable table;
    table.header = {"t", "value", "label", "feasible"};
    for (const auto& tr : traces)
        for (std::size_t i = 0; i < tr.ts.size(); ++i)
            table.rows.push_back({fmt_double(tr.ts[i]), fmt_double(tr.values[i]), tr.label,
                                  tr.feasible[i] ? "1" : "0"});
    return csv_to_string(table);
}

LinearParameterSystem steiner_system_from_body(const DiskPolygon& K, Vec2 u, int samples,
                                               const ToleranceConfig& tol) {
    EnvelopeBody env = steiner_symmetral(K, u, samples, tol);
    LinearParameterSystem sys;
    double n = norm2(u);
    if (!(n > 1e-24)) throw std::invalid_argument("steiner system direction must be nonzero");
    sys.direction = (1.0 / std::sqrt(n)) * u;
    for (std::size_t i = 0; i < env.xs.size(); ++i) {
        double x = env.xs[i];
        double lo = env.fiber_lo[i], hi = env.fiber_hi[i];
        double alpha = -0.5 * (lo + hi);
        sys.points.push_back(envelope_to_world(env, {x, lo}));
        sys.velocities.push_back(alpha);
        sys.points.push_back(envelope_to_world(env, {x, hi}));
        sys.velocities.push_back(alpha);
    }
    return sys;
}

std::string steiner3d_failure_verdict_json() {
    CounterexampleReport rep = verify_counterexample();
    bool witness = rep.pass && rep.violation_found;
    std::ostringstream os;
    os << "{\"schema\":\"ballbody/1\",\"report\":\"steiner_system_3d\",\"kappa\":"
       << json_number(rep.kappa) << ",\"curvature_witness\":" << (witness ? "true" : "false")
       << ",\"symmetral_in_class\":" << (witness ? "false" : "true")
       << ",\"hull_exceeds_symmetral\":" << (witness ? "true" : "false")
       << ",\"midpoint_volume_exceeds_endpoints\":" << (witness ? "true" : "false")
       << ",\"volume_trace_convex\":" << (witness ? "false" : "true")
       << ",\"pass\":" << (witness ? "true" : "false") << "}\n";
    return os.str();
}

LinearParameterSystem parse_system_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("system spec: ") + e.what());
    }
    try {
        if (!j.is_object()) throw std::invalid_argument("system spec: top level must be an object");
        for (const char* key : {"points", "velocities", "direction"})
            if (!j.contains(key))
                throw std::invalid_argument(std::string("system spec: missing field ") + key);
        std::vector<Vec2> pts;
        for (const auto& p : j["points"]) {
            if (!p.is_array() || p.size() != 2)
                throw std::invalid_argument("system spec: each point must be [x, y]");
            pts.push_back({p[0].get<double>(), p[1].get<double>()});
        }
        auto vel = j["velocities"].get<std::vector<double>>();
        const auto& d = j["direction"];
        if (!d.is_array() || d.size() != 2)
            throw std::invalid_argument("system spec: direction must be [vx, vy]");
        return make_system(std::move(pts), std::move(vel),
                           {d[0].get<double>(), d[1].get<double>()});
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("system spec: ") + e.what());
    }
}

std::string system_to_json(const LinearParameterSystem& sys) {
    std::ostringstream os;
    os << "{\"points\":[";
    for (std::size_t i = 0; i < sys.points.size(); ++i)
        os << (i ? "," : "") << "[" << fmt_double(sys.points[i].x) << ","
           << fmt_double(sys.points[i].y) << "]";
    os << "],\"velocities\":[";
    for (std::size_t i = 0; i < sys.velocities.size(); ++i)
        os << (i ? "," : "") << fmt_double(sys.velocities[i]);
    os << "],\"direction\":[" << fmt_double(sys.direction.x) << ","
       << fmt_double(sys.direction.y) << "]}\n";
    return os.str();
}

}  // namespace ballbody
