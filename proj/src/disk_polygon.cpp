#include "ballbody/disk_polygon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ballbody {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

bool lex_less(Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

}  // namespace

PointSet PointSet::make(std::vector<Vec2> pts, const ToleranceConfig& tol) {
    if (pts.empty()) throw std::invalid_argument("point set must be nonempty");
    PointSet set;
    set.pts = dedup_points(std::move(pts), tol.eps_geom);
    return set;
}

/* Construction.  Each input circle's boundary contribution is the angular set
 * where the point c_i + u(phi) lies in every other disk.  The constraint from
 * center j is <u(phi), c_j - c_i> >= |c_j - c_i|^2 / 2, an arc of directions
 * of half-width acos(|d|/2) around the direction of d = c_j - c_i.  All such
 * arcs span at most half a turn, so their running intersection stays a single
 * arc and each circle ends up with one active range (possibly empty).  The
 * surviving arcs are ordered counterclockwise and stitched at shared
 * endpoints.  This costs O(m^2) and is the same canonical result as walking
 * all pairwise circle intersections, which would be O(m^3). */
DiskPolygon intersect_unit_disks(const PointSet& centers, const ToleranceConfig& tol) {
    const std::vector<Vec2>& pts = centers.pts;
    if (pts.empty()) throw std::invalid_argument("intersect_unit_disks: empty center set");

    DiskPolygon body;
    if (pts.size() == 1) {
        body.kind = BodyClass::FullDisk;
        body.point = pts[0];
        return body;
    }

    Ball2 seb = smallest_enclosing_ball(pts);
    if (seb.radius > 1.0 + tol.eps_geom) {
        body.kind = BodyClass::Empty;
        return body;
    }
    if (seb.radius >= 1.0 - tol.eps_geom) {
        body.kind = BodyClass::SinglePoint;
        body.point = seb.center;
        return body;
    }

    struct Arc {
        std::size_t center_index;
        double lo, hi;  // active angular range, hi - lo < pi
    };
    std::vector<Arc> arcs;
    const std::size_t m = pts.size();
    for (std::size_t i = 0; i < m; ++i) {
        double lo = 0.0, hi = 0.0;
        Vec2 ulo, uhi;
        bool first = true, alive = true;
        // Nearby indices first: when the centers run along a curve (boundary
        // samples) the neighbors trim the range almost completely, and the
        // cheap containment pre-test below then skips nearly every other j.
        for (std::size_t k = 1; k < m && alive; ++k) {
            std::size_t step = (k + 1) / 2;
            std::size_t j = (k % 2) ? (i + step) % m : (i + m - step) % m;
            Vec2 d = pts[j] - pts[i];
            double dd = norm2(d);
            if (!first) {
                // an arc constraint holding at both interval ends holds on the
                // whole interval (all spans stay below half a turn)
                if (dot(ulo, d) >= 0.5 * dd && dot(uhi, d) >= 0.5 * dd) continue;
            }
            double dn = std::sqrt(dd);
            double half = dn >= 2.0 ? 0.0 : std::acos(0.5 * dn);
            double mid = std::atan2(d.y, d.x);
            if (first) {
                lo = mid - half;
                hi = mid + half;
                first = false;
            } else {
                // intersect [lo, hi] with [mid - half, mid + half] modulo
                // 2*pi; spans below half a turn meet in at most one wrapped
                // copy of the new arc
                double best_lo = 1.0, best_hi = 0.0;
                for (int w = -1; w <= 1; ++w) {
                    double c = mid + w * two_pi;
                    double nlo = std::max(lo, c - half), nhi = std::min(hi, c + half);
                    if (nhi - nlo > best_hi - best_lo) {
                        best_lo = nlo;
                        best_hi = nhi;
                    }
                }
                lo = best_lo;
                hi = best_hi;
                alive = hi >= lo;
            }
            if (alive) {
                ulo = unit_vec(lo);
                uhi = unit_vec(hi);
            }
        }
        if (alive && hi - lo > 1e-12) arcs.push_back({i, lo, hi});
    }

    if (arcs.size() < 2)
        throw std::runtime_error("intersect_unit_disks: degenerate boundary (mixed degeneracy)");

    // counterclockwise order around the centroid of the arc endpoints
    Vec2 centroid{0.0, 0.0};
    for (const Arc& a : arcs) {
        centroid = centroid + unit_vec(a.lo) + pts[a.center_index];
        centroid = centroid + unit_vec(a.hi) + pts[a.center_index];
    }
    centroid = (1.0 / (2.0 * arcs.size())) * centroid;
    std::sort(arcs.begin(), arcs.end(), [&](const Arc& a, const Arc& b) {
        Vec2 ma = pts[a.center_index] + unit_vec(0.5 * (a.lo + a.hi));
        Vec2 mb = pts[b.center_index] + unit_vec(0.5 * (b.lo + b.hi));
        return std::atan2(ma.y - centroid.y, ma.x - centroid.x) <
               std::atan2(mb.y - centroid.y, mb.x - centroid.x);
    });

    const std::size_t n = arcs.size();
    body.kind = BodyClass::Proper;
    body.vertices.resize(n);
    body.arc_centers.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Arc& prev = arcs[(k + n - 1) % n];
        const Arc& cur = arcs[k];
        Vec2 end_prev = pts[prev.center_index] + unit_vec(prev.hi);
        Vec2 start_cur = pts[cur.center_index] + unit_vec(cur.lo);
        if (dist(end_prev, start_cur) > 1e-6)
            throw std::runtime_error("intersect_unit_disks: inconsistent boundary stitching");
        body.vertices[k] = 0.5 * (end_prev + start_cur);
        body.arc_centers[k] = pts[cur.center_index];
    }

    // canonical start: lexicographically smallest vertex
    std::size_t start = 0;
    for (std::size_t k = 1; k < n; ++k)
        if (lex_less(body.vertices[k], body.vertices[start])) start = k;
    std::rotate(body.vertices.begin(), body.vertices.begin() + start, body.vertices.end());
    std::rotate(body.arc_centers.begin(), body.arc_centers.begin() + start, body.arc_centers.end());
    return body;
}

DiskPolygon cdual(const PointSet& points, const ToleranceConfig& tol) {
    return intersect_unit_disks(points, tol);
}

DiskPolygon chull(const PointSet& points, const ToleranceConfig& tol) {
    if (points.pts.size() == 1) {
        DiskPolygon body;
        body.kind = BodyClass::SinglePoint;
        body.point = points.pts[0];
        return body;
    }
    DiskPolygon dual = cdual(points, tol);
    switch (dual.kind) {
        case BodyClass::Empty:
            throw std::runtime_error("c-hull is the whole plane");
        case BodyClass::SinglePoint: {
            DiskPolygon body;
            body.kind = BodyClass::FullDisk;
            body.point = dual.point;
            return body;
        }
        case BodyClass::FullDisk:
            throw std::runtime_error("chull: mixed degeneracy (full-disk dual of several points)");
        case BodyClass::Proper:
            return intersect_unit_disks(PointSet::make(dual.vertices, tol), tol);
    }
    throw std::logic_error("chull: unreachable");
}

std::vector<Vec2> c_extremal(const DiskPolygon& body) {
    switch (body.kind) {
        case BodyClass::SinglePoint: return {body.point};
        case BodyClass::Proper: return body.vertices;
        default: throw std::runtime_error("no c-extremal representation");
    }
}

namespace {

// angular range [lo, hi] of arc i's outward normals (hi - lo in (0, pi))
void arc_range(const DiskPolygon& body, std::size_t i, double& lo, double& hi) {
    std::size_t n = body.vertices.size();
    Vec2 c = body.arc_centers[i];
    Vec2 a = body.vertices[i] - c;
    Vec2 b = body.vertices[(i + 1) % n] - c;
    lo = std::atan2(a.y, a.x);
    hi = std::atan2(b.y, b.x);
    while (hi <= lo) hi += two_pi;
}

double segment_area(double half_chord) {
    double d = std::clamp(half_chord, 0.0, 1.0);
    return std::asin(d) - d * std::sqrt(1.0 - d * d);
}

}  // namespace

double area(const DiskPolygon& body) {
    switch (body.kind) {
        case BodyClass::Empty:
        case BodyClass::SinglePoint: return 0.0;
        case BodyClass::FullDisk: return std::numbers::pi;
        case BodyClass::Proper: break;
    }
    const std::size_t n = body.vertices.size();
    double shoelace = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        shoelace += cross(body.vertices[i], body.vertices[(i + 1) % n]);
    double total = 0.5 * shoelace;
    for (std::size_t i = 0; i < n; ++i) {
        double half_chord = 0.5 * dist(body.vertices[i], body.vertices[(i + 1) % n]);
        total += segment_area(half_chord);
    }
    return total;
}

bool contains(const DiskPolygon& body, Vec2 p, const ToleranceConfig& tol) {
    switch (body.kind) {
        case BodyClass::Empty: return false;
        case BodyClass::SinglePoint: return dist(p, body.point) <= tol.eps_geom;
        case BodyClass::FullDisk: return dist(p, body.point) <= 1.0 + tol.eps_geom;
        case BodyClass::Proper: break;
    }
    for (const Vec2& c : body.arc_centers)
        if (dist(p, c) > 1.0 + tol.eps_geom) return false;
    return true;
}

double distance_to(const DiskPolygon& body, Vec2 p) {
    switch (body.kind) {
        case BodyClass::Empty: return std::numeric_limits<double>::infinity();
        case BodyClass::SinglePoint: return dist(p, body.point);
        case BodyClass::FullDisk: return std::max(0.0, dist(p, body.point) - 1.0);
        case BodyClass::Proper: break;
    }
    if (contains(body, p)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = body.vertices.size();
    for (const Vec2& v : body.vertices) best = std::min(best, dist(p, v));
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 c = body.arc_centers[i];
        double d = dist(p, c);
        if (d < 1e-15) continue;
        double phi = std::atan2(p.y - c.y, p.x - c.x);
        double lo, hi;
        arc_range(body, i, lo, hi);
        // is the radial foot inside the arc's angular range?
        double t = phi;
        while (t < lo) t += two_pi;
        if (t <= hi) best = std::min(best, std::abs(d - 1.0));
    }
    return best;
}

double support(const DiskPolygon& body, double theta) {
    Vec2 u = unit_vec(theta);
    switch (body.kind) {
        case BodyClass::Empty: throw std::runtime_error("support of empty body");
        case BodyClass::SinglePoint: return dot(body.point, u);
        case BodyClass::FullDisk: return dot(body.point, u) + 1.0;
        case BodyClass::Proper: break;
    }
    double best = -std::numeric_limits<double>::infinity();
    for (const Vec2& v : body.vertices) best = std::max(best, dot(v, u));
    const std::size_t n = body.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        double lo, hi;
        arc_range(body, i, lo, hi);
        double t = theta;
        while (t < lo) t += two_pi;
        while (t - two_pi >= lo) t -= two_pi;
        if (t <= hi) best = std::max(best, dot(body.arc_centers[i], u) + 1.0);
    }
    return best;
}

SupportPieces support_pieces(const DiskPolygon& body) {
    SupportPieces sp;
    switch (body.kind) {
        case BodyClass::Empty: throw std::runtime_error("support of empty body");
        case BodyClass::SinglePoint:
            sp.angles = {0.0, two_pi};
            sp.offsets = {0.0};
            sp.anchors = {body.point};
            return sp;
        case BodyClass::FullDisk:
            sp.angles = {0.0, two_pi};
            sp.offsets = {1.0};
            sp.anchors = {body.point};
            return sp;
        case BodyClass::Proper: break;
    }
    const std::size_t n = body.vertices.size();
    // arcs alternate with vertex normal cones: arc i covers [lo_i, hi_i],
    // vertex i+1 covers [hi_i, lo_{i+1}]
    std::vector<double> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) arc_range(body, i, lo[i], hi[i]);
    double cursor = lo[0];
    for (std::size_t i = 0; i < n; ++i) {
        sp.angles.push_back(cursor);
        sp.offsets.push_back(1.0);
        sp.anchors.push_back(body.arc_centers[i]);
        double arc_span = hi[i] - lo[i];
        cursor += arc_span;
        // vertex cone up to the next arc's start
        double next_lo = lo[(i + 1) % n];
        while (next_lo <= cursor - 1e-12) next_lo += two_pi;
        if (next_lo - cursor > 1e-12) {
            sp.angles.push_back(cursor);
            sp.offsets.push_back(0.0);
            sp.anchors.push_back(body.vertices[(i + 1) % n]);
            cursor = next_lo;
        } else {
            cursor = next_lo;
        }
    }
    sp.angles.push_back(sp.angles.front() + two_pi);
    if (std::abs(cursor - sp.angles.back()) > 1e-6)
        throw std::runtime_error("support_pieces: angular pieces do not close up");
    return sp;
}

std::size_t SupportPieces::piece_index(double theta) const {
    double t = theta;
    while (t < angles.front()) t += two_pi;
    while (t >= angles.front() + two_pi) t -= two_pi;
    auto it = std::upper_bound(angles.begin(), angles.end(), t);
    std::size_t idx = (it == angles.begin()) ? 0 : static_cast<std::size_t>(it - angles.begin()) - 1;
    return std::min(idx, offsets.size() - 1);
}

double SupportPieces::value(double theta) const {
    std::size_t k = piece_index(theta);
    return offsets[k] + dot(anchors[k], unit_vec(theta));
}

double SupportPieces::derivative(double theta) const {
    std::size_t k = piece_index(theta);
    return dot(anchors[k], perp(unit_vec(theta)));
}

Vec2 SupportPieces::boundary_point(double theta) const {
    // h*u + h'*u_perp collapses to anchor + offset * u
    std::size_t k = piece_index(theta);
    return anchors[k] + offsets[k] * unit_vec(theta);
}

double SupportPieces::max_support_violation(Vec2 p) const {
    /* Per piece, <p,u> - h = <p - anchor, u(theta)> - offset, whose maximum over
     * [lo, hi] is |p - anchor| when the direction of p - anchor falls inside the
     * piece, and an endpoint value otherwise. */
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < offsets.size(); ++k) {
        Vec2 d = p - anchors[k];
        double lo = angles[k], hi = angles[k + 1];
        double r = norm(d);
        if (r > 0.0) {
            double phi = std::atan2(d.y, d.x);
            while (phi < lo) phi += two_pi;
            if (phi <= hi) {
                best = std::max(best, r - offsets[k]);
                continue;
            }
        }
        best = std::max(best, dot(d, unit_vec(lo)) - offsets[k]);
        best = std::max(best, dot(d, unit_vec(hi)) - offsets[k]);
    }
    return best;
}

SupportPieces average(const SupportPieces& a, const SupportPieces& b) {
    // merge breakpoints of both tilings modulo 2*pi
    std::vector<double> cuts;
    for (double t : a.angles) cuts.push_back(wrap_angle(t));
    for (double t : b.angles) cuts.push_back(wrap_angle(t));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double x, double y) { return std::abs(x - y) < 1e-13; }),
               cuts.end());
    SupportPieces out;
    const std::size_t m = cuts.size();
    for (std::size_t k = 0; k < m; ++k) {
        double lo = cuts[k];
        double hi = (k + 1 < m) ? cuts[k + 1] : cuts[0] + two_pi;
        double mid = 0.5 * (lo + hi);
        std::size_t ka = a.piece_index(mid), kb = b.piece_index(mid);
        out.angles.push_back(lo);
        out.offsets.push_back(0.5 * (a.offsets[ka] + b.offsets[kb]));
        out.anchors.push_back(0.5 * (a.anchors[ka] + b.anchors[kb]));
    }
    out.angles.push_back(cuts[0] + two_pi);
    return out;
}

double integral_h(const SupportPieces& sp) {
    double total = 0.0;
    for (std::size_t k = 0; k < sp.offsets.size(); ++k) {
        double lo = sp.angles[k], hi = sp.angles[k + 1];
        Vec2 m = sp.anchors[k];
        total += sp.offsets[k] * (hi - lo);
        total += m.x * (std::sin(hi) - std::sin(lo)) - m.y * (std::cos(hi) - std::cos(lo));
    }
    return total;
}

double cauchy_area(const SupportPieces& sp) {
    /* On a piece h = a + <m, u>, so h^2 - h'^2 = a^2 + 2a<m, u> + |m|^2 cos(2(theta - mu))
     * with mu the direction of m; everything integrates in closed form. */
    double total = 0.0;
    for (std::size_t k = 0; k < sp.offsets.size(); ++k) {
        double lo = sp.angles[k], hi = sp.angles[k + 1];
        double a = sp.offsets[k];
        Vec2 m = sp.anchors[k];
        double mm = norm2(m);
        total += a * a * (hi - lo);
        total += 2.0 * a * (m.x * (std::sin(hi) - std::sin(lo)) - m.y * (std::cos(hi) - std::cos(lo)));
        if (mm > 0.0) {
            double mu = std::atan2(m.y, m.x);
            total += 0.5 * mm * (std::sin(2.0 * (hi - mu)) - std::sin(2.0 * (lo - mu)));
        }
    }
    return 0.5 * total;
}

SupportProfile support_profile(const DiskPolygon& body, int grid) {
    if (grid < 4) throw std::invalid_argument("support_profile: grid too small");
    SupportPieces sp = support_pieces(body);
    SupportProfile profile;
    profile.angles.reserve(grid);
    profile.values.reserve(grid);
    profile.derivatives.reserve(grid);
    for (int i = 0; i < grid; ++i) {
        double theta = two_pi * i / grid;
        profile.angles.push_back(theta);
        profile.values.push_back(sp.value(theta));
        profile.derivatives.push_back(sp.derivative(theta));
    }
    return profile;
}

double mean_width(const DiskPolygon& body) {
    switch (body.kind) {
        case BodyClass::Empty: throw std::runtime_error("mean width of empty body");
        case BodyClass::SinglePoint: return 0.0;
        case BodyClass::FullDisk: return 1.0;
        case BodyClass::Proper: break;
    }
    return integral_h(support_pieces(body)) / two_pi;
}

std::vector<Vec2> boundary_samples(const DiskPolygon& body, int per_arc) {
    switch (body.kind) {
        case BodyClass::Empty: return {};
        case BodyClass::SinglePoint: return {body.point};
        case BodyClass::FullDisk: {
            std::vector<Vec2> out;
            int n = std::max(per_arc, 8);
            out.reserve(n);
            for (int i = 0; i < n; ++i) out.push_back(body.point + unit_vec(two_pi * i / n));
            return out;
        }
        case BodyClass::Proper: break;
    }
    std::vector<Vec2> out = body.vertices;
    const std::size_t n = body.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        double lo, hi;
        arc_range(body, i, lo, hi);
        for (int k = 1; k <= per_arc; ++k) {
            double phi = lo + (hi - lo) * k / (per_arc + 1);
            out.push_back(body.arc_centers[i] + unit_vec(phi));
        }
    }
    return out;
}

double hausdorff(const DiskPolygon& a, const DiskPolygon& b, int grid) {
    if (a.kind == BodyClass::Empty || b.kind == BodyClass::Empty)
        throw std::runtime_error("hausdorff with empty body");
    if (grid <= 0) grid = default_tolerances().grid_default;
    double worst = 0.0;
    for (const Vec2& p : boundary_samples(a, grid)) worst = std::max(worst, distance_to(b, p));
    for (const Vec2& p : boundary_samples(b, grid)) worst = std::max(worst, distance_to(a, p));
    return worst;
}

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void append_points(std::ostringstream& os, const std::vector<Vec2>& pts) {
    os << "[";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) os << ",";
        os << "[" << fmt17(pts[i].x) << "," << fmt17(pts[i].y) << "]";
    }
    os << "]";
}

}  // namespace

std::string to_json(const DiskPolygon& body) {
    std::ostringstream os;
    os << "{\"classification\":\"";
    std::vector<Vec2> vertices, arc_centers;
    switch (body.kind) {
        case BodyClass::Empty: os << "empty"; break;
        case BodyClass::SinglePoint:
            os << "single_point";
            vertices = {body.point};
            break;
        case BodyClass::FullDisk:
            os << "full_disk";
            arc_centers = {body.point};
            break;
        case BodyClass::Proper:
            os << "proper";
            vertices = body.vertices;
            arc_centers = body.arc_centers;
            break;
    }
    os << "\",\"vertices\":";
    append_points(os, vertices);
    os << ",\"arc_centers\":";
    append_points(os, arc_centers);
    os << "}";
    return os.str();
}

void validate(const DiskPolygon& body, const ToleranceConfig& tol) {
    if (body.kind != BodyClass::Proper) return;
    const std::size_t n = body.vertices.size();
    if (n < 2 || body.arc_centers.size() != n)
        throw std::runtime_error("disk polygon: vertex/arc count mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        double d1 = dist(body.vertices[i], body.arc_centers[i]);
        double d2 = dist(body.vertices[(i + 1) % n], body.arc_centers[i]);
        if (std::abs(d1 - 1.0) > 1e2 * tol.eps_geom || std::abs(d2 - 1.0) > 1e2 * tol.eps_geom)
            throw std::runtime_error("disk polygon: vertex not on its arc circle");
    }
    if (n > 2) {
        double orient = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            orient += cross(body.vertices[i], body.vertices[(i + 1) % n]);
        if (orient <= 0.0) throw std::runtime_error("disk polygon: vertices not counterclockwise");
    }
}

}  // namespace ballbody
