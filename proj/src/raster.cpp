#include "ballbody/raster.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ballbody {

namespace {

// which coordinate axis the direction is parallel to, and its sign
struct AlignedAxis {
    int comp = 0;  // 0: direction = ±e1, 1: direction = ±e2
    double sgn = 1.0;
    double line = 0.0;  // hyperplane position in that coordinate
};

AlignedAxis resolve_axis(const ReflectionAxis& axis) {
    AlignedAxis a;
    Vec2 u = axis.direction;
    if (std::abs(std::abs(u.x) - 1.0) < 1e-12 && std::abs(u.y) < 1e-12) {
        a.comp = 0;
        a.sgn = u.x > 0 ? 1.0 : -1.0;
    } else if (std::abs(std::abs(u.y) - 1.0) < 1e-12 && std::abs(u.x) < 1e-12) {
        a.comp = 1;
        a.sgn = u.y > 0 ? 1.0 : -1.0;
    } else {
        throw std::invalid_argument(
            "two-point raster operations need an axis-aligned reflection axis");
    }
    a.line = axis.offset * a.sgn;
    return a;
}

struct Box {
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
};

Box body_box(const DiskPolygon& body) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    return {-support(body, std::numbers::pi), support(body, 0.0),
            -support(body, -half_pi), support(body, half_pi)};
}

}  // namespace

long BoolRaster::count() const {
    long c = 0;
    for (std::uint8_t v : on) c += v;
    return c;
}

BoolRaster window_for(const std::vector<DiskPolygon>& bodies, const ReflectionAxis& axis,
                      int n) {
    if (bodies.empty()) throw std::invalid_argument("window_for: no bodies");
    if (n < 16) throw std::invalid_argument("window_for: raster too coarse");
    AlignedAxis ax = resolve_axis(axis);

    Box all;
    bool first = true;
    for (const DiskPolygon& b : bodies) {
        if (b.kind == BodyClass::Empty) throw std::invalid_argument("window_for: empty body");
        Box bb = body_box(b);
        // the mirror of an axis-aligned box is a box
        double lo = (ax.comp == 0) ? bb.xmin : bb.ymin;
        double hi = (ax.comp == 0) ? bb.xmax : bb.ymax;
        double mlo = 2.0 * ax.line - hi, mhi = 2.0 * ax.line - lo;
        Box mb = bb;
        if (ax.comp == 0) {
            mb.xmin = mlo;
            mb.xmax = mhi;
        } else {
            mb.ymin = mlo;
            mb.ymax = mhi;
        }
        for (const Box& x : {bb, mb}) {
            if (first) {
                all = x;
                first = false;
            } else {
                all.xmin = std::min(all.xmin, x.xmin);
                all.xmax = std::max(all.xmax, x.xmax);
                all.ymin = std::min(all.ymin, x.ymin);
                all.ymax = std::max(all.ymax, x.ymax);
            }
        }
    }

    double span = std::max(all.xmax - all.xmin, all.ymax - all.ymin);
    if (!(span > 0)) span = 1.0;
    BoolRaster r;
    r.cell = span / (n - 4);
    r.x0 = all.xmin - 2.0 * r.cell;
    r.y0 = all.ymin - 2.0 * r.cell;
    r.nx = static_cast<int>(std::ceil((all.xmax - r.x0) / r.cell)) + 2;
    r.ny = static_cast<int>(std::ceil((all.ymax - r.y0) / r.cell)) + 2;

    // put the reflection line on the half-cell lattice (shift <= cell/4)
    double& origin = (ax.comp == 0) ? r.x0 : r.y0;
    double rel = (ax.line - origin) / (0.5 * r.cell);
    origin = ax.line - std::round(rel) * 0.5 * r.cell;

    r.on.assign(static_cast<std::size_t>(r.nx) * r.ny, 0);
    return r;
}

BoolRaster rasterize(const DiskPolygon& body, const BoolRaster& window,
                     const ToleranceConfig& tol) {
    BoolRaster out = window;
    std::fill(out.on.begin(), out.on.end(), 0);
    for (int j = 0; j < out.ny; ++j)
        for (int i = 0; i < out.nx; ++i)
            if (contains(body, out.center(i, j), tol)) out.set(i, j, true);
    return out;
}

BoolRaster two_point_symmetral_grid(const BoolRaster& mask, const ReflectionAxis& axis) {
    AlignedAxis ax = resolve_axis(axis);
    const double origin = (ax.comp == 0) ? mask.x0 : mask.y0;
    const int extent = (ax.comp == 0) ? mask.nx : mask.ny;
    // line position in half-cell units from the origin; snapping keeps the
    // mirror an exact involution on cell indices
    const long k = std::lround(2.0 * (ax.line - origin) / mask.cell);
    auto mirror = [&](int idx) { return static_cast<int>(k - 1 - idx); };

    // positive side of the hyperplane in the line coordinate
    auto positive = [&](int idx) {
        double w = origin + (idx + 0.5) * mask.cell;
        return ax.sgn * (w - (origin + 0.5 * k * mask.cell)) > 0.0;
    };

    BoolRaster out = mask;
    std::fill(out.on.begin(), out.on.end(), 0);
    for (int j = 0; j < mask.ny; ++j) {
        for (int i = 0; i < mask.nx; ++i) {
            int idx = (ax.comp == 0) ? i : j;
            int m = mirror(idx);
            bool here = mask.at(i, j);
            bool partner_in = m >= 0 && m < extent;
            if (here && !partner_in)
                throw std::runtime_error(
                    "two-point symmetral: reflection leaves the raster window");
            if (!here && !partner_in) continue;
            bool there = partner_in &&
                         (ax.comp == 0 ? mask.at(m, j) : mask.at(i, m));
            bool keep = (here && there) || ((here || there) && positive(idx));
            if (keep) out.set(i, j, true);
        }
    }
    return out;
}

BoolRaster raster_dual(const BoolRaster& mask) {
    std::vector<Vec2> pts;
    for (int j = 0; j < mask.ny; ++j)
        for (int i = 0; i < mask.nx; ++i)
            if (mask.at(i, j)) pts.push_back(mask.center(i, j));
    if (pts.empty()) throw std::invalid_argument("raster_dual: empty mask");

    // farthest-point queries only need the convex hull (monotone chain; the
    // centers arrive already sorted lexicographically)
    std::vector<Vec2> hull;
    auto build = [&](auto begin, auto end) {
        std::size_t base = hull.size();
        for (auto it = begin; it != end; ++it) {
            while (hull.size() >= base + 2 &&
                   cross(hull[hull.size() - 1] - hull[hull.size() - 2],
                         *it - hull[hull.size() - 2]) <= 0.0)
                hull.pop_back();
            hull.push_back(*it);
        }
        hull.pop_back();
    };
    std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    build(pts.begin(), pts.end());
    build(pts.rbegin(), pts.rend());
    if (hull.empty()) hull.push_back(pts.front());

    BoolRaster out = mask;
    std::fill(out.on.begin(), out.on.end(), 0);
    for (int j = 0; j < out.ny; ++j) {
        for (int i = 0; i < out.nx; ++i) {
            Vec2 q = out.center(i, j);
            double worst = 0.0;
            for (const Vec2& v : hull) worst = std::max(worst, norm2(q - v));
            if (worst <= 1.0) out.set(i, j, true);
        }
    }
    return out;
}

bool included_with_slack(const BoolRaster& inner, const BoolRaster& outer, int slack) {
    if (inner.nx != outer.nx || inner.ny != outer.ny)
        throw std::invalid_argument("included_with_slack: window mismatch");
    for (int j = 0; j < inner.ny; ++j) {
        for (int i = 0; i < inner.nx; ++i) {
            if (!inner.at(i, j)) continue;
            bool found = false;
            for (int dj = -slack; dj <= slack && !found; ++dj) {
                for (int di = -slack; di <= slack && !found; ++di) {
                    int ii = i + di, jj = j + dj;
                    if (ii >= 0 && ii < outer.nx && jj >= 0 && jj < outer.ny &&
                        outer.at(ii, jj))
                        found = true;
                }
            }
            if (!found) return false;
        }
    }
    return true;
}

}  // namespace ballbody
