#pragma once

#include <cstdint>
#include <vector>

#include "ballbody/disk_polygon.hpp"
#include "ballbody/geom.hpp"

namespace ballbody {

// Boolean occupancy grid with square cells; cell (i, j) covers
// [x0 + i*cell, x0 + (i+1)*cell) x [y0 + j*cell, y0 + (j+1)*cell).
struct BoolRaster {
    int nx = 0, ny = 0;
    double x0 = 0.0, y0 = 0.0;
    double cell = 1.0;
    std::vector<std::uint8_t> on;

    bool at(int i, int j) const { return on[static_cast<std::size_t>(j) * nx + i] != 0; }
    void set(int i, int j, bool v) {
        on[static_cast<std::size_t>(j) * nx + i] = v ? 1 : 0;
    }
    Vec2 center(int i, int j) const {
        return {x0 + (i + 0.5) * cell, y0 + (j + 0.5) * cell};
    }
    long count() const;
};

/* All-off window covering every listed body together with its mirror image,
 * padded by about two cells, with `n` cells along the longer side.  The
 * window origin is shifted (by at most a quarter cell) so the reflection
 * line lands on the half-cell lattice: reflection then maps cells to cells,
 * which is what makes two-point cell counts exactly preserved. */
BoolRaster window_for(const std::vector<DiskPolygon>& bodies, const ReflectionAxis& axis,
                      int n);

// occupancy by cell-center membership
BoolRaster rasterize(const DiskPolygon& body, const BoolRaster& window,
                     const ToleranceConfig& tol = default_tolerances());

/* Two-point symmetrization (K cap RK) union ((K cup RK) cap H+) applied
 * cellwise.  The axis must be parallel to a coordinate axis and is snapped
 * to the window's half-cell lattice; an ON cell whose mirror falls outside
 * the window is an error. */
BoolRaster two_point_symmetral_grid(const BoolRaster& mask, const ReflectionAxis& axis);

// cells of the same window whose center lies within 1 of every ON center
BoolRaster raster_dual(const BoolRaster& mask);

// every ON cell of `inner` has an ON cell of `outer` within `slack` cells
// (Chebyshev); rasters must share a window
bool included_with_slack(const BoolRaster& inner, const BoolRaster& outer, int slack);

}  // namespace ballbody
