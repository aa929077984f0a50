#pragma once

// Tours and paths for a set of rays. A ray meets an axis-parallel rectangle
// iff its supporting line separates the corner pair dictated by its slope and
// its apex lies on the correct side of two rectangle edges, as dictated by
// its quadrant. The apex itself need not lie inside the rectangle.

#include <span>
#include <vector>

#include "tspn/geom.hpp"
#include "tspn/lp.hpp"
#include "tspn/sweep.hpp"

namespace tspn {

/// Rectangle LP for rays in the frame at `angle` (perimeter objective).
/// Rows 0 and 1 are x1 <= x2 and y1 <= y2; ray k contributes rows 2 + 4k
/// through 5 + 4k: two separation rows, the apex x row, the apex y row.
/// Throws VerticalInFrame when a ray is vertical in that frame.
LpProblem build_rays_lp(std::span<const Ray> rays, double angle);

/// Removes rays with identical apex and direction (within 1e-12).
std::vector<Ray> dedupe_rays(std::span<const Ray> rays);

/// Minimum-perimeter intersecting rectangle over cfg.m directions.
TourResult tour_rays(std::span<const Ray> rays, const SweepConfig& cfg = SweepConfig::tour());

/// Default configuration for ray paths: epsilon = 1/1000.
SweepConfig ray_path_config(double epsilon = 1.0 / 1000.0, std::uint64_t seed = 0);

/// Same rectangle as tour_rays; the emitted path is the closed rectangle
/// boundary q1 q2 q3 q4 q1.
TourResult path_rays(std::span<const Ray> rays, const SweepConfig& cfg = ray_path_config());

}  // namespace tspn
