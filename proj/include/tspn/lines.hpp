#pragma once

// Tours (perimeter objective) and paths (three-sides objective) for a set of
// lines via an orientation sweep of four-variable rectangle LPs.

#include <span>
#include <vector>

#include "tspn/geom.hpp"
#include "tspn/lp.hpp"
#include "tspn/sweep.hpp"

namespace tspn {

/// Rectangle LP for lines in the frame at `angle`. Rows 0 and 1 are
/// x1 <= x2 and y1 <= y2; line k contributes rows 2 + 2k and 3 + 2k.
/// Throws VerticalInFrame when a line is vertical in that frame.
LpProblem build_lines_lp(std::span<const Line> lines, double angle, Mode mode);

/// Removes lines equal in canonical form (within 1e-12), keeping the first.
std::vector<Line> dedupe_lines(std::span<const Line> lines);

/// Minimum-perimeter intersecting rectangle over cfg.m directions.
TourResult tour_lines(std::span<const Line> lines, const SweepConfig& cfg = SweepConfig::tour());

/// Minimum three-sides intersecting rectangle over cfg.m directions; the
/// emitted path is the rectangle boundary minus one longest side.
TourResult path_lines(std::span<const Line> lines, const SweepConfig& cfg = SweepConfig::path());

/// The open U-shaped path through the rectangle's corners that skips one
/// longest side (the side q2-q3 when width equals height).
std::vector<Point> three_side_path(const OrientedRect& rect);

}  // namespace tspn
