#pragma once

// Deterministic SVG rendering of an instance with its result rectangle and
// emitted path.

#include <string>

#include "tspn/io.hpp"

namespace tspn {

/// Regions are clipped to a padded viewport around the rectangle, the path,
/// the ray apexes and the pairwise line intersections lying within three
/// rectangle diagonals of the rectangle centre (pairs are only examined for
/// at most 2000 lines). Rays end in arrowheads; corners are labelled q1..q4.
std::string emit_svg(const Instance& inst, const TourResult& result);

}  // namespace tspn
