#pragma once

// Shared configuration and result types for the orientation-sweep algorithms.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "tspn/geom.hpp"

namespace tspn {

/// Which rectangle functional a sweep minimizes.
enum class Objective {
  Perimeter,   // 2w + 2h
  ThreeSides,  // per - long
};

enum class Mode { Tour, Path };

struct SweepConfig {
  double epsilon = 1.0 / 200.0;
  /// Number of directions; angle i is i * step.
  std::size_t m = 0;
  /// Angular spacing; 0 means 2 * epsilon.
  double step = 0.0;
  std::uint64_t seed = 0;
  /// Worker threads for the per-angle solves; 0 uses the hardware count.
  unsigned threads = 1;

  /// m = ceil(pi / (4 eps)); rectangles repeat every quarter turn.
  static SweepConfig tour(double epsilon = 1.0 / 200.0, std::uint64_t seed = 0);
  /// m = ceil(pi / eps) directions spaced eps apart over a half turn. A
  /// rotation by d grows w + 2h by up to a factor 1 + 2d for thin rectangles,
  /// so the spacing is halved to keep the loss within 1 + eps.
  static SweepConfig path(double epsilon = 1.0 / 250.0, std::uint64_t seed = 0);
  /// Tour configuration with epsilon drawn uniformly from [1/300, 1/200].
  static SweepConfig tour_randomized(std::uint64_t seed);

  double angle(std::size_t i) const {
    return static_cast<double>(i) * (step > 0.0 ? step : 2.0 * epsilon);
  }
};

std::size_t tour_direction_count(double epsilon);
std::size_t path_direction_count(double epsilon);

enum class CertificateMethod { DenseSweepLemma1, DenseSweepPath, DenseSweepRayPath, KnownOptimum, BasisEnum };

std::string_view to_string(CertificateMethod m);

struct RatioCertificate {
  double output_value = 0.0;
  double lower_bound = 0.0;
  /// output_value / lower_bound; absent when the lower bound is zero.
  std::optional<double> ratio;
  /// The ratio the certificate must not exceed.
  double bound = 0.0;
  CertificateMethod method = CertificateMethod::DenseSweepLemma1;

  bool passed() const { return ratio.has_value() && *ratio <= bound; }
};

struct TourResult {
  OrientedRect rect;
  /// per(rect) for tours, per(rect) - long(rect) for paths.
  double objective_value = 0.0;
  Mode mode = Mode::Tour;
  std::size_t winning_angle_index = 0;
  std::size_t m = 0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  /// Emitted curve: the three kept sides for line paths, the closed rectangle
  /// boundary for ray paths, empty for tours.
  std::vector<Point> path;
  /// All regions share a common point; the result is a point rectangle.
  bool degenerate = false;
  std::optional<RatioCertificate> certificate;
};

}  // namespace tspn
