#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "tspn/geom.hpp"

namespace tspn::test {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline Line random_line(Rng& rng, double spread = 10.0) {
  double t = uniform(rng, 0.0, 2.0 * kPi);
  return Line::from_general(std::cos(t), std::sin(t), uniform(rng, -spread, spread));
}

inline std::vector<Line> random_lines(Rng& rng, std::size_t n, double spread = 10.0) {
  std::vector<Line> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_line(rng, spread));
  return out;
}

inline Ray random_ray(Rng& rng, double spread = 10.0) {
  return Ray::from_angle({uniform(rng, -spread, spread), uniform(rng, -spread, spread)}, uniform(rng, 0.0, 2.0 * kPi));
}

inline std::vector<Ray> random_rays(Rng& rng, std::size_t n, double spread = 10.0) {
  std::vector<Ray> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_ray(rng, spread));
  return out;
}

inline Polyline random_polyline(Rng& rng, std::size_t vertices, double spread = 1.0) {
  std::vector<Point> v;
  while (v.size() < vertices) {
    Point p{uniform(rng, -spread, spread), uniform(rng, -spread, spread)};
    if (v.empty() || distance(p, v.back()) > 1e-6) v.push_back(p);
  }
  return Polyline(std::move(v));
}

inline OrientedRect random_rect(Rng& rng, double spread = 5.0) {
  double x = uniform(rng, -spread, spread), y = uniform(rng, -spread, spread);
  return {uniform(rng, 0.0, kPi), x, x + uniform(rng, 0.0, spread), y, y + uniform(rng, 0.0, spread)};
}

inline bool close_rel(double a, double b, double rel, double abs_floor = 0.0) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)}) + abs_floor;
}

}  // namespace tspn::test
