#include "tspn/curve_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "tspn/error.hpp"
#include "tspn/kernels.hpp"

namespace tspn {

namespace {

struct Coords {
  std::vector<double> x, y;
  explicit Coords(const Polyline& c) {
    for (Point p : c.vertices()) {
      x.push_back(p.x);
      y.push_back(p.y);
    }
  }
};

const double kAtanHalf = std::atan(0.5);

}  // namespace

AlignedRectStats aligned_enclosing_rect(const Polyline& curve) {
  Point chord = curve.back() - curve.front();
  AlignedRectStats s;
  s.z = norm(chord);
  s.L = curve.length();
  s.frame_angle = s.z > 0.0 ? std::atan2(chord.y, chord.x) : 0.0;
  Coords c(curve);
  auto e = kernels::active().extents(c.x.data(), c.y.data(), c.x.size(), std::cos(s.frame_angle),
                                     std::sin(s.frame_angle));
  s.w = e.umax - e.umin;
  s.h = e.vmax - e.vmin;
  return s;
}

BoundCheck three_side_bound(const Polyline& curve) {
  auto s = aligned_enclosing_rect(curve);
  BoundCheck b;
  b.value = s.w + 2.0 * s.h;
  b.bound = std::sqrt(2.0) * s.L;
  b.slack = b.bound - b.value;
  b.length = s.L;
  return b;
}

BoundCheck perimeter_bound(const Polyline& curve) {
  auto s = aligned_enclosing_rect(curve);
  BoundCheck b;
  b.value = 2.0 * (s.w + s.h);
  b.bound = std::sqrt(5.0) * s.L;
  b.slack = b.bound - b.value;
  b.length = s.L;
  return b;
}

double f_lambda(double lambda) {
  if (!(lambda >= 1.0)) throw DomainError("f_lambda requires lambda >= 1");
  return (2.0 + std::sqrt(lambda * lambda - 1.0)) / lambda;
}

double lemma3_case_f(double alpha) {
  if (!(alpha >= 0.0 && alpha <= kPi / 4.0)) throw DomainError("alpha must lie in [0, pi/4]");
  return 3.0 * std::cos(alpha) + std::sin(alpha);
}

double lemma5_case1_f(double alpha) {
  if (!(alpha >= 0.0 && alpha <= kAtanHalf)) throw DomainError("alpha must lie in [0, atan(1/2)]");
  return std::sqrt(5.0) * std::cos(alpha) + (2.0 / std::sqrt(5.0)) * std::sin(alpha);
}

double lemma5_case2_f(double beta) {
  if (!(beta >= 0.0 && beta <= kPi / 4.0 - kAtanHalf))
    throw DomainError("beta must lie in [0, pi/4 - atan(1/2)]");
  double a = beta + kAtanHalf;
  return (4.0 / std::sqrt(5.0)) * (std::cos(a) + std::sin(a));
}

AppendixValues appendix_case_functions(double alpha) {
  AppendixValues v;
  if (alpha >= 0.0 && alpha <= kPi / 4.0) v.lemma3_f = lemma3_case_f(alpha);
  if (alpha >= 0.0 && alpha <= kAtanHalf) v.lemma5_case1_f = lemma5_case1_f(alpha);
  if (!v.lemma3_f && !v.lemma5_case1_f) throw DomainError("alpha outside [0, pi/4]");
  return v;
}

OrientationMin min_over_orientations(const Polyline& curve, Objective objective, std::size_t K) {
  if (K < 4) throw DomainError("orientation count must be at least 4");
  Coords c(curve);
  const auto& k = kernels::active();
  OrientationMin best{0.0, std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < K; ++i) {
    double theta = kPi * static_cast<double>(i) / static_cast<double>(K);
    auto e = k.extents(c.x.data(), c.y.data(), c.x.size(), std::cos(theta), std::sin(theta));
    double w = e.umax - e.umin, h = e.vmax - e.vmin;
    double value = objective == Objective::Perimeter ? 2.0 * (w + h) : 2.0 * (w + h) - std::max(w, h);
    if (value < best.value) best = {theta, value};
  }
  return best;
}

Polyline lemma3_tight_curve() {
  double r = std::sqrt(2.0) / 2.0;
  return Polyline({{0.0, 0.0}, {r, r}, {std::sqrt(2.0), 0.0}});
}

Polyline lemma5_tight_curve() {
  double s = std::sqrt(5.0);
  return Polyline({{0.0, 0.0}, {2.0 / s, 1.0 / s}, {4.0 / s, 0.0}});
}

}  // namespace tspn
