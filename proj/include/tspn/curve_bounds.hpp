#pragma once

// Enclosing-rectangle functionals of open polylines: the bound
// w + 2h <= sqrt(2) L for the rectangle aligned with the endpoint chord, the
// bound 2(w + h) <= sqrt(5) L, and the one-parameter functions used to show
// both bounds are attained.

#include <optional>

#include "tspn/geom.hpp"
#include "tspn/sweep.hpp"

namespace tspn {

struct AlignedRectStats {
  double w = 0.0;  // extent along the endpoint chord
  double h = 0.0;  // extent across it
  double L = 0.0;  // curve length
  double z = 0.0;  // endpoint distance
  double frame_angle = 0.0;
};

/// Bounding box of the curve in the frame whose x axis runs along the chord
/// from the first to the last vertex (frame angle 0 when they coincide).
AlignedRectStats aligned_enclosing_rect(const Polyline& curve);

struct BoundCheck {
  double value = 0.0;
  double bound = 0.0;
  double slack = 0.0;  // bound - value
  double length = 0.0;

  /// slack >= -rel_tol * L
  bool holds(double rel_tol = 1e-9) const { return slack >= -rel_tol * length; }
};

/// value = w + 2h of the chord-aligned box, bound = sqrt(2) L.
BoundCheck three_side_bound(const Polyline& curve);
/// value = 2(w + h) of the chord-aligned box, bound = sqrt(5) L.
BoundCheck perimeter_bound(const Polyline& curve);

/// (2 + sqrt(lambda^2 - 1)) / lambda for lambda >= 1; maximum sqrt(5) at
/// lambda = sqrt(5)/2.
double f_lambda(double lambda);

/// 3 cos(a) + sin(a) on [0, pi/4]: w + 2h of the right-angle tight curve with
/// one endpoint at a rectangle corner.
double lemma3_case_f(double alpha);
/// sqrt(5) cos(a) + (2/sqrt(5)) sin(a) on [0, atan(1/2)]: half the perimeter
/// when the far endpoint is on the right side and the apex on the top side.
double lemma5_case1_f(double alpha);
/// Half the perimeter when both endpoints sit at opposite corners:
/// (4/sqrt(5)) (cos(b + atan(1/2)) + sin(b + atan(1/2))), b in [0, pi/4 - atan(1/2)].
double lemma5_case2_f(double beta);

struct AppendixValues {
  std::optional<double> lemma3_f;
  std::optional<double> lemma5_case1_f;
};

/// Both one-parameter functions at alpha; a field is empty when alpha is
/// outside that function's interval. Throws DomainError outside both.
AppendixValues appendix_case_functions(double alpha);

struct OrientationMin {
  double angle = 0.0;
  double value = 0.0;
};

/// Minimum over the K orientations k*pi/K (k < K) of the curve's bounding
/// box perimeter or perimeter minus longest side. Ties keep the smallest k.
OrientationMin min_over_orientations(const Polyline& curve, Objective objective, std::size_t K);

/// Two unit legs meeting at a right angle, chord horizontal from (0,0).
Polyline lemma3_tight_curve();
/// Two unit legs over a base of length 4/sqrt(5), chord horizontal from (0,0).
Polyline lemma5_tight_curve();

}  // namespace tspn
