#pragma once

// Brute-force references: exhaustive basis enumeration for the rectangle LPs,
// dense orientation sweeps, lower-bound ratio certificates, and clipping-based
// verification of outputs. The solver-backed dense sweep reuses the per-angle
// LP; the basis-enumeration backend shares nothing with it.

#include <span>

#include "tspn/curve_bounds.hpp"
#include "tspn/geom.hpp"
#include "tspn/lp.hpp"
#include "tspn/sweep.hpp"

namespace tspn {

/// Exact optimum by enumerating every basis of tight rows (after removing the
/// lineality space) and keeping the best feasible point; ties go to the
/// lexicographically smallest (x1, y1, x2, y2). Throws TooManyConstraints
/// above `max_constraints` rows and UnboundedObjective when the value is
/// unbounded below.
LpSolution lp_basis_enum(const LpProblem& problem, std::size_t max_constraints = 100);

enum class SweepBackend { Solver, BasisEnum };

struct DenseSweepOptions {
  SweepBackend backend = SweepBackend::Solver;
  unsigned threads = 1;
  /// Angles per warm-started block; results do not depend on the thread count.
  std::size_t block = 64;
};

/// Minimum over the K angles k*pi/K (k < K) of the per-angle optimal
/// rectangle objective. For the perimeter objective and even K only the first
/// half-turn quarter is solved, since the rectangle family repeats every pi/2.
OrientationMin dense_angle_sweep(std::span<const Line> lines, Objective objective, std::size_t K,
                                 const DenseSweepOptions& options = {});
OrientationMin dense_angle_sweep(std::span<const Ray> rays, Objective objective, std::size_t K,
                                 const DenseSweepOptions& options = {});

struct CertifyOptions {
  std::size_t sweep_k = 100000;
  unsigned threads = 1;
  /// Additive allowance on the ratio bound.
  double slack = 1e-3;
};

/// Lower-bound certificate for an algorithm output.
///   tours:      LB = (pi/4) * min rectangle perimeter,   bound (4/pi)(1+eps)
///   line paths: LB = min (per - long) / sqrt(2),         bound sqrt(2)(1+eps)
///   ray paths:  LB = min rectangle perimeter / sqrt(5),  bound sqrt(5)(1+eps)
/// The minima come from a dense sweep. The ratio is absent when LB is zero.
RatioCertificate certify(const TourResult& result, std::span<const Line> lines,
                         const CertifyOptions& options = {});
RatioCertificate certify(const TourResult& result, std::span<const Ray> rays,
                         const CertifyOptions& options = {});

struct Verification {
  bool ok = true;
  /// Largest distance between a region and the output (0 when all meet).
  double max_violation = 0.0;
  std::size_t worst_region = 0;
};

/// Checks the emitted path when present (path modes) and the rectangle
/// otherwise.
Verification verify_output(const TourResult& result, std::span<const Line> lines, double tol = kDefaultTol);
Verification verify_output(const TourResult& result, std::span<const Ray> rays, double tol = kDefaultTol);

Verification verify_rect(const OrientedRect& rect, std::span<const Line> lines, double tol = kDefaultTol);
Verification verify_rect(const OrientedRect& rect, std::span<const Ray> rays, double tol = kDefaultTol);
/// An open or closed polyline (a single vertex is a point).
Verification verify_polyline(std::span<const Point> path, std::span<const Line> lines, double tol = kDefaultTol);
Verification verify_polyline(std::span<const Point> path, std::span<const Ray> rays, double tol = kDefaultTol);

}  // namespace tspn
