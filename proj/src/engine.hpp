#pragma once

// Per-angle rectangle solves shared by the algorithms and the dense-sweep
// oracle. Not part of the public interface.

#include <functional>
#include <span>
#include <vector>

#include "tspn/geom.hpp"
#include "tspn/lp.hpp"
#include "tspn/sweep.hpp"

namespace tspn::detail {

enum class RegionKind { Lines, Rays };

/// Regions translated so that their centroid is the origin, stored SoA and
/// optionally permuted (the permutation fixes the LP processing order).
struct PreparedInstance {
  RegionKind kind = RegionKind::Lines;
  std::vector<double> a, b, c;            // lines
  std::vector<double> px, py, dx, dy;     // rays
  std::vector<std::size_t> original;      // prepared index -> input index
  Point center;
  double scale = 1.0;                     // largest distance from center to a region

  std::size_t size() const { return original.size(); }
  std::size_t rows_per_region() const { return kind == RegionKind::Lines ? 2 : 4; }
};

PreparedInstance prepare(std::span<const Line> lines, std::uint64_t seed, bool shuffle);
PreparedInstance prepare(std::span<const Ray> rays, std::uint64_t seed, bool shuffle);

Vec4 objective_vector(Objective obj);

/// Fills `out` with the structural rows followed by the region rows in frame
/// `angle` (coordinates relative to inst.center). Returns the smallest frame
/// y-coefficient magnitude (lines) or |frame dx| (rays).
double fill_rows(const PreparedInstance& inst, double angle, Objective obj, LpProblem& out,
                 const kernels::Table& k);

/// Index (input order) of the region nearest to vertical in the frame.
std::size_t most_vertical(const PreparedInstance& inst, double angle);

struct AngleOutcome {
  double angle = 0.0;      // actual frame angle (after any nudge)
  double lp_value = 0.0;
  double objective = 0.0;  // per or per - long of rect
  OrientedRect rect;       // world frame coordinates
  std::vector<std::int64_t> basis;
};

class AngleSolver {
 public:
  AngleSolver(const PreparedInstance& inst, Objective obj, const kernels::Table* k = nullptr);

  /// Solves at `angle`, nudging it by +1e-7 while some region is within 1e-9
  /// of vertical in the frame.
  AngleOutcome solve(double angle, std::span<const std::int64_t> warm = {});

 private:
  const PreparedInstance& inst_;
  Objective obj_;
  const kernels::Table& k_;
  LpProblem problem_;
  LpSolver solver_;
};

unsigned resolve_threads(unsigned requested);

/// Runs body(begin, end, worker) over [0, count) in contiguous chunks of
/// `chunk` items spread across `threads` workers. Chunk boundaries do not
/// depend on the thread count.
void parallel_chunks(std::size_t count, std::size_t chunk, unsigned threads,
                     const std::function<void(std::size_t, std::size_t, unsigned)>& body);

/// Orientation sweep over cfg's m angles; argmin of the rectangle objective
/// with ties going to the smallest index.
TourResult run_sweep(const PreparedInstance& inst, const SweepConfig& cfg, Objective obj, Mode mode);

}  // namespace tspn::detail
