#pragma once

// Four-variable linear programs over rectangle extents v = (x1, x2, y1, y2):
// minimize objective.v subject to g.v >= h for every row.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "tspn/kernels.hpp"

namespace tspn {

using Vec4 = std::array<double, 4>;

enum Var : int { kX1 = 0, kX2 = 1, kY1 = 2, kY2 = 3 };

struct LpProblem {
  Vec4 objective{};
  std::array<std::vector<double>, 4> g;
  std::vector<double> h;

  std::size_t size() const { return h.size(); }
  void resize(std::size_t n);
  void reserve(std::size_t n);
  void add(const Vec4& row, double rhs);
  Vec4 row(std::size_t i) const { return {g[0][i], g[1][i], g[2][i], g[3][i]}; }

  /// An empty program holding only x1 <= x2 and y1 <= y2.
  static LpProblem rectangle(const Vec4& objective);
};

enum class LpStatus { Optimal, Infeasible };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Vec4 point{};
  double value = 0.0;
  /// Rows whose hyperplanes pin the returned point, most recent first. Box
  /// rows are reported as negative ids (see box_row_id).
  std::vector<std::int64_t> basis;
  /// True when the optimal face is unbounded and the point was chosen by the
  /// bounded-face fallback instead of the lexicographic rule.
  bool unbounded_face = false;

  bool optimal() const { return status == LpStatus::Optimal; }
};

/// Id of the implicit bounding-box row v[var] >= -bound (upper = false) or
/// v[var] <= bound (upper = true).
constexpr std::int64_t box_row_id(int var, bool upper) { return -1 - 2 * var - (upper ? 1 : 0); }

struct SolveOptions {
  /// Processing order: rows listed in `priority` first, then every row in
  /// stored order, or in a permutation drawn from this seed when set. Large
  /// programs seed their first subset with `priority` and draw it from the seed.
  std::optional<std::uint64_t> shuffle_seed;
  std::span<const std::int64_t> priority;
  /// Half-width of the implicit box |v_k| <= bound. Zero picks 1e6 times the
  /// largest |h|/|g| ratio (at least 1e6).
  double bound = 0.0;
  /// Relative feasibility tolerance on every row.
  double tol = 1e-11;
  const kernels::Table* kernels = nullptr;
};

/// Randomized incremental (Seidel-style) LP in four variables, expected O(n).
/// Programs above a few hundred rows are solved on random subsets grown by
/// their violated rows (Clarkson-style), so each round costs one linear scan.
/// Among optimal points returns the lexicographically smallest under the order
/// (x1, y1, x2, y2). When that is not attained inside the implicit box the
/// lexicographically largest is used instead, and if neither is attained the
/// midpoint of the two.
/// Throws UnboundedObjective when the objective value itself is unbounded and
/// NumericallyIll on non-finite intermediate results.
LpSolution solve(const LpProblem& problem, const SolveOptions& options = {});

/// Reusable scratch for repeated solves (one per thread).
class LpSolver {
 public:
  LpSolver();
  ~LpSolver();
  LpSolver(LpSolver&&) noexcept;
  LpSolver& operator=(LpSolver&&) noexcept;

  LpSolution solve(const LpProblem& problem, const SolveOptions& options = {});

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace tspn
