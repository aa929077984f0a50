#include "tspn/lp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "tspn/error.hpp"

namespace tspn {

void LpProblem::resize(std::size_t n) {
  for (auto& col : g) col.resize(n);
  h.resize(n);
}

void LpProblem::reserve(std::size_t n) {
  for (auto& col : g) col.reserve(n);
  h.reserve(n);
}

void LpProblem::add(const Vec4& row, double rhs) {
  for (int k = 0; k < 4; ++k) g[k].push_back(row[k]);
  h.push_back(rhs);
}

LpProblem LpProblem::rectangle(const Vec4& objective) {
  LpProblem p;
  p.objective = objective;
  p.add({-1.0, 1.0, 0.0, 0.0}, 0.0);  // x2 - x1 >= 0
  p.add({0.0, 0.0, -1.0, 1.0}, 0.0);  // y2 - y1 >= 0
  return p;
}

namespace {

// Relative tolerance for degeneracy and emptiness decisions inside the
// recursion; looser than the violation test because it compares quantities
// produced by cancellation.
constexpr double kDegenerateTol = 1e-9;
constexpr double kObjectiveZero = 1e-11;
constexpr int kMaxObjectives = 5;
// Above this many rows the solver works on a sampled subset.
constexpr std::size_t kSampleAbove = 512;

struct Basis {
  std::array<std::int64_t, 4> ids{};
  int size = 0;
  void push_front(std::int64_t id) {
    for (int k = std::min(size, 3); k > 0; --k) ids[k] = ids[k - 1];
    ids[0] = id;
    size = std::min(size + 1, 4);
  }
};

struct RowsRef {
  kernels::RowsView view;
  const double* h;
  const double* scale;       // per-row max |g|; nullptr means 1
  const std::int64_t* id;    // nullptr means the row index
  std::size_t n;

  double row_scale(std::size_t i) const { return scale ? scale[i] : 1.0; }
  std::int64_t row_id(std::size_t i) const { return id ? id[i] : static_cast<std::int64_t>(i); }
  Vec4 row(std::size_t i) const { return {view.g0[i], view.g1[i], view.g2[i], view.g3[i]}; }
};

// Owned SoA rows for one recursion depth.
struct RowStore {
  std::array<std::vector<double>, 4> g;
  std::vector<double> h, thr, scale;
  std::vector<std::int64_t> id;

  void clear() {
    for (auto& c : g) c.clear();
    h.clear();
    thr.clear();
    scale.clear();
    id.clear();
  }
  void push(const Vec4& row, double rhs, double threshold, std::int64_t row_id) {
    for (int k = 0; k < 4; ++k) g[k].push_back(row[k]);
    h.push_back(rhs);
    thr.push_back(threshold);
    id.push_back(row_id);
  }
  RowsRef ref(bool with_scale) const {
    return {{g[0].data(), g[1].data(), g[2].data(), g[3].data(), thr.data()},
            h.data(),
            with_scale ? scale.data() : nullptr,
            id.data(),
            h.size()};
  }
};

// The subproblem on the intersection of the hyperplanes pivoted so far.
struct Frame {
  std::array<bool, 4> free{true, true, true, true};
  int dim = 4;
  Vec4 lo{}, hi{};
  std::array<Vec4, kMaxObjectives> obj{};
  std::array<double, kMaxObjectives> obj_ref{};
  int nobj = 0;
};

struct LevelResult {
  bool feasible = false;
  Vec4 v{};
  Basis basis;
};

double dot4(const Vec4& a, const Vec4& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]; }

// Sign of the first objective (in lexicographic order) that depends on `var`.
int objective_sign(const Frame& f, int var) {
  for (int o = 0; o < f.nobj; ++o) {
    double c = f.obj[o][var];
    if (c > 0.0) return 1;
    if (c < 0.0) return -1;
  }
  return 1;
}

}  // namespace

struct LpSolver::Impl {
  RowStore top;
  std::vector<double> top_thr, top_scale;
  std::array<RowStore, 4> levels;  // indexed by the dimension of the subproblem
  const kernels::Table* k = nullptr;
  double tol = 1e-11;

  // Working sets for large programs, one per sampling depth.
  struct Sample {
    RowStore rows;
    std::vector<std::uint8_t> in;
  };
  std::vector<std::unique_ptr<Sample>> samples;
  std::vector<std::int64_t> head;  // top-level rows to seed the working set with
  std::uint64_t sample_seed = 0;

  LevelResult solve_top(const RowsRef& rows, const Frame& f, std::size_t depth = 0);
  LevelResult solve_sampled(const RowsRef& rows, const Frame& f, std::size_t depth);
  LevelResult solve_level(const RowsRef& rows, const Frame& f);
  LevelResult solve_line(const RowsRef& rows, const Frame& f);
  LpSolution solve_once(const LpProblem& p, const RowsRef& rows, double bound, bool lexmax);
};

LpSolver::LpSolver() : impl_(std::make_unique<Impl>()) {}
LpSolver::~LpSolver() = default;
LpSolver::LpSolver(LpSolver&&) noexcept = default;
LpSolver& LpSolver::operator=(LpSolver&&) noexcept = default;

LevelResult LpSolver::Impl::solve_line(const RowsRef& rows, const Frame& f) {
  int j = 0;
  while (!f.free[j]) ++j;
  double lo = f.lo[j], hi = f.hi[j];
  std::int64_t lo_id = box_row_id(j, false), hi_id = box_row_id(j, true);
  const double* col = j == 0 ? rows.view.g0 : j == 1 ? rows.view.g1 : j == 2 ? rows.view.g2 : rows.view.g3;
  for (std::size_t i = 0; i < rows.n; ++i) {
    double a = col[i];
    if (a > 0.0) {
      double b = rows.h[i] / a;
      if (b > lo) {
        lo = b;
        lo_id = rows.row_id(i);
      }
    } else if (a < 0.0) {
      double b = rows.h[i] / a;
      if (b < hi) {
        hi = b;
        hi_id = rows.row_id(i);
      }
    }
  }
  LevelResult r;
  if (lo > hi) {
    if (lo - hi > kDegenerateTol * (1.0 + std::abs(lo) + std::abs(hi))) return r;
    r.v[j] = 0.5 * (lo + hi);
    r.basis.push_front(hi_id);
    r.basis.push_front(lo_id);
  } else if (objective_sign(f, j) > 0) {
    r.v[j] = lo;
    r.basis.push_front(lo_id);
  } else {
    r.v[j] = hi;
    r.basis.push_front(hi_id);
  }
  r.feasible = true;
  return r;
}

LevelResult LpSolver::Impl::solve_level(const RowsRef& rows, const Frame& f) {
  if (f.dim == 1) return solve_line(rows, f);

  LevelResult r;
  for (int j = 0; j < 4; ++j) {
    if (!f.free[j]) continue;
    bool up = objective_sign(f, j) < 0;
    r.v[j] = up ? f.hi[j] : f.lo[j];
  }

  RowStore& sub = levels[f.dim - 1];
  std::size_t i = 0;
  while (true) {
    i = k->first_violation(rows.view, i, rows.n, r.v);
    if (i >= rows.n) break;

    // Pivot on row i: eliminate its largest free coefficient.
    Vec4 gi = rows.row(i);
    double hi_ = rows.h[i];
    int j = -1;
    double best = 0.0;
    for (int c = 0; c < 4; ++c) {
      if (f.free[c] && std::abs(gi[c]) > best) {
        best = std::abs(gi[c]);
        j = c;
      }
    }
    if (j < 0) {
      // A row with no free coefficients can only be violated if it is
      // unsatisfiable on this subspace.
      if (hi_ > kDegenerateTol * (rows.row_scale(i) + std::abs(hi_))) return LevelResult{};
      ++i;
      continue;
    }

    Frame sf = f;
    sf.free[j] = false;
    sf.dim = f.dim - 1;
    for (int o = 0; o < f.nobj; ++o) {
      double t = f.obj[o][j] / gi[j];
      for (int c = 0; c < 4; ++c) {
        double val = f.obj[o][c] - t * gi[c];
        sf.obj[o][c] = (c == j || std::abs(val) <= kObjectiveZero * f.obj_ref[o]) ? 0.0 : val;
      }
    }

    sub.clear();
    bool empty = false;
    auto project = [&](const Vec4& g, double h, double ref, std::int64_t id) {
      double t = g[j] / gi[j];
      Vec4 gp;
      double m = 0.0;
      for (int c = 0; c < 4; ++c) {
        gp[c] = c == j ? 0.0 : g[c] - t * gi[c];
        m = std::max(m, std::abs(gp[c]));
      }
      double hp = h - t * hi_;
      if (m <= 1e-12 * ref) {
        if (hp > kDegenerateTol * (ref + std::abs(h))) empty = true;
        return;
      }
      for (double& c : gp) c /= m;
      hp /= m;
      sub.push(gp, hp, hp - tol * (1.0 + std::abs(hp)), id);
    };
    Vec4 e{};
    e[j] = 1.0;
    project(e, f.lo[j], 1.0, box_row_id(j, false));
    e[j] = -1.0;
    project(e, -f.hi[j], 1.0, box_row_id(j, true));
    for (std::size_t p = 0; p < i && !empty; ++p) project(rows.row(p), rows.h[p], rows.row_scale(p), rows.row_id(p));
    if (empty) return LevelResult{};

    LevelResult s = solve_level(sub.ref(false), sf);
    if (!s.feasible) return s;
    double rest = hi_;
    for (int c = 0; c < 4; ++c)
      if (c != j) rest -= gi[c] * s.v[c];
    s.v[j] = rest / gi[j];
    r.v = s.v;
    r.basis = s.basis;
    r.basis.push_front(rows.row_id(i));
    ++i;
  }
  r.feasible = true;
  return r;
}

LevelResult LpSolver::Impl::solve_top(const RowsRef& rows, const Frame& f, std::size_t depth) {
  return rows.n > kSampleAbove ? solve_sampled(rows, f, depth) : solve_level(rows, f);
}

// Iterative sampling: solve on a random subset of about 4 sqrt(n) rows, add
// rows the subset optimum violates, and repeat. The lexicographic optimum is
// unique, so once nothing is violated it is the optimum of the full program.
// Subsets are solved the same way until they are small.
LevelResult LpSolver::Impl::solve_sampled(const RowsRef& rows, const Frame& f, std::size_t depth) {
  const std::size_t n = rows.n;
  const auto root = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  if (samples.size() <= depth) samples.resize(depth + 1);
  if (!samples[depth]) samples[depth] = std::make_unique<Sample>();
  Sample& smp = *samples[depth];
  smp.in.assign(n, 0);
  smp.rows.clear();
  auto add = [&](std::size_t i) {
    if (smp.in[i]) return false;
    smp.in[i] = 1;
    smp.rows.push(rows.row(i), rows.h[i], rows.view.thr[i], rows.row_id(i));
    smp.rows.scale.push_back(rows.row_scale(i));
    return true;
  };
  if (depth == 0)
    for (std::int64_t id : head)
      if (id >= 0 && static_cast<std::size_t>(id) < n) add(static_cast<std::size_t>(id));
  std::mt19937_64 rng(sample_seed + depth);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t t = 0; t < 4 * root; ++t) add(pick(rng));

  const std::size_t cap = 2 * root;
  while (true) {
    LevelResult r = solve_top(smp.rows.ref(true), f, depth + 1);
    if (!r.feasible) return r;
    std::size_t added = 0;
    for (std::size_t i = k->first_violation(rows.view, 0, n, r.v); i < n && added < cap;
         i = k->first_violation(rows.view, i + 1, n, r.v))
      if (add(i)) ++added;
    if (added == 0) return r;
  }
}

LpSolution LpSolver::Impl::solve_once(const LpProblem& p, const RowsRef& rows, double bound, bool lexmax) {
  Frame f;
  f.lo.fill(-bound);
  f.hi.fill(bound);
  f.obj[0] = p.objective;
  double cref = std::max({std::abs(p.objective[0]), std::abs(p.objective[1]),
                          std::abs(p.objective[2]), std::abs(p.objective[3])});
  f.obj_ref[0] = cref > 0.0 ? cref : 1.0;
  const int order[4] = {kX1, kY1, kX2, kY2};
  for (int o = 0; o < 4; ++o) {
    Vec4 e{};
    e[order[o]] = lexmax ? -1.0 : 1.0;
    f.obj[o + 1] = e;
    f.obj_ref[o + 1] = 1.0;
  }
  f.nobj = kMaxObjectives;

  LevelResult r = solve_top(rows, f);
  LpSolution sol;
  if (!r.feasible) return sol;
  for (double x : r.v)
    if (!std::isfinite(x)) throw NumericallyIll("non-finite LP iterate");
  sol.status = LpStatus::Optimal;
  sol.point = r.v;
  sol.value = dot4(p.objective, r.v);
  sol.basis.assign(r.basis.ids.begin(), r.basis.ids.begin() + r.basis.size);
  return sol;
}

LpSolution LpSolver::solve(const LpProblem& p, const SolveOptions& opt) {
  Impl& s = *impl_;
  s.k = opt.kernels ? opt.kernels : &kernels::active();
  s.tol = opt.tol;
  const std::size_t n = p.size();
  for (const auto& col : p.g)
    if (col.size() != n) throw InvalidInput("LP columns have inconsistent lengths");

  // Per-row scale, trivially infeasible rows, and the automatic box size.
  s.top_scale.resize(n);
  double ratio = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double m = std::max({std::abs(p.g[0][i]), std::abs(p.g[1][i]), std::abs(p.g[2][i]), std::abs(p.g[3][i])});
    if (!std::isfinite(m) || !std::isfinite(p.h[i])) throw InvalidInput("LP coefficients must be finite");
    s.top_scale[i] = m;
    if (m == 0.0) {
      if (p.h[i] > 0.0) return LpSolution{};
      continue;
    }
    ratio = std::max(ratio, std::abs(p.h[i]) / m);
  }
  double bound = opt.bound > 0.0 ? opt.bound : 1e6 * std::max(1.0, ratio);

  RowsRef rows;
  const bool sampled = n > kSampleAbove;
  s.head.assign(opt.priority.begin(), opt.priority.end());
  s.sample_seed = opt.shuffle_seed.value_or(0x9e3779b97f4a7c15ULL);
  bool reorder = !sampled && (opt.shuffle_seed.has_value() || !opt.priority.empty());
  if (!reorder) {
    s.top_thr.resize(n);
    s.k->thresholds(p.h.data(), s.top_scale.data(), s.top_thr.data(), n, s.tol);
    rows = {{p.g[0].data(), p.g[1].data(), p.g[2].data(), p.g[3].data(), s.top_thr.data()},
            p.h.data(), s.top_scale.data(), nullptr, n};
  } else {
    std::vector<std::int64_t> order;
    order.reserve(n + opt.priority.size());
    for (std::int64_t id : opt.priority)
      if (id >= 0 && static_cast<std::size_t>(id) < n) order.push_back(id);
    std::size_t head = order.size();
    for (std::size_t i = 0; i < n; ++i) order.push_back(static_cast<std::int64_t>(i));
    if (opt.shuffle_seed) {
      std::mt19937_64 rng(*opt.shuffle_seed);
      std::shuffle(order.begin() + static_cast<std::ptrdiff_t>(head), order.end(), rng);
    }
    s.top.clear();
    for (std::int64_t id : order) {
      auto i = static_cast<std::size_t>(id);
      s.top.push(p.row(i), p.h[i], 0.0, id);
      s.top.scale.push_back(s.top_scale[i]);
    }
    s.k->thresholds(s.top.h.data(), s.top.scale.data(), s.top.thr.data(), s.top.h.size(), s.tol);
    rows = s.top.ref(true);
  }

  auto touches = [&](const LpSolution& sol, double b) {
    for (double x : sol.point)
      if (std::abs(x) >= b * (1.0 - 1e-9)) return true;
    return false;
  };

  LpSolution lexmin = s.solve_once(p, rows, bound, false);
  if (!lexmin.optimal() || !touches(lexmin, bound)) return lexmin;

  LpSolution wider = s.solve_once(p, rows, 4.0 * bound, false);
  if (!wider.optimal() || wider.value < lexmin.value - 1e-6 * (1.0 + std::abs(lexmin.value)))
    throw UnboundedObjective();

  LpSolution lexmax = s.solve_once(p, rows, bound, true);
  lexmax.unbounded_face = true;
  if (lexmax.optimal() && !touches(lexmax, bound)) return lexmax;

  auto midpoint = [&](const LpSolution& lo, const LpSolution& hi) {
    LpSolution mid = lo;
    mid.unbounded_face = true;
    mid.basis.clear();
    if (hi.optimal())
      for (int c = 0; c < 4; ++c) mid.point[c] = 0.5 * (lo.point[c] + hi.point[c]);
    mid.value = dot4(p.objective, mid.point);
    return mid;
  };
  LpSolution mid = midpoint(lexmin, lexmax);

  // Coordinates at box scale cost precision in the value; shrink the box
  // toward the data scale while the optimum stays unchanged.
  const double floor_bound = 4.0 * std::max(1.0, ratio);
  for (int it = 0; it < 4 && bound > floor_bound; ++it) {
    double m = 0.0;
    for (double x : mid.point) m = std::max(m, std::abs(x));
    double nb = std::max(floor_bound, 4.0 * m);
    if (nb >= 0.5 * bound) break;
    LpSolution lo = s.solve_once(p, rows, nb, false);
    if (!lo.optimal() || lo.value > lexmin.value + 1e-6 * (1.0 + std::abs(lexmin.value))) break;
    bound = nb;
    lexmin = lo;
    if (!touches(lo, bound)) {
      lo.unbounded_face = true;
      return lo;
    }
    LpSolution hi = s.solve_once(p, rows, bound, true);
    mid = midpoint(lo, hi);
  }
  return mid;
}

LpSolution solve(const LpProblem& problem, const SolveOptions& options) {
  LpSolver solver;
  return solver.solve(problem, options);
}

}  // namespace tspn
