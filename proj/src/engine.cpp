#include "engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

namespace tspn::detail {

namespace {

constexpr double kVerticalNudgeBelow = 1e-9;
constexpr double kNudge = 1e-7;

template <class Less, class Same>
std::vector<std::size_t> unique_in_input_order(std::size_t n, Less less, Same same) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), less);
  std::vector<char> dup(n, 0);
  for (std::size_t k = 1; k < n; ++k)
    if (same(idx[k - 1], idx[k])) dup[idx[k]] = 1;
  std::vector<std::size_t> keep;
  keep.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    if (!dup[i]) keep.push_back(i);
  return keep;
}

void permute(std::vector<std::size_t>& keep, std::uint64_t seed, bool shuffle) {
  if (!shuffle) return;
  std::mt19937_64 rng(seed);
  std::shuffle(keep.begin(), keep.end(), rng);
}

// Same rectangle described in the frame rotated by angle - pi.
OrientedRect wrap_half_turn(OrientedRect r) {
  if (r.frame_angle < kPi) return r;
  return {r.frame_angle - kPi, -r.x2, -r.x1, -r.y2, -r.y1};
}

}  // namespace

PreparedInstance prepare(std::span<const Line> lines, std::uint64_t seed, bool shuffle) {
  if (lines.empty()) throw InvalidInput("instance has no lines");
  auto keep = unique_in_input_order(
      lines.size(),
      [&](std::size_t i, std::size_t j) {
        const Line &p = lines[i], &q = lines[j];
        if (p.a() != q.a()) return p.a() < q.a();
        if (p.b() != q.b()) return p.b() < q.b();
        return p.c() < q.c();
      },
      [&](std::size_t i, std::size_t j) { return lines[i].same_as(lines[j]); });
  permute(keep, seed, shuffle);

  PreparedInstance inst;
  inst.kind = RegionKind::Lines;
  double sx = 0.0, sy = 0.0;
  for (std::size_t i : keep) {
    Point f = lines[i].foot();
    sx += f.x;
    sy += f.y;
  }
  inst.center = {sx / static_cast<double>(keep.size()), sy / static_cast<double>(keep.size())};
  inst.original = keep;
  inst.a.reserve(keep.size());
  inst.b.reserve(keep.size());
  inst.c.reserve(keep.size());
  double scale = 0.0;
  for (std::size_t i : keep) {
    const Line& l = lines[i];
    double c = l.c() - (l.a() * inst.center.x + l.b() * inst.center.y);
    inst.a.push_back(l.a());
    inst.b.push_back(l.b());
    inst.c.push_back(c);
    scale = std::max(scale, std::abs(c));
  }
  inst.scale = scale;
  return inst;
}

PreparedInstance prepare(std::span<const Ray> rays, std::uint64_t seed, bool shuffle) {
  if (rays.empty()) throw InvalidInput("instance has no rays");
  auto keep = unique_in_input_order(
      rays.size(),
      [&](std::size_t i, std::size_t j) {
        const Ray &p = rays[i], &q = rays[j];
        if (p.apex().x != q.apex().x) return p.apex().x < q.apex().x;
        if (p.apex().y != q.apex().y) return p.apex().y < q.apex().y;
        if (p.dir().x != q.dir().x) return p.dir().x < q.dir().x;
        return p.dir().y < q.dir().y;
      },
      [&](std::size_t i, std::size_t j) { return rays[i].same_as(rays[j]); });
  permute(keep, seed, shuffle);

  PreparedInstance inst;
  inst.kind = RegionKind::Rays;
  double sx = 0.0, sy = 0.0;
  for (std::size_t i : keep) {
    sx += rays[i].apex().x;
    sy += rays[i].apex().y;
  }
  inst.center = {sx / static_cast<double>(keep.size()), sy / static_cast<double>(keep.size())};
  inst.original = keep;
  double scale = 0.0;
  for (std::size_t i : keep) {
    Point p = rays[i].apex() - inst.center;
    inst.px.push_back(p.x);
    inst.py.push_back(p.y);
    inst.dx.push_back(rays[i].dir().x);
    inst.dy.push_back(rays[i].dir().y);
    scale = std::max(scale, norm(p));
  }
  inst.scale = scale;
  return inst;
}

Vec4 objective_vector(Objective obj) {
  // v = (x1, x2, y1, y2)
  if (obj == Objective::Perimeter) return {-2.0, 2.0, -2.0, 2.0};
  return {-1.0, 1.0, -2.0, 2.0};
}

double fill_rows(const PreparedInstance& inst, double angle, Objective obj, LpProblem& out,
                 const kernels::Table& k) {
  const std::size_t n = inst.size();
  out.objective = objective_vector(obj);
  out.resize(2 + inst.rows_per_region() * n);
  // x2 - x1 >= 0, y2 - y1 >= 0
  out.g[0][0] = -1.0, out.g[1][0] = 1.0, out.g[2][0] = 0.0, out.g[3][0] = 0.0, out.h[0] = 0.0;
  out.g[0][1] = 0.0, out.g[1][1] = 0.0, out.g[2][1] = -1.0, out.g[3][1] = 1.0, out.h[1] = 0.0;
  kernels::RowsOut rows{out.g[0].data() + 2, out.g[1].data() + 2, out.g[2].data() + 2,
                        out.g[3].data() + 2, out.h.data() + 2};
  double cs = std::cos(angle), sn = std::sin(angle);
  if (inst.kind == RegionKind::Lines)
    return k.line_rows({inst.a.data(), inst.b.data(), inst.c.data(), n}, cs, sn, rows);
  return k.ray_rows({inst.px.data(), inst.py.data(), inst.dx.data(), inst.dy.data(), n}, cs, sn, rows);
}

std::size_t most_vertical(const PreparedInstance& inst, double angle) {
  double cs = std::cos(angle), sn = std::sin(angle);
  std::size_t best = 0;
  double best_v = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < inst.size(); ++k) {
    double v = inst.kind == RegionKind::Lines ? std::abs((-inst.a[k]) * sn + inst.b[k] * cs)
                                              : std::abs(inst.dx[k] * cs + inst.dy[k] * sn);
    if (v < best_v) {
      best_v = v;
      best = k;
    }
  }
  return inst.original[best];
}

AngleSolver::AngleSolver(const PreparedInstance& inst, Objective obj, const kernels::Table* k)
    : inst_(inst), obj_(obj), k_(k ? *k : kernels::active()) {}

AngleOutcome AngleSolver::solve(double angle, std::span<const std::int64_t> warm) {
  double min_vertical = fill_rows(inst_, angle, obj_, problem_, k_);
  for (int attempt = 0; min_vertical < kVerticalNudgeBelow && attempt < 16; ++attempt) {
    angle += kNudge;
    min_vertical = fill_rows(inst_, angle, obj_, problem_, k_);
  }
  if (min_vertical < kVerticalNudgeBelow) throw VerticalInFrame(most_vertical(inst_, angle), angle);

  SolveOptions opt;
  opt.priority = warm;
  opt.bound = 1e6 * (1.0 + inst_.scale);
  opt.kernels = &k_;
  LpSolution sol = solver_.solve(problem_, opt);
  if (!sol.optimal()) throw NumericallyIll("rectangle LP reported infeasible");

  Point shift = rotate_into_frame(inst_.center, angle);
  OrientedRect rect{angle, sol.point[kX1] + shift.x, sol.point[kX2] + shift.x,
                    sol.point[kY1] + shift.y, sol.point[kY2] + shift.y};
  // Clamp round-off inversions of degenerate sides.
  if (rect.x2 < rect.x1) rect.x2 = rect.x1 = 0.5 * (rect.x1 + rect.x2);
  if (rect.y2 < rect.y1) rect.y2 = rect.y1 = 0.5 * (rect.y1 + rect.y2);
  rect = wrap_half_turn(rect);

  AngleOutcome out;
  out.angle = rect.frame_angle;
  out.lp_value = sol.value;
  out.objective = obj_ == Objective::Perimeter ? rect.perimeter() : rect.three_sides();
  out.rect = rect;
  out.basis = std::move(sol.basis);
  return out;
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

void parallel_chunks(std::size_t count, std::size_t chunk, unsigned threads,
                     const std::function<void(std::size_t, std::size_t, unsigned)>& body) {
  std::size_t nchunks = (count + chunk - 1) / chunk;
  threads = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(nchunks, 1)));
  if (threads <= 1) {
    for (std::size_t c = 0; c < nchunks; ++c) body(c * chunk, std::min(count, (c + 1) * chunk), 0);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t c = w; c < nchunks; c += threads)
          body(c * chunk, std::min(count, (c + 1) * chunk), w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

TourResult run_sweep(const PreparedInstance& inst, const SweepConfig& cfg, Objective obj, Mode mode) {
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw InvalidInput("epsilon must lie in (0, 1)");
  if (cfg.m == 0) throw InvalidInput("sweep needs at least one direction");

  std::vector<AngleOutcome> outcomes(cfg.m);
  unsigned threads = resolve_threads(cfg.threads);
  std::vector<std::unique_ptr<AngleSolver>> solvers(threads);
  parallel_chunks(cfg.m, 8, threads, [&](std::size_t begin, std::size_t end, unsigned w) {
    if (!solvers[w]) solvers[w] = std::make_unique<AngleSolver>(inst, obj);
    for (std::size_t i = begin; i < end; ++i) {
      outcomes[i] = solvers[w]->solve(cfg.angle(i));
      outcomes[i].basis.clear();
    }
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < outcomes.size(); ++i)
    if (outcomes[i].objective < outcomes[best].objective) best = i;

  TourResult r;
  r.rect = outcomes[best].rect;
  r.objective_value = outcomes[best].objective;
  r.mode = mode;
  r.winning_angle_index = best;
  r.m = cfg.m;
  r.epsilon = cfg.epsilon;
  r.seed = cfg.seed;
  r.degenerate = r.rect.perimeter() <= 1e-9 * std::max(1.0, inst.scale);
  return r;
}

}  // namespace tspn::detail
