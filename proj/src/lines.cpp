#include "tspn/lines.hpp"

#include <cmath>

#include "engine.hpp"

namespace tspn {

LpProblem build_lines_lp(std::span<const Line> lines, double angle, Mode mode) {
  detail::PreparedInstance inst;
  inst.kind = detail::RegionKind::Lines;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    inst.a.push_back(lines[i].a());
    inst.b.push_back(lines[i].b());
    inst.c.push_back(lines[i].c());
    inst.original.push_back(i);
  }
  LpProblem p;
  Objective obj = mode == Mode::Tour ? Objective::Perimeter : Objective::ThreeSides;
  double min_vertical = detail::fill_rows(inst, angle, obj, p, kernels::active());
  if (!lines.empty() && min_vertical < 1e-12) throw VerticalInFrame(detail::most_vertical(inst, angle), angle);
  return p;
}

std::vector<Line> dedupe_lines(std::span<const Line> lines) {
  if (lines.empty()) return {};
  auto inst = detail::prepare(lines, 0, false);
  std::vector<Line> out;
  out.reserve(inst.size());
  for (std::size_t i : inst.original) out.push_back(lines[i]);
  return out;
}

std::vector<Point> three_side_path(const OrientedRect& rect) {
  auto q = rect.corners();
  std::array<Point, 4> seq = rect.width() > rect.height()
                                 ? std::array<Point, 4>{q[3], q[0], q[1], q[2]}   // skip top q3-q4
                                 : std::array<Point, 4>{q[2], q[3], q[0], q[1]};  // skip right q2-q3
  std::vector<Point> path;
  for (Point p : seq)
    if (path.empty() || !(path.back() == p)) path.push_back(p);
  return path;
}

TourResult tour_lines(std::span<const Line> lines, const SweepConfig& cfg) {
  auto inst = detail::prepare(lines, cfg.seed, true);
  return detail::run_sweep(inst, cfg, Objective::Perimeter, Mode::Tour);
}

TourResult path_lines(std::span<const Line> lines, const SweepConfig& cfg) {
  auto inst = detail::prepare(lines, cfg.seed, true);
  TourResult r = detail::run_sweep(inst, cfg, Objective::ThreeSides, Mode::Path);
  r.path = three_side_path(r.rect);
  return r;
}

}  // namespace tspn
