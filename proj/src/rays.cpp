#include "tspn/rays.hpp"

#include "engine.hpp"

namespace tspn {

LpProblem build_rays_lp(std::span<const Ray> rays, double angle) {
  detail::PreparedInstance inst;
  inst.kind = detail::RegionKind::Rays;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    inst.px.push_back(rays[i].apex().x);
    inst.py.push_back(rays[i].apex().y);
    inst.dx.push_back(rays[i].dir().x);
    inst.dy.push_back(rays[i].dir().y);
    inst.original.push_back(i);
  }
  LpProblem p;
  double min_vertical = detail::fill_rows(inst, angle, Objective::Perimeter, p, kernels::active());
  if (!rays.empty() && min_vertical < 1e-12) throw VerticalInFrame(detail::most_vertical(inst, angle), angle);
  return p;
}

std::vector<Ray> dedupe_rays(std::span<const Ray> rays) {
  if (rays.empty()) return {};
  auto inst = detail::prepare(rays, 0, false);
  std::vector<Ray> out;
  out.reserve(inst.size());
  for (std::size_t i : inst.original) out.push_back(rays[i]);
  return out;
}

TourResult tour_rays(std::span<const Ray> rays, const SweepConfig& cfg) {
  auto inst = detail::prepare(rays, cfg.seed, true);
  return detail::run_sweep(inst, cfg, Objective::Perimeter, Mode::Tour);
}

SweepConfig ray_path_config(double epsilon, std::uint64_t seed) {
  return SweepConfig::tour(epsilon, seed);
}

TourResult path_rays(std::span<const Ray> rays, const SweepConfig& cfg) {
  auto inst = detail::prepare(rays, cfg.seed, true);
  TourResult r = detail::run_sweep(inst, cfg, Objective::Perimeter, Mode::Path);
  auto q = r.rect.corners();
  r.path = {q[0], q[1], q[2], q[3], q[0]};
  return r;
}

}  // namespace tspn
