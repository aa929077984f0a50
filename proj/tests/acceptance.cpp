// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero when any fails. Pass criterion numbers as arguments to run a
// subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "support.hpp"
#include "tspn/curve_bounds.hpp"
#include "tspn/io.hpp"
#include "tspn/lines.hpp"
#include "tspn/oracles.hpp"
#include "tspn/rays.hpp"
#include "tspn/svg.hpp"

using namespace tspn;
using namespace tspn::test;

namespace {

// Tolerances and sizes, fixed here.
constexpr double kTourEps = 1.0 / 200;
constexpr double kLinePathEps = 1.0 / 250;
constexpr double kRayPathEps = 1.0 / 1000;
constexpr double kRatioSlack = 1e-3;
constexpr double kPathAbsSlack = 1e-6;
constexpr double kRayPathFactor = 2.241;
constexpr std::size_t kDenseK = 100000;
constexpr std::size_t kOrientK = 1000000;
constexpr double kTightTol = 1e-9;
constexpr double kOrientTol = 1e-6;
constexpr double kSlackRel = 1e-9;
constexpr double kLpRel = 1e-9;
constexpr double kFdStep = 1e-6;
constexpr double kScalingFactor = 2.5;
constexpr double kCriterion1Seconds = 300;
constexpr double kCriterion5Seconds = 30;
constexpr double kMillionSeconds = 60;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

std::size_t between(Rng& rng, std::size_t lo, std::size_t hi) { return lo + rng() % (hi - lo + 1); }

CertifyOptions dense_options() {
  CertifyOptions o;
  o.sweep_k = kDenseK;
  o.threads = 1;
  o.slack = kRatioSlack;
  return o;
}

Outcome criterion1() {
  auto t0 = Clock::now();
  Rng rng(1001);
  double worst = 0;
  int failed = 0;
  for (int i = 0; i < 200; ++i) {
    auto lines = random_lines(rng, between(rng, 5, 100));
    TourResult r = tour_lines(lines, SweepConfig::tour(kTourEps, i));
    if (!verify_output(r, lines).ok) ++failed;
    RatioCertificate c = certify(r, lines, dense_options());
    if (!c.passed()) ++failed;
    if (c.ratio) worst = std::max(worst, *c.ratio);
  }
  double secs = seconds_since(t0);
  double bound = 4 / kPi * (1 + kTourEps) + kRatioSlack;
  return {failed == 0 && secs < kCriterion1Seconds,
          fmt("200 line tours, worst ratio %.6f <= %.6f, %g failures, %.1f s (limit 300 s)", worst, bound, failed, secs)};
}

Outcome criterion2() {
  auto t0 = Clock::now();
  Rng rng(1002);
  double worst = 0;
  int failed = 0;
  for (int i = 0; i < 200; ++i) {
    auto rays = random_rays(rng, between(rng, 5, 100));
    TourResult r = tour_rays(rays, SweepConfig::tour(kTourEps, i));
    if (!verify_output(r, rays).ok) ++failed;
    RatioCertificate c = certify(r, rays, dense_options());
    if (!c.passed()) ++failed;
    if (c.ratio) worst = std::max(worst, *c.ratio);
  }
  // Apex outside an intersecting rectangle must satisfy the encoding.
  OrientedRect unit{0.0, 0, 1, 0, 1};
  LpProblem p = build_rays_lp(std::vector<Ray>{Ray::make({2, 0.5}, {-1, 0})}, 0.0);
  bool accepted = true;
  for (std::size_t k = 0; k < p.size(); ++k) {
    Vec4 g = p.row(k);
    if (g[0] * unit.x1 + g[1] * unit.x2 + g[2] * unit.y1 + g[3] * unit.y2 < p.h[k]) accepted = false;
  }
  double bound = 4 / kPi * (1 + kTourEps) + kRatioSlack;
  return {failed == 0 && accepted,
          fmt("200 ray tours, worst ratio %.6f <= %.6f, %g failures, %.1f s; ", worst, bound, failed, seconds_since(t0)) +
              (accepted ? "apex-outside instance accepted" : "apex-outside instance rejected")};
}

Outcome criterion3() {
  Rng rng(1003);
  double worst = 0;
  int failed = 0, missed = 0;
  for (int i = 0; i < 200; ++i) {
    auto lines = random_lines(rng, between(rng, 5, 100));
    TourResult r = path_lines(lines, SweepConfig::path(kLinePathEps, i));
    if (!verify_output(r, lines).ok) ++missed;
    double dense = dense_angle_sweep(lines, Objective::ThreeSides, kDenseK).value;
    double limit = (1 + kLinePathEps) * dense + kPathAbsSlack;
    if (r.objective_value > limit) ++failed;
    if (dense > 0) worst = std::max(worst, r.objective_value / dense);
  }
  return {failed == 0 && missed == 0,
          fmt("200 line paths, worst (per-long)/dense %.6f vs 1+1/250 = %.6f, %g over the limit, %g paths missing a line",
              worst, 1 + kLinePathEps, failed, missed)};
}

// Two rays leaving the ends of segment ab outward along it plus rays crossing
// ab; |ab| is then the optimal path length.
std::vector<Ray> segment_family(Rng& rng, Point a, Point b, std::size_t n) {
  Point u = (b - a) * (1.0 / distance(a, b));
  std::vector<Ray> out{Ray::make(a, u * -1.0), Ray::make(b, u)};
  while (out.size() < n) {
    Point x = a + (b - a) * uniform(rng, 0, 1);
    Point d = Ray::from_angle({0, 0}, uniform(rng, 0, 2 * kPi)).dir();
    out.push_back(Ray::make(x - d * uniform(rng, 0, 5), d));
  }
  return out;
}

Outcome criterion4() {
  Rng rng(1004);
  double worst_known = 0, worst_dense = 0;
  int failed = 0;
  for (int i = 0; i < 100; ++i) {
    Point a{uniform(rng, -5, 5), uniform(rng, -5, 5)};
    Point b = a + Ray::from_angle({0, 0}, uniform(rng, 0, 2 * kPi)).dir() * uniform(rng, 0.5, 5);
    auto rays = segment_family(rng, a, b, between(rng, 3, 40));
    TourResult r = path_rays(rays, SweepConfig::tour(kRayPathEps, i));
    double len = distance(a, b);
    if (!verify_output(r, rays).ok) ++failed;
    if (r.objective_value > kRayPathFactor * len) ++failed;
    double dense = dense_angle_sweep(rays, Objective::Perimeter, kDenseK).value;
    if (r.objective_value > (1 + kRayPathEps) * dense + kPathAbsSlack) ++failed;
    worst_known = std::max(worst_known, r.objective_value / len);
    worst_dense = std::max(worst_dense, r.objective_value / dense);
  }
  return {failed == 0, fmt("100 segment families, worst per/len %.6f <= 2.241, worst per/dense %.6f <= %.6f, %g failures",
                           worst_known, worst_dense, 1 + kRayPathEps, failed)};
}

Outcome criterion5() {
  auto t0 = Clock::now();
  Polyline c = lemma3_tight_curve();
  BoundCheck b = three_side_bound(c);
  double value_err = std::abs(b.value - 2 * std::sqrt(2.0));
  OrientationMin m = min_over_orientations(c, Objective::ThreeSides, kOrientK);
  double gain = b.value - m.value;
  double secs = seconds_since(t0);
  return {value_err <= kTightTol && std::abs(b.slack) <= kTightTol && gain <= kOrientTol && secs < kCriterion5Seconds,
          fmt("w+2h - 2*sqrt(2) = %.2e, best orientation improves by %.2e (limit 1e-6), %.2f s", value_err, gain, secs)};
}

template <class F>
bool max_between(F f, double x) {
  auto d = [&](double t) { return (f(t + kFdStep) - f(t - kFdStep)) / (2 * kFdStep); };
  return d(x - 10 * kFdStep) > 0 && d(x + 10 * kFdStep) < 0;
}

Outcome criterion6() {
  Polyline c = lemma5_tight_curve();
  BoundCheck b = perimeter_bound(c);
  double value_err = std::abs(b.value - 2 * std::sqrt(5.0));
  OrientationMin m = min_over_orientations(c, Objective::Perimeter, kOrientK);
  double gain = b.value - m.value;
  bool s1 = max_between(lemma3_case_f, std::atan(1.0 / 3));
  bool s2 = max_between(lemma5_case1_f, std::atan(2.0 / 5));
  bool s3 = max_between(f_lambda, std::sqrt(5.0) / 2);
  bool ok = value_err <= kTightTol && std::abs(b.slack) <= kTightTol && gain <= kOrientTol && s1 && s2 && s3;
  return {ok, fmt("per - 2*sqrt(5) = %.2e, best orientation improves by %.2e", value_err, gain) +
                  " stationary points atan(1/3) " + (s1 ? "ok" : "missing") + ", atan(2/5) " + (s2 ? "ok" : "missing") +
                  ", sqrt(5)/2 " + (s3 ? "ok" : "missing")};
}

Outcome criterion7() {
  Rng rng(1007);
  int bad3 = 0, bad5 = 0;
  double min3 = INFINITY, min5 = INFINITY;
  for (int i = 0; i < 10000; ++i) {
    BoundCheck a = three_side_bound(random_polyline(rng, between(rng, 2, 100), uniform(rng, 0.01, 100)));
    if (!a.holds(kSlackRel)) ++bad3;
    min3 = std::min(min3, a.slack / a.length);
    BoundCheck b = perimeter_bound(random_polyline(rng, between(rng, 2, 100), uniform(rng, 0.01, 100)));
    if (!b.holds(kSlackRel)) ++bad5;
    min5 = std::min(min5, b.slack / b.length);
  }
  int lp_bad = 0;
  double worst = 0;
  LpSolver solver;
  for (int i = 0; i < 1000; ++i) {
    double ang = uniform(rng, 0, kPi);
    LpProblem p;
    if (i % 2 == 0) {
      auto lines = random_lines(rng, between(rng, 1, 24));
      p = build_lines_lp(lines, ang, i % 4 == 0 ? Mode::Tour : Mode::Path);
    } else {
      p = build_rays_lp(random_rays(rng, between(rng, 1, 12)), ang);
    }
    SolveOptions opt;
    opt.shuffle_seed = rng();
    double v = solver.solve(p, opt).value, o = lp_basis_enum(p).value;
    double rel = std::abs(v - o) / (1 + std::abs(o));
    worst = std::max(worst, rel);
    if (rel > kLpRel) ++lp_bad;
  }
  return {bad3 == 0 && bad5 == 0 && lp_bad == 0,
          fmt("min slack/L: three sides %.3e, perimeter %.3e over 10^4 polylines each; ", min3, min5) +
              fmt("LP vs basis enumeration worst relative gap %.2e over 10^3 programs (%g above 1e-9)", worst, lp_bad)};
}

double median_seconds(const std::function<void()>& f, int runs) {
  std::vector<double> t;
  for (int i = 0; i < runs; ++i) {
    auto t0 = Clock::now();
    f();
    t.push_back(seconds_since(t0));
  }
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

Outcome criterion8() {
  Rng rng(1008);
  auto cfg = SweepConfig::tour(kTourEps, 1);
  cfg.threads = 1;
  const std::size_t sizes[] = {100000, 200000, 400000, 800000};
  std::string detail;
  bool ok = true;
  for (int kind = 0; kind < 2; ++kind) {
    std::vector<double> times;
    for (std::size_t n : sizes) {
      if (kind == 0) {
        auto lines = random_lines(rng, n, 1000);
        times.push_back(median_seconds([&] { tour_lines(lines, cfg); }, 5));
      } else {
        auto rays = random_rays(rng, n, 1000);
        times.push_back(median_seconds([&] { tour_rays(rays, cfg); }, 5));
      }
    }
    double worst = 0;
    for (std::size_t k = 1; k < times.size(); ++k) worst = std::max(worst, times[k] / times[k - 1]);
    ok = ok && worst <= kScalingFactor;
    detail += std::string(kind == 0 ? "lines" : "rays") + fmt(" %.2f/%.2f/%.2f/%.2f s", times[0], times[1], times[2], times[3]) +
              fmt(" (worst doubling x%.2f); ", worst);
  }
  auto lines = random_lines(rng, 1000000, 1000);
  auto t0 = Clock::now();
  tour_lines(lines, cfg);
  double million = seconds_since(t0);
  auto rays = random_rays(rng, 1000000, 1000);
  t0 = Clock::now();
  tour_rays(rays, cfg);
  double million_rays = seconds_since(t0);
  ok = ok && million < kMillionSeconds && million_rays < kMillionSeconds;
  detail += fmt("n=10^6 single-threaded: lines %.1f s, rays %.1f s (limit 60 s)", million, million_rays);
  return {ok, detail};
}

Outcome criterion9() {
  Rng rng(1009);
  Instance li{RegionKind::Lines, random_lines(rng, 500), {}};
  Instance ri{RegionKind::Rays, {}, random_rays(rng, 500)};
  bool same = true;
  for (const Instance* inst : {&li, &ri}) {
    std::string json[3], svg[3];
    for (int k = 0; k < 3; ++k) {
      auto cfg = SweepConfig::tour(kTourEps, 42);
      cfg.threads = k == 2 ? 4 : 1;
      TourResult r = inst->kind == RegionKind::Lines ? tour_lines(inst->lines, cfg) : path_rays(inst->rays, cfg);
      ResultFile rf{inst->kind == RegionKind::Lines ? RunMode::TourLines : RunMode::PathRays, r, instance_hash(*inst), std::nullopt};
      json[k] = result_to_json(rf);
      svg[k] = emit_svg(*inst, r);
    }
    same = same && json[0] == json[1] && json[1] == json[2] && svg[0] == svg[1] && svg[1] == svg[2];
  }
  return {same, same ? "result JSON and SVG byte-identical across repeated runs and thread counts"
                     : "outputs differ between runs"};
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                 criterion6, criterion7, criterion8, criterion9};
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("criterion %d: %s  %s\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
