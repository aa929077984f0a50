// Command-line front end: solve, certify, verify and curve-bound checks.
//
// Exit codes: 0 success, 1 error or failed check, 2 degenerate instance.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tspn/curve_bounds.hpp"
#include "tspn/error.hpp"
#include "tspn/io.hpp"
#include "tspn/lines.hpp"
#include "tspn/oracles.hpp"
#include "tspn/rays.hpp"
#include "tspn/svg.hpp"

namespace {

using namespace tspn;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitDegenerate = 2;

struct SolveArgs {
  std::string input, out, svg;
  std::optional<double> epsilon;
  std::uint64_t seed = 0;
  bool randomize_eps = false;
  std::optional<std::size_t> sweep_k;
  double tolerance = kDefaultTol;
  std::optional<unsigned> threads;
};

struct CheckArgs {
  std::string input, result;
  std::size_t sweep_k = 100000;
  double tolerance = kDefaultTol;
  std::optional<unsigned> threads;
};

unsigned thread_count(const std::optional<unsigned>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("TSPN_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0') throw InvalidInput("TSPN_THREADS must be a non-negative integer");
    return static_cast<unsigned>(v);
  }
  return 0;
}

bool is_tour(RunMode m) { return m == RunMode::TourLines || m == RunMode::TourRays; }

double default_epsilon(RunMode m) {
  switch (m) {
    case RunMode::PathLines: return 1.0 / 250.0;
    case RunMode::PathRays: return 1.0 / 1000.0;
    default: return 1.0 / 200.0;
  }
}

SweepConfig make_config(RunMode mode, const SolveArgs& a) {
  if (a.randomize_eps && !is_tour(mode)) throw InvalidInput("--randomize-eps applies to tours only");
  if (a.randomize_eps && a.epsilon) throw InvalidInput("--randomize-eps and --epsilon are exclusive");
  SweepConfig cfg;
  double eps = a.epsilon.value_or(default_epsilon(mode));
  if (a.randomize_eps)
    cfg = SweepConfig::tour_randomized(a.seed);
  else if (mode == RunMode::PathLines)
    cfg = SweepConfig::path(eps, a.seed);
  else
    cfg = SweepConfig::tour(eps, a.seed);
  cfg.threads = thread_count(a.threads);
  return cfg;
}

TourResult run(RunMode mode, const Instance& inst, const SweepConfig& cfg) {
  switch (mode) {
    case RunMode::TourLines: return tour_lines(inst.lines, cfg);
    case RunMode::PathLines: return path_lines(inst.lines, cfg);
    case RunMode::TourRays: return tour_rays(inst.rays, cfg);
    case RunMode::PathRays: return path_rays(inst.rays, cfg);
  }
  throw Error("unknown mode");
}

Verification verify(const Instance& inst, const TourResult& r, double tol) {
  return inst.kind == RegionKind::Lines ? verify_output(r, inst.lines, tol) : verify_output(r, inst.rays, tol);
}

RatioCertificate certificate(const Instance& inst, const TourResult& r, std::size_t k, unsigned threads) {
  CertifyOptions opt;
  opt.sweep_k = k;
  opt.threads = threads;
  return inst.kind == RegionKind::Lines ? certify(r, inst.lines, opt) : certify(r, inst.rays, opt);
}

void check_kind(const Instance& inst, RunMode mode) {
  if (inst.kind != kind_of(mode))
    throw InvalidInput("instance kind '" + std::string(to_string(inst.kind)) + "' does not match " +
                       std::string(to_string(mode)));
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

int solve_cmd(RunMode mode, const SolveArgs& a) {
  Instance inst = read_instance(a.input);
  check_kind(inst, mode);
  SweepConfig cfg = make_config(mode, a);

  auto t0 = std::chrono::steady_clock::now();
  TourResult r = run(mode, inst, cfg);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  Verification v = verify(inst, r, a.tolerance);
  if (!v.ok)
    throw NumericallyIll("output misses region " + std::to_string(v.worst_region) + " by " + num(v.max_violation));
  if (a.sweep_k) r.certificate = certificate(inst, r, *a.sweep_k, cfg.threads);

  ResultFile rf{mode, r, instance_hash(inst), ms};
  std::string json = result_to_json(rf);
  if (a.out.empty())
    std::cout << json;
  else
    write_file_atomic(a.out, json);
  if (!a.svg.empty()) write_file_atomic(a.svg, emit_svg(inst, r));

  std::cerr << to_string(mode) << ": n=" << inst.size() << " m=" << r.m << " epsilon=" << num(r.epsilon)
            << " objective=" << num(r.objective_value) << " angle=" << num(r.rect.frame_angle) << "\n";
  if (r.certificate) {
    const auto& c = *r.certificate;
    std::cerr << "certificate: " << (c.ratio ? "ratio=" + num(*c.ratio) : std::string("no ratio"))
              << " bound=" << num(c.bound) << (c.passed() ? " PASS" : " FAIL") << "\n";
  }
  if (r.degenerate) {
    std::cerr << "warning: degenerate instance, all regions share a point\n";
    return kExitDegenerate;
  }
  return kExitOk;
}

// The recorded objective is recomputed from the geometry so that a edited
// file cannot claim a smaller value than it describes.
TourResult loaded_result(const ResultFile& rf) {
  TourResult r = rf.result;
  if (r.path.empty()) {
    r.objective_value = r.rect.perimeter();
  } else {
    double len = 0.0;
    for (std::size_t k = 0; k + 1 < r.path.size(); ++k) len += distance(r.path[k], r.path[k + 1]);
    r.objective_value = len;
  }
  return r;
}

std::pair<Instance, ResultFile> load_pair(const CheckArgs& a) {
  Instance inst = read_instance(a.input);
  ResultFile rf = read_result(a.result);
  check_kind(inst, rf.mode);
  if (rf.instance_hash != instance_hash(inst))
    throw InvalidInput("result was produced from a different instance (hash " + rf.instance_hash + " vs " +
                       instance_hash(inst) + ")");
  return {std::move(inst), std::move(rf)};
}

int verify_cmd(const CheckArgs& a) {
  auto [inst, rf] = load_pair(a);
  Verification v = verify(inst, loaded_result(rf), a.tolerance);
  if (!v.ok) {
    std::cout << "FAIL intersection: region " << v.worst_region << " missed by " << num(v.max_violation) << "\n";
    return kExitError;
  }
  std::cout << "PASS intersection: all " << inst.size() << " regions met\n";
  return kExitOk;
}

int certify_cmd(const CheckArgs& a) {
  auto [inst, rf] = load_pair(a);
  TourResult r = loaded_result(rf);
  Verification v = verify(inst, r, a.tolerance);
  if (!v.ok) {
    std::cout << "FAIL intersection: region " << v.worst_region << " missed by " << num(v.max_violation) << "\n";
    return kExitError;
  }
  RatioCertificate c = certificate(inst, r, a.sweep_k, thread_count(a.threads));
  if (!c.ratio) {
    std::cout << "degenerate: OPT = 0 (lower bound " << num(c.lower_bound) << ")\n";
    return kExitDegenerate;
  }
  std::cout << (c.passed() ? "PASS" : "FAIL ratio") << ": ratio=" << num(*c.ratio) << " bound=" << num(c.bound)
            << " output=" << num(c.output_value) << " lower_bound=" << num(c.lower_bound)
            << " method=" << to_string(c.method) << "\n";
  return c.passed() ? kExitOk : kExitError;
}

int bounds_cmd(const std::string& curve_path, const std::string& check) {
  Polyline curve = read_curve(curve_path);
  bool ok = true;
  auto report = [&](const char* name, const BoundCheck& b) {
    bool holds = b.holds();
    ok = ok && holds;
    std::cout << name << ": value=" << num(b.value) << " bound=" << num(b.bound) << " slack=" << num(b.slack)
              << " length=" << num(b.length) << (holds ? " PASS" : " FAIL") << "\n";
  };
  if (check == "lemma3" || check == "both") report("three_sides", three_side_bound(curve));
  if (check == "lemma5" || check == "both") report("perimeter", perimeter_bound(curve));
  return ok ? kExitOk : kExitError;
}

void add_solve(CLI::App& app, RunMode mode, SolveArgs& a, int& code) {
  std::string help;
  switch (mode) {
    case RunMode::TourLines: help = "Tour through lines (rectangle perimeter)"; break;
    case RunMode::PathLines: help = "Path through lines (three rectangle sides)"; break;
    case RunMode::TourRays: help = "Tour through rays (rectangle perimeter)"; break;
    case RunMode::PathRays: help = "Path through rays (closed rectangle boundary)"; break;
  }
  auto* sub = app.add_subcommand(std::string(to_string(mode)), help);
  sub->add_option("--input", a.input, "Instance JSON")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", a.out, "Result JSON (stdout when omitted)");
  sub->add_option("--svg", a.svg, "SVG figure");
  sub->add_option("--epsilon", a.epsilon, "Angular step parameter in (0, 1)");
  sub->add_option("--seed", a.seed, "Seed for LP row order and epsilon sampling");
  sub->add_flag("--randomize-eps", a.randomize_eps, "Draw epsilon uniformly from [1/300, 1/200] (tours)");
  sub->add_option("--sweep-k", a.sweep_k, "Attach a certificate from a K-angle dense sweep");
  sub->add_option("--tolerance", a.tolerance, "Intersection check tolerance");
  sub->add_option("--threads", a.threads, "Worker threads (0 = all cores; default TSPN_THREADS or 0)");
  sub->callback([&, mode] { code = solve_cmd(mode, a); });
}

void add_check(CLI::App& app, const char* name, const char* help, CheckArgs& a, int& code, bool is_certify) {
  auto* sub = app.add_subcommand(name, help);
  sub->add_option("--input", a.input, "Instance JSON")->required()->check(CLI::ExistingFile);
  sub->add_option("--result", a.result, "Result JSON")->required()->check(CLI::ExistingFile);
  sub->add_option("--tolerance", a.tolerance, "Intersection check tolerance");
  if (is_certify) {
    sub->add_option("--sweep-k", a.sweep_k, "Dense sweep angle count");
    sub->add_option("--threads", a.threads, "Worker threads (0 = all cores; default TSPN_THREADS or 0)");
    sub->callback([&] { code = certify_cmd(a); });
  } else {
    sub->callback([&] { code = verify_cmd(a); });
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tours and paths through lines and rays via minimum rectangles"};
  app.require_subcommand(1);
  int code = kExitOk;

  SolveArgs solve[4];
  add_solve(app, RunMode::TourLines, solve[0], code);
  add_solve(app, RunMode::PathLines, solve[1], code);
  add_solve(app, RunMode::TourRays, solve[2], code);
  add_solve(app, RunMode::PathRays, solve[3], code);

  CheckArgs cert, ver;
  add_check(app, "certify", "Certify a result's ratio against a dense-sweep lower bound", cert, code, true);
  add_check(app, "verify", "Check that a result meets every region", ver, code, false);

  std::string curve, check = "both";
  auto* bounds = app.add_subcommand("bounds", "Check the enclosing-rectangle bounds for a curve");
  bounds->add_option("--curve", curve, "Curve JSON")->required()->check(CLI::ExistingFile);
  bounds->add_option("--check", check, "Which bound")->check(CLI::IsMember({"lemma3", "lemma5", "both"}));
  bounds->callback([&] { code = bounds_cmd(curve, check); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return code;
}
