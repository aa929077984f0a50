#include "tspn/sweep.hpp"

#include <cmath>
#include <random>

#include "tspn/error.hpp"

namespace tspn {

namespace {

void check_epsilon(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput("epsilon must lie in (0, 1)");
}

}  // namespace

std::size_t tour_direction_count(double epsilon) {
  check_epsilon(epsilon);
  return static_cast<std::size_t>(std::ceil(kPi / (4.0 * epsilon)));
}

std::size_t path_direction_count(double epsilon) {
  check_epsilon(epsilon);
  return static_cast<std::size_t>(std::ceil(kPi / epsilon));
}

SweepConfig SweepConfig::tour(double epsilon, std::uint64_t seed) {
  SweepConfig c;
  c.epsilon = epsilon;
  c.m = tour_direction_count(epsilon);
  c.seed = seed;
  return c;
}

SweepConfig SweepConfig::path(double epsilon, std::uint64_t seed) {
  SweepConfig c;
  c.epsilon = epsilon;
  c.m = path_direction_count(epsilon);
  c.step = epsilon;
  c.seed = seed;
  return c;
}

SweepConfig SweepConfig::tour_randomized(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> eps(1.0 / 300.0, 1.0 / 200.0);
  return tour(eps(rng), seed);
}

std::string_view to_string(CertificateMethod m) {
  switch (m) {
    case CertificateMethod::DenseSweepLemma1: return "dense_sweep_lemma1";
    case CertificateMethod::DenseSweepPath: return "dense_sweep_path";
    case CertificateMethod::DenseSweepRayPath: return "dense_sweep_ray_path";
    case CertificateMethod::KnownOptimum: return "known_optimum";
    case CertificateMethod::BasisEnum: return "basis_enum";
  }
  return "unknown";
}

}  // namespace tspn
