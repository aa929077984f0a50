#include "tspn/oracles.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "engine.hpp"
#include "tspn/error.hpp"

namespace tspn {

namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kRankTol = 1e-10;

// Visits every k-subset of {0..n-1} in lexicographic order; stops when fn
// returns false.
template <class Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  while (true) {
    if (!fn(std::span<const std::size_t>(idx))) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

struct Dense {
  Eigen::MatrixXd G;  // n x 4
  Eigen::VectorXd h;
  Eigen::Vector4d c;
};

Dense to_dense(const LpProblem& p) {
  const std::size_t n = p.size();
  Dense d;
  d.G.resize(static_cast<Eigen::Index>(n), 4);
  d.h.resize(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (int j = 0; j < 4; ++j) d.G(static_cast<Eigen::Index>(i), j) = p.g[j][i];
    d.h(static_cast<Eigen::Index>(i)) = p.h[i];
  }
  for (int j = 0; j < 4; ++j) d.c(j) = p.objective[j];
  return d;
}

bool feasible(const Dense& d, const Eigen::Vector4d& v) {
  const double vmax = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < d.G.rows(); ++i) {
    double lhs = d.G.row(i).dot(v);
    double slack = kFeasTol * (1.0 + std::abs(d.h(i)) + d.G.row(i).cwiseAbs().maxCoeff() * vmax);
    if (lhs < d.h(i) - slack) return false;
  }
  return true;
}

// (x1, y1, x2, y2) order.
bool lex_less(const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
  for (int k : {kX1, kY1, kX2, kY2}) {
    double t = kFeasTol * (1.0 + std::max(std::abs(a(k)), std::abs(b(k))));
    if (a(k) < b(k) - t) return true;
    if (a(k) > b(k) + t) return false;
  }
  return false;
}

}  // namespace

LpSolution lp_basis_enum(const LpProblem& problem, std::size_t max_constraints) {
  const std::size_t n = problem.size();
  if (n > max_constraints) throw TooManyConstraints("basis enumeration capped at " + std::to_string(max_constraints) + " rows");
  Dense d = to_dense(problem);

  // Row space and lineality space of G.
  Eigen::Matrix4d V = Eigen::Matrix4d::Identity();
  Eigen::Index r = 0;
  if (n > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(d.G, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    double smax = s.size() > 0 ? s(0) : 0.0;
    for (Eigen::Index k = 0; k < s.size(); ++k)
      if (s(k) > kRankTol * smax) ++r;
    V = svd.matrixV();
  }
  Eigen::MatrixXd U = V.leftCols(r);
  Eigen::MatrixXd N = V.rightCols(4 - r);

  LpSolution best;
  Eigen::Vector4d best_v = Eigen::Vector4d::Zero();
  double best_val = std::numeric_limits<double>::infinity();
  std::vector<std::int64_t> best_basis;

  auto consider = [&](const Eigen::Vector4d& v, std::span<const std::size_t> rows) {
    if (!v.allFinite() || !feasible(d, v)) return;
    double val = d.c.dot(v);
    double t = kFeasTol * (1.0 + std::abs(val) + std::abs(best_val == std::numeric_limits<double>::infinity() ? 0.0 : best_val));
    bool better = val < best_val - t || (val <= best_val + t && lex_less(v, best_v));
    if (best.status == LpStatus::Infeasible || better) {
      best.status = LpStatus::Optimal;
      best_val = val;
      best_v = v;
      best_basis.assign(rows.begin(), rows.end());
    }
  };

  if (r == 4) {
    for_each_subset(n, 4, [&](std::span<const std::size_t> rows) {
      Eigen::Matrix4d M;
      Eigen::Vector4d rhs;
      double scale = 1.0;
      for (int k = 0; k < 4; ++k) {
        M.row(k) = d.G.row(static_cast<Eigen::Index>(rows[k]));
        rhs(k) = d.h(static_cast<Eigen::Index>(rows[k]));
        scale *= M.row(k).norm();
      }
      Eigen::Matrix4d inv;
      double det = 0.0;
      bool ok = false;
      M.computeInverseAndDetWithCheck(inv, det, ok, kRankTol * scale);
      if (ok) consider(inv * rhs, rows);
      return true;
    });
  } else {
    for_each_subset(n, static_cast<std::size_t>(r), [&](std::span<const std::size_t> rows) {
      Eigen::MatrixXd M(r, r);
      Eigen::VectorXd rhs(r);
      for (Eigen::Index k = 0; k < r; ++k) {
        M.row(k) = d.G.row(static_cast<Eigen::Index>(rows[k])) * U;
        rhs(k) = d.h(static_cast<Eigen::Index>(rows[k]));
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
      lu.setThreshold(kRankTol);
      if (lu.rank() < r) return true;
      Eigen::Vector4d v = U * lu.solve(rhs);
      consider(v, rows);
      return true;
    });
  }

  if (best.status == LpStatus::Infeasible) return best;

  // Unbounded along the lineality space or along an extreme ray of the
  // pointed part.
  for (Eigen::Index k = 0; k < N.cols(); ++k)
    if (std::abs(d.c.dot(N.col(k))) > 1e-12 * d.c.norm()) throw UnboundedObjective("objective unbounded along a line of the feasible set");
  auto ray_unbounded = [&](const Eigen::Vector4d& dir) {
    if (d.c.dot(dir) >= -kFeasTol * d.c.norm()) return false;
    for (Eigen::Index i = 0; i < d.G.rows(); ++i)
      if (d.G.row(i).dot(dir) < -kFeasTol * d.G.row(i).norm()) return false;
    return true;
  };
  bool unbounded = false;
  if (r >= 1) {
    for_each_subset(n, static_cast<std::size_t>(r - 1), [&](std::span<const std::size_t> rows) {
      Eigen::MatrixXd M(r - 1, r);
      for (Eigen::Index k = 0; k < r - 1; ++k) M.row(k) = d.G.row(static_cast<Eigen::Index>(rows[k])) * U;
      Eigen::VectorXd z;
      if (r - 1 == 0) {
        z = Eigen::VectorXd::Unit(r, 0);
      } else {
        Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
        lu.setThreshold(kRankTol);
        if (lu.rank() < r - 1) return true;
        Eigen::MatrixXd ker = lu.kernel();
        if (ker.cols() != 1) return true;
        z = ker.col(0);
      }
      Eigen::Vector4d dir = U * z;
      dir.normalize();
      if (ray_unbounded(dir) || ray_unbounded(-dir)) {
        unbounded = true;
        return false;
      }
      return true;
    });
  }
  if (unbounded) throw UnboundedObjective("objective unbounded along an extreme ray");

  for (int k = 0; k < 4; ++k) best.point[k] = best_v(k);
  best.value = best_val;
  best.basis.assign(best_basis.rbegin(), best_basis.rend());
  return best;
}

namespace {

double objective_of(const OrientedRect& r, Objective obj) {
  return obj == Objective::Perimeter ? r.perimeter() : r.three_sides();
}

template <class Region>
OrientationMin dense_sweep_impl(std::span<const Region> regions, Objective obj, std::size_t K,
                                const DenseSweepOptions& opt) {
  if (K == 0) throw InvalidInput("dense sweep needs K >= 1");
  if (opt.block == 0) throw InvalidInput("dense sweep block must be positive");
  // Fixed order so that the result does not depend on the caller's seed.
  auto inst = detail::prepare(regions, 0x5eedULL, true);
  const std::size_t count = (obj == Objective::Perimeter && K % 2 == 0) ? K / 2 : K;
  auto angle_of = [&](std::size_t k) { return static_cast<double>(k) * kPi / static_cast<double>(K); };

  std::vector<double> value(count);
  std::vector<double> angle(count);
  unsigned threads = detail::resolve_threads(opt.threads);

  if (opt.backend == SweepBackend::Solver) {
    std::vector<std::unique_ptr<detail::AngleSolver>> solvers(threads);
    detail::parallel_chunks(count, opt.block, threads, [&](std::size_t begin, std::size_t end, unsigned w) {
      if (!solvers[w]) solvers[w] = std::make_unique<detail::AngleSolver>(inst, obj);
      std::vector<std::int64_t> warm;
      for (std::size_t k = begin; k < end; ++k) {
        auto out = solvers[w]->solve(angle_of(k), warm);
        value[k] = out.objective;
        angle[k] = angle_of(k);
        warm = std::move(out.basis);
      }
    });
  } else {
    const kernels::Table& table = kernels::scalar_table();
    detail::parallel_chunks(count, opt.block, threads, [&](std::size_t begin, std::size_t end, unsigned) {
      LpProblem p;
      for (std::size_t k = begin; k < end; ++k) {
        double a = angle_of(k);
        detail::fill_rows(inst, a, obj, p, table);
        LpSolution s = lp_basis_enum(p);
        if (!s.optimal()) throw NumericallyIll("rectangle LP infeasible in basis enumeration");
        OrientedRect rect{a, s.point[kX1], s.point[kX2], s.point[kY1], s.point[kY2]};
        if (rect.x2 < rect.x1) rect.x2 = rect.x1;
        if (rect.y2 < rect.y1) rect.y2 = rect.y1;
        value[k] = objective_of(rect, obj);
        angle[k] = a;
      }
    });
  }

  std::size_t best = 0;
  for (std::size_t k = 1; k < count; ++k)
    if (value[k] < value[best]) best = k;
  return {angle[best], value[best]};
}

struct BoundSpec {
  double lb_factor;
  double ratio_bound;
  Objective objective;
  CertificateMethod method;
};

template <class Region>
RatioCertificate certify_impl(const TourResult& result, std::span<const Region> regions, const CertifyOptions& opt,
                              bool rays) {
  const double eps = result.epsilon;
  BoundSpec spec{};
  if (result.mode == Mode::Tour) {
    spec = {kPi / 4.0, 4.0 / kPi * (1.0 + eps), Objective::Perimeter, CertificateMethod::DenseSweepLemma1};
  } else if (!rays) {
    spec = {1.0 / std::sqrt(2.0), std::sqrt(2.0) * (1.0 + eps), Objective::ThreeSides, CertificateMethod::DenseSweepPath};
  } else {
    spec = {1.0 / std::sqrt(5.0), std::sqrt(5.0) * (1.0 + eps), Objective::Perimeter, CertificateMethod::DenseSweepRayPath};
  }
  DenseSweepOptions dopt;
  dopt.threads = opt.threads;
  OrientationMin m = dense_angle_sweep(regions, spec.objective, opt.sweep_k, dopt);

  RatioCertificate cert;
  cert.output_value = result.objective_value;
  cert.lower_bound = spec.lb_factor * m.value;
  cert.bound = spec.ratio_bound + opt.slack;
  cert.method = spec.method;
  if (cert.lower_bound > 1e-9) cert.ratio = cert.output_value / cert.lower_bound;
  return cert;
}

double line_rect_gap(const Line& l, const OrientedRect& r) {
  auto q = r.corners();
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const Point& p : q) {
    double s = l.signed_distance(p);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  if (lo <= 0.0 && hi >= 0.0) return 0.0;
  return std::min(std::abs(lo), std::abs(hi));
}

double ray_rect_gap(const Ray& ray, const OrientedRect& r) {
  auto q = r.corners();
  double g = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 4; ++k) g = std::min(g, ray_segment_distance(ray, q[k], q[(k + 1) % 4]));
  return g;
}

double line_path_gap(const Line& l, std::span<const Point> path) {
  if (path.size() == 1) return std::abs(l.signed_distance(path[0]));
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < path.size(); ++k) g = std::min(g, line_segment_distance(l, path[k], path[k + 1]));
  return g;
}

double ray_path_gap(const Ray& ray, std::span<const Point> path) {
  if (path.size() == 1) return point_ray_distance(path[0], ray);
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < path.size(); ++k) g = std::min(g, ray_segment_distance(ray, path[k], path[k + 1]));
  return g;
}

template <class Region, class Meets, class Gap>
Verification verify_impl(std::span<const Region> regions, Meets meets, Gap gap) {
  Verification v;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (meets(regions[i])) continue;
    double g = gap(regions[i]);
    if (v.ok || g > v.max_violation) {
      v.worst_region = i;
      v.max_violation = g;
    }
    v.ok = false;
  }
  return v;
}

}  // namespace

OrientationMin dense_angle_sweep(std::span<const Line> lines, Objective objective, std::size_t K,
                                 const DenseSweepOptions& options) {
  return dense_sweep_impl(lines, objective, K, options);
}

OrientationMin dense_angle_sweep(std::span<const Ray> rays, Objective objective, std::size_t K,
                                 const DenseSweepOptions& options) {
  return dense_sweep_impl(rays, objective, K, options);
}

RatioCertificate certify(const TourResult& result, std::span<const Line> lines, const CertifyOptions& options) {
  return certify_impl(result, lines, options, false);
}

RatioCertificate certify(const TourResult& result, std::span<const Ray> rays, const CertifyOptions& options) {
  return certify_impl(result, rays, options, true);
}

Verification verify_rect(const OrientedRect& rect, std::span<const Line> lines, double tol) {
  return verify_impl(
      lines, [&](const Line& l) { return line_intersects_rect(l, rect, tol); },
      [&](const Line& l) { return line_rect_gap(l, rect); });
}

Verification verify_rect(const OrientedRect& rect, std::span<const Ray> rays, double tol) {
  return verify_impl(
      rays, [&](const Ray& r) { return ray_intersects_rect(r, rect, tol); },
      [&](const Ray& r) { return ray_rect_gap(r, rect); });
}

Verification verify_polyline(std::span<const Point> path, std::span<const Line> lines, double tol) {
  if (path.empty()) throw InvalidInput("empty path");
  return verify_impl(
      lines, [&](const Line& l) { return line_path_gap(l, path) <= tol; },
      [&](const Line& l) { return line_path_gap(l, path); });
}

Verification verify_polyline(std::span<const Point> path, std::span<const Ray> rays, double tol) {
  if (path.empty()) throw InvalidInput("empty path");
  return verify_impl(
      rays, [&](const Ray& r) { return ray_path_gap(r, path) <= tol; },
      [&](const Ray& r) { return ray_path_gap(r, path); });
}

Verification verify_output(const TourResult& result, std::span<const Line> lines, double tol) {
  if (!result.path.empty()) return verify_polyline(result.path, lines, tol);
  return verify_rect(result.rect, lines, tol);
}

Verification verify_output(const TourResult& result, std::span<const Ray> rays, double tol) {
  if (!result.path.empty()) return verify_polyline(result.path, rays, tol);
  return verify_rect(result.rect, rays, tol);
}

}  // namespace tspn
