#include <algorithm>
#include <cmath>
#include <limits>

#include "tspn/kernels.hpp"

namespace tspn::kernels {

namespace {

std::size_t first_violation(RowsView r, std::size_t begin, std::size_t end,
                            const std::array<double, 4>& v) {
  for (std::size_t i = begin; i < end; ++i) {
    double d = r.g0[i] * v[0] + r.g1[i] * v[1];
    d = d + r.g2[i] * v[2];
    d = d + r.g3[i] * v[3];
    if (d < r.thr[i]) return i;
  }
  return end;
}

void thresholds(const double* h, const double* scale, double* thr, std::size_t n, double tol) {
  for (std::size_t i = 0; i < n; ++i) {
    double s = scale ? scale[i] : 1.0;
    thr[i] = h[i] - tol * (s + std::abs(h[i]));
  }
}

void put(RowsOut o, std::size_t i, double g0, double g1, double g2, double g3, double h) {
  o.g0[i] = g0;
  o.g1[i] = g1;
  o.g2[i] = g2;
  o.g3[i] = g3;
  o.h[i] = h;
}

double line_rows(LinesView L, double cs, double sn, RowsOut out) {
  double min_b = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < L.n; ++k) {
    double a = L.a[k], b = L.b[k], c = L.c[k];
    double fa = a * cs + b * sn;
    double fb = (-a) * sn + b * cs;
    if (fb < 0.0) {
      fa = -fa;
      fb = -fb;
      c = -c;
    }
    min_b = std::min(min_b, fb);
    if (fa <= 0.0) {
      // non-negative slope: the line separates q2 = (x2, y1) and q4 = (x1, y2)
      put(out, 2 * k, fa, 0.0, 0.0, fb, c);
      put(out, 2 * k + 1, 0.0, -fa, -fb, 0.0, -c);
    } else {
      // negative slope: the line separates q1 = (x1, y1) and q3 = (x2, y2)
      put(out, 2 * k, -fa, 0.0, -fb, 0.0, -c);
      put(out, 2 * k + 1, 0.0, fa, 0.0, fb, c);
    }
  }
  return min_b;
}

double ray_rows(RaysView R, double cs, double sn, RowsOut out) {
  double min_dx = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < R.n; ++k) {
    double px = R.px[k] * cs + R.py[k] * sn;
    double py = (-R.px[k]) * sn + R.py[k] * cs;
    double dx = R.dx[k] * cs + R.dy[k] * sn;
    double dy = (-R.dx[k]) * sn + R.dy[k] * cs;

    bool q1 = dx > 0.0 && dy >= 0.0;
    bool q2 = dx <= 0.0 && dy > 0.0;
    bool q3 = dx < 0.0 && dy <= 0.0;
    bool q4 = !(q1 || q2 || q3);
    bool flip = dx < 0.0;
    double fa = flip ? dy : -dy;
    double fb = flip ? -dx : dx;
    double c = fa * px + fb * py;
    min_dx = std::min(min_dx, std::abs(dx));

    std::size_t base = 4 * k;
    if (q1 || q3) {
      put(out, base, fa, 0.0, 0.0, fb, c);
      put(out, base + 1, 0.0, -fa, -fb, 0.0, -c);
    } else {
      put(out, base, -fa, 0.0, -fb, 0.0, -c);
      put(out, base + 1, 0.0, fa, 0.0, fb, c);
    }
    // apex: x2 >= px for rightward rays, x1 <= px for leftward ones
    if (q1 || q4)
      put(out, base + 2, 0.0, 1.0, 0.0, 0.0, px);
    else
      put(out, base + 2, -1.0, 0.0, 0.0, 0.0, -px);
    // apex: y2 >= py for upward rays, y1 <= py for downward ones
    if (q1 || q2)
      put(out, base + 3, 0.0, 0.0, 0.0, 1.0, py);
    else
      put(out, base + 3, 0.0, 0.0, -1.0, 0.0, -py);
  }
  return min_dx;
}

Extents extents(const double* xs, const double* ys, std::size_t n, double cs, double sn) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  Extents e{inf, -inf, inf, -inf};
  for (std::size_t i = 0; i < n; ++i) {
    double u = xs[i] * cs + ys[i] * sn;
    double v = (-xs[i]) * sn + ys[i] * cs;
    e.umin = std::min(e.umin, u);
    e.umax = std::max(e.umax, u);
    e.vmin = std::min(e.vmin, v);
    e.vmax = std::max(e.vmax, v);
  }
  return e;
}

}  // namespace

const Table& scalar_table() {
  static const Table t{Isa::Scalar, first_violation, thresholds, line_rows, ray_rows, extents};
  return t;
}

}  // namespace tspn::kernels
