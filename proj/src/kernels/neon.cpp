// NEON variants for AArch64. Two lanes per vector; operation order matches the
// scalar reference (no fused multiply-add).

#include <arm_neon.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "tspn/kernels.hpp"

namespace tspn::kernels {

namespace {

inline float64x2_t select(uint64x2_t mask, float64x2_t if_true, float64x2_t if_false) {
  return vbslq_f64(mask, if_true, if_false);
}

// dst = X0 Y0 X1 Y1
inline void store_pairs(double* dst, float64x2_t x, float64x2_t y) {
  float64x2x2_t v{{x, y}};
  vst2q_f64(dst, v);
}

std::size_t first_violation(RowsView r, std::size_t begin, std::size_t end,
                            const std::array<double, 4>& v) {
  const float64x2_t v0 = vdupq_n_f64(v[0]);
  const float64x2_t v1 = vdupq_n_f64(v[1]);
  const float64x2_t v2 = vdupq_n_f64(v[2]);
  const float64x2_t v3 = vdupq_n_f64(v[3]);
  std::size_t i = begin;
  for (; i + 2 <= end; i += 2) {
    float64x2_t d = vaddq_f64(vmulq_f64(vld1q_f64(r.g0 + i), v0), vmulq_f64(vld1q_f64(r.g1 + i), v1));
    d = vaddq_f64(d, vmulq_f64(vld1q_f64(r.g2 + i), v2));
    d = vaddq_f64(d, vmulq_f64(vld1q_f64(r.g3 + i), v3));
    uint64x2_t lt = vcltq_f64(d, vld1q_f64(r.thr + i));
    if (vgetq_lane_u64(lt, 0)) return i;
    if (vgetq_lane_u64(lt, 1)) return i + 1;
  }
  for (; i < end; ++i) {
    double d = r.g0[i] * v[0] + r.g1[i] * v[1];
    d = d + r.g2[i] * v[2];
    d = d + r.g3[i] * v[3];
    if (d < r.thr[i]) return i;
  }
  return end;
}

void thresholds(const double* h, const double* scale, double* thr, std::size_t n, double tol) {
  const float64x2_t t = vdupq_n_f64(tol);
  const float64x2_t one = vdupq_n_f64(1.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t hv = vld1q_f64(h + i);
    float64x2_t s = scale ? vld1q_f64(scale + i) : one;
    vst1q_f64(thr + i, vsubq_f64(hv, vmulq_f64(t, vaddq_f64(s, vabsq_f64(hv)))));
  }
  for (; i < n; ++i) {
    double s = scale ? scale[i] : 1.0;
    thr[i] = h[i] - tol * (s + std::abs(h[i]));
  }
}

double line_rows(LinesView L, double cs, double sn, RowsOut out) {
  const float64x2_t c2 = vdupq_n_f64(cs);
  const float64x2_t s2 = vdupq_n_f64(sn);
  const float64x2_t zero = vdupq_n_f64(0.0);
  float64x2_t min_b = vdupq_n_f64(std::numeric_limits<double>::infinity());
  std::size_t k = 0;
  for (; k + 2 <= L.n; k += 2) {
    float64x2_t a = vld1q_f64(L.a + k);
    float64x2_t b = vld1q_f64(L.b + k);
    float64x2_t c = vld1q_f64(L.c + k);
    float64x2_t fa = vaddq_f64(vmulq_f64(a, c2), vmulq_f64(b, s2));
    float64x2_t fb = vaddq_f64(vmulq_f64(vnegq_f64(a), s2), vmulq_f64(b, c2));
    uint64x2_t flip = vcltq_f64(fb, zero);
    fa = select(flip, vnegq_f64(fa), fa);
    fb = select(flip, vnegq_f64(fb), fb);
    c = select(flip, vnegq_f64(c), c);
    min_b = vminq_f64(min_b, fb);
    uint64x2_t plus = vcleq_f64(fa, zero);

    std::size_t r = 2 * k;
    store_pairs(out.g0 + r, select(plus, fa, vnegq_f64(fa)), zero);
    store_pairs(out.g1 + r, zero, select(plus, vnegq_f64(fa), fa));
    store_pairs(out.g2 + r, select(plus, zero, vnegq_f64(fb)), select(plus, vnegq_f64(fb), zero));
    store_pairs(out.g3 + r, select(plus, fb, zero), select(plus, zero, fb));
    store_pairs(out.h + r, select(plus, c, vnegq_f64(c)), select(plus, vnegq_f64(c), c));
  }
  double result = std::min(vgetq_lane_f64(min_b, 0), vgetq_lane_f64(min_b, 1));
  if (k < L.n) {
    LinesView tail{L.a + k, L.b + k, L.c + k, L.n - k};
    RowsOut o{out.g0 + 2 * k, out.g1 + 2 * k, out.g2 + 2 * k, out.g3 + 2 * k, out.h + 2 * k};
    result = std::min(result, scalar_table().line_rows(tail, cs, sn, o));
  }
  return result;
}

Extents extents(const double* xs, const double* ys, std::size_t n, double cs, double sn) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const float64x2_t c2 = vdupq_n_f64(cs);
  const float64x2_t s2 = vdupq_n_f64(sn);
  float64x2_t umin = vdupq_n_f64(inf), umax = vdupq_n_f64(-inf);
  float64x2_t vmin = vdupq_n_f64(inf), vmax = vdupq_n_f64(-inf);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t x = vld1q_f64(xs + i);
    float64x2_t y = vld1q_f64(ys + i);
    float64x2_t u = vaddq_f64(vmulq_f64(x, c2), vmulq_f64(y, s2));
    float64x2_t v = vaddq_f64(vmulq_f64(vnegq_f64(x), s2), vmulq_f64(y, c2));
    umin = vminq_f64(umin, u);
    umax = vmaxq_f64(umax, u);
    vmin = vminq_f64(vmin, v);
    vmax = vmaxq_f64(vmax, v);
  }
  Extents e{vminvq_f64(umin), vmaxvq_f64(umax), vminvq_f64(vmin), vmaxvq_f64(vmax)};
  if (i < n) {
    Extents t = scalar_table().extents(xs + i, ys + i, n - i, cs, sn);
    e.umin = std::min(e.umin, t.umin);
    e.umax = std::max(e.umax, t.umax);
    e.vmin = std::min(e.vmin, t.vmin);
    e.vmax = std::max(e.vmax, t.vmax);
  }
  return e;
}

}  // namespace

// Ray rows use the scalar reference on AArch64; the per-ray quadrant logic has
// four output rows and does not pack into two-lane vectors profitably.
const Table* neon_table() {
  static const Table t{Isa::Neon, first_violation, thresholds, line_rows,
                       scalar_table().ray_rows, extents};
  return &t;
}

}  // namespace tspn::kernels
