// AVX2 variants. Compiled with -mavx2 (no FMA) so every product and sum is
// rounded exactly as in the scalar reference.

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "tspn/kernels.hpp"

namespace tspn::kernels {

namespace {

inline __m256d neg(__m256d x) { return _mm256_xor_pd(x, _mm256_set1_pd(-0.0)); }
inline __m256d absv(__m256d x) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }
inline __m256d select(__m256d mask, __m256d if_true, __m256d if_false) {
  return _mm256_blendv_pd(if_false, if_true, mask);
}
inline double hmin(__m256d x) {
  alignas(32) double t[4];
  _mm256_store_pd(t, x);
  return std::min(std::min(t[0], t[1]), std::min(t[2], t[3]));
}
inline double hmax(__m256d x) {
  alignas(32) double t[4];
  _mm256_store_pd(t, x);
  return std::max(std::max(t[0], t[1]), std::max(t[2], t[3]));
}

// Stores X and Y so that dst = X0 Y0 X1 Y1 X2 Y2 X3 Y3.
inline void store_pairs(double* dst, __m256d x, __m256d y) {
  __m256d lo = _mm256_unpacklo_pd(x, y);
  __m256d hi = _mm256_unpackhi_pd(x, y);
  _mm256_storeu_pd(dst, _mm256_permute2f128_pd(lo, hi, 0x20));
  _mm256_storeu_pd(dst + 4, _mm256_permute2f128_pd(lo, hi, 0x31));
}

// Stores four vectors so that dst = A0 B0 C0 D0 A1 B1 C1 D1 ... (4x4 transpose).
inline void store_quads(double* dst, __m256d a, __m256d b, __m256d c, __m256d d) {
  __m256d ab_lo = _mm256_unpacklo_pd(a, b);  // a0 b0 a2 b2
  __m256d ab_hi = _mm256_unpackhi_pd(a, b);  // a1 b1 a3 b3
  __m256d cd_lo = _mm256_unpacklo_pd(c, d);
  __m256d cd_hi = _mm256_unpackhi_pd(c, d);
  _mm256_storeu_pd(dst, _mm256_permute2f128_pd(ab_lo, cd_lo, 0x20));
  _mm256_storeu_pd(dst + 4, _mm256_permute2f128_pd(ab_hi, cd_hi, 0x20));
  _mm256_storeu_pd(dst + 8, _mm256_permute2f128_pd(ab_lo, cd_lo, 0x31));
  _mm256_storeu_pd(dst + 12, _mm256_permute2f128_pd(ab_hi, cd_hi, 0x31));
}

std::size_t first_violation(RowsView r, std::size_t begin, std::size_t end,
                            const std::array<double, 4>& v) {
  const __m256d v0 = _mm256_set1_pd(v[0]);
  const __m256d v1 = _mm256_set1_pd(v[1]);
  const __m256d v2 = _mm256_set1_pd(v[2]);
  const __m256d v3 = _mm256_set1_pd(v[3]);
  std::size_t i = begin;
  for (; i + 4 <= end; i += 4) {
    __m256d d = _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(r.g0 + i), v0),
                              _mm256_mul_pd(_mm256_loadu_pd(r.g1 + i), v1));
    d = _mm256_add_pd(d, _mm256_mul_pd(_mm256_loadu_pd(r.g2 + i), v2));
    d = _mm256_add_pd(d, _mm256_mul_pd(_mm256_loadu_pd(r.g3 + i), v3));
    int mask = _mm256_movemask_pd(_mm256_cmp_pd(d, _mm256_loadu_pd(r.thr + i), _CMP_LT_OQ));
    if (mask) return i + static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(mask)));
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
  const __m256d t = _mm256_set1_pd(tol);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d hv = _mm256_loadu_pd(h + i);
    __m256d s = scale ? _mm256_loadu_pd(scale + i) : one;
    _mm256_storeu_pd(thr + i, _mm256_sub_pd(hv, _mm256_mul_pd(t, _mm256_add_pd(s, absv(hv)))));
  }
  for (; i < n; ++i) {
    double s = scale ? scale[i] : 1.0;
    thr[i] = h[i] - tol * (s + std::abs(h[i]));
  }
}

double line_rows(LinesView L, double cs, double sn, RowsOut out) {
  const __m256d c4 = _mm256_set1_pd(cs);
  const __m256d s4 = _mm256_set1_pd(sn);
  const __m256d zero = _mm256_setzero_pd();
  __m256d min_b = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  std::size_t k = 0;
  for (; k + 4 <= L.n; k += 4) {
    __m256d a = _mm256_loadu_pd(L.a + k);
    __m256d b = _mm256_loadu_pd(L.b + k);
    __m256d c = _mm256_loadu_pd(L.c + k);
    __m256d fa = _mm256_add_pd(_mm256_mul_pd(a, c4), _mm256_mul_pd(b, s4));
    __m256d fb = _mm256_add_pd(_mm256_mul_pd(neg(a), s4), _mm256_mul_pd(b, c4));
    __m256d flip = _mm256_and_pd(_mm256_cmp_pd(fb, zero, _CMP_LT_OQ), _mm256_set1_pd(-0.0));
    fa = _mm256_xor_pd(fa, flip);
    fb = _mm256_xor_pd(fb, flip);
    c = _mm256_xor_pd(c, flip);
    min_b = _mm256_min_pd(min_b, fb);
    __m256d plus = _mm256_cmp_pd(fa, zero, _CMP_LE_OQ);

    std::size_t r = 2 * k;
    store_pairs(out.g0 + r, select(plus, fa, neg(fa)), zero);
    store_pairs(out.g1 + r, zero, select(plus, neg(fa), fa));
    store_pairs(out.g2 + r, select(plus, zero, neg(fb)), select(plus, neg(fb), zero));
    store_pairs(out.g3 + r, select(plus, fb, zero), select(plus, zero, fb));
    store_pairs(out.h + r, select(plus, c, neg(c)), select(plus, neg(c), c));
  }
  double result = hmin(min_b);
  if (k < L.n) {
    LinesView tail{L.a + k, L.b + k, L.c + k, L.n - k};
    RowsOut o{out.g0 + 2 * k, out.g1 + 2 * k, out.g2 + 2 * k, out.g3 + 2 * k, out.h + 2 * k};
    result = std::min(result, scalar_table().line_rows(tail, cs, sn, o));
  }
  return result;
}

double ray_rows(RaysView R, double cs, double sn, RowsOut out) {
  const __m256d c4 = _mm256_set1_pd(cs);
  const __m256d s4 = _mm256_set1_pd(sn);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d minus_one = _mm256_set1_pd(-1.0);
  __m256d min_dx = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  std::size_t k = 0;
  for (; k + 4 <= R.n; k += 4) {
    __m256d wx = _mm256_loadu_pd(R.px + k);
    __m256d wy = _mm256_loadu_pd(R.py + k);
    __m256d wdx = _mm256_loadu_pd(R.dx + k);
    __m256d wdy = _mm256_loadu_pd(R.dy + k);
    __m256d px = _mm256_add_pd(_mm256_mul_pd(wx, c4), _mm256_mul_pd(wy, s4));
    __m256d py = _mm256_add_pd(_mm256_mul_pd(neg(wx), s4), _mm256_mul_pd(wy, c4));
    __m256d dx = _mm256_add_pd(_mm256_mul_pd(wdx, c4), _mm256_mul_pd(wdy, s4));
    __m256d dy = _mm256_add_pd(_mm256_mul_pd(neg(wdx), s4), _mm256_mul_pd(wdy, c4));

    __m256d dx_gt = _mm256_cmp_pd(dx, zero, _CMP_GT_OQ);
    __m256d dx_le = _mm256_cmp_pd(dx, zero, _CMP_LE_OQ);
    __m256d dx_lt = _mm256_cmp_pd(dx, zero, _CMP_LT_OQ);
    __m256d dy_ge = _mm256_cmp_pd(dy, zero, _CMP_GE_OQ);
    __m256d dy_gt = _mm256_cmp_pd(dy, zero, _CMP_GT_OQ);
    __m256d dy_le = _mm256_cmp_pd(dy, zero, _CMP_LE_OQ);
    __m256d q1 = _mm256_and_pd(dx_gt, dy_ge);
    __m256d q2 = _mm256_and_pd(dx_le, dy_gt);
    __m256d q3 = _mm256_and_pd(dx_lt, dy_le);
    __m256d q4 = _mm256_andnot_pd(_mm256_or_pd(_mm256_or_pd(q1, q2), q3),
                                  _mm256_castsi256_pd(_mm256_set1_epi64x(-1)));

    __m256d fa = select(dx_lt, dy, neg(dy));
    __m256d fb = select(dx_lt, neg(dx), dx);
    __m256d c = _mm256_add_pd(_mm256_mul_pd(fa, px), _mm256_mul_pd(fb, py));
    min_dx = _mm256_min_pd(min_dx, absv(dx));

    __m256d plus = _mm256_or_pd(q1, q3);
    __m256d right = _mm256_or_pd(q1, q4);
    __m256d up = _mm256_or_pd(q1, q2);

    std::size_t r = 4 * k;
    store_quads(out.g0 + r, select(plus, fa, neg(fa)), zero, select(right, zero, minus_one), zero);
    store_quads(out.g1 + r, zero, select(plus, neg(fa), fa), select(right, one, zero), zero);
    store_quads(out.g2 + r, select(plus, zero, neg(fb)), select(plus, neg(fb), zero), zero,
                select(up, zero, minus_one));
    store_quads(out.g3 + r, select(plus, fb, zero), select(plus, zero, fb), zero,
                select(up, one, zero));
    store_quads(out.h + r, select(plus, c, neg(c)), select(plus, neg(c), c),
                select(right, px, neg(px)), select(up, py, neg(py)));
  }
  double result = hmin(min_dx);
  if (k < R.n) {
    RaysView tail{R.px + k, R.py + k, R.dx + k, R.dy + k, R.n - k};
    RowsOut o{out.g0 + 4 * k, out.g1 + 4 * k, out.g2 + 4 * k, out.g3 + 4 * k, out.h + 4 * k};
    result = std::min(result, scalar_table().ray_rows(tail, cs, sn, o));
  }
  return result;
}

Extents extents(const double* xs, const double* ys, std::size_t n, double cs, double sn) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const __m256d c4 = _mm256_set1_pd(cs);
  const __m256d s4 = _mm256_set1_pd(sn);
  __m256d umin = _mm256_set1_pd(inf), umax = _mm256_set1_pd(-inf);
  __m256d vmin = _mm256_set1_pd(inf), vmax = _mm256_set1_pd(-inf);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d x = _mm256_loadu_pd(xs + i);
    __m256d y = _mm256_loadu_pd(ys + i);
    __m256d u = _mm256_add_pd(_mm256_mul_pd(x, c4), _mm256_mul_pd(y, s4));
    __m256d v = _mm256_add_pd(_mm256_mul_pd(neg(x), s4), _mm256_mul_pd(y, c4));
    umin = _mm256_min_pd(umin, u);
    umax = _mm256_max_pd(umax, u);
    vmin = _mm256_min_pd(vmin, v);
    vmax = _mm256_max_pd(vmax, v);
  }
  Extents e{hmin(umin), hmax(umax), hmin(vmin), hmax(vmax)};
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

const Table* avx2_table() {
  static const Table t{Isa::Avx2, first_violation, thresholds, line_rows, ray_rows, extents};
  if (!__builtin_cpu_supports("avx2")) return nullptr;
  return &t;
}

}  // namespace tspn::kernels
