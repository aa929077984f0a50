#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference version and
// SIMD versions (AVX2 on x86-64, NEON on AArch64) chosen at runtime. The SIMD
// versions perform the same IEEE operations in the same order as the scalar
// reference, so results are bit-identical across instruction sets.

#include <array>
#include <cstddef>
#include <string_view>

namespace tspn::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);

/// Constraint rows g.v >= h over v = (x1, x2, y1, y2), one array per column.
/// A row counts as violated when g.v < thr, where thr is h minus a tolerance.
struct RowsView {
  const double* g0;
  const double* g1;
  const double* g2;
  const double* g3;
  const double* thr;
};

struct RowsOut {
  double* g0;
  double* g1;
  double* g2;
  double* g3;
  double* h;
};

/// Lines a*x + b*y = c with unit (a, b).
struct LinesView {
  const double* a;
  const double* b;
  const double* c;
  std::size_t n;
};

/// Rays with apex (px, py) and unit direction (dx, dy).
struct RaysView {
  const double* px;
  const double* py;
  const double* dx;
  const double* dy;
  std::size_t n;
};

struct Extents {
  double umin, umax, vmin, vmax;
};

struct Table {
  Isa isa;

  /// Index of the first row in [begin, end) with g.v < thr, or end. The dot
  /// product is evaluated as ((g0*v0 + g1*v1) + g2*v2) + g3*v3.
  std::size_t (*first_violation)(RowsView rows, std::size_t begin, std::size_t end,
                                 const std::array<double, 4>& v);

  /// thr[i] = h[i] - tol * (scale[i] + |h[i]|)
  void (*thresholds)(const double* h, const double* scale, double* thr, std::size_t n,
                     double tol);

  /// Writes two rectangle-separation rows per line for the frame with
  /// (cos, sin) = (cs, sn): rows 2k and 2k+1 belong to line k. Returns the
  /// smallest |frame y-coefficient| over all lines (0 means vertical).
  double (*line_rows)(LinesView lines, double cs, double sn, RowsOut out);

  /// Writes four rows per ray (two separation rows, then the apex x row and
  /// apex y row) at rows 4k..4k+3. Returns the smallest |frame dx|.
  double (*ray_rows)(RaysView rays, double cs, double sn, RowsOut out);

  /// Frame bounding box of a point set: u = x*cs + y*sn, v = -x*sn + y*cs.
  Extents (*extents)(const double* xs, const double* ys, std::size_t n, double cs, double sn);
};

const Table& scalar_table();
/// Tables for instruction sets compiled in and supported by this CPU, or
/// nullptr otherwise.
const Table* avx2_table();
const Table* neon_table();

bool isa_available(Isa isa);
const Table& table_for(Isa isa);

/// Best available table. The TSPN_ISA environment variable (scalar, avx2,
/// neon) forces a specific one when available.
const Table& active();

}  // namespace tspn::kernels
