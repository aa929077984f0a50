#include "tspn/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>

namespace tspn {

namespace {

constexpr double kCanvas = 800.0;
constexpr std::size_t kMaxPairwise = 2000;

struct Box {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
  bool empty = true;

  void add(Point p) {
    if (empty) {
      x0 = x1 = p.x;
      y0 = y1 = p.y;
      empty = false;
      return;
    }
    x0 = std::min(x0, p.x), x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// Parameter interval of p + t*d inside the box, intersected with [lo, hi].
std::optional<std::pair<double, double>> clip(Point p, Point d, const Box& b, double lo, double hi) {
  const double pd[2] = {p.x, p.y}, dd[2] = {d.x, d.y};
  const double mn[2] = {b.x0, b.y0}, mx[2] = {b.x1, b.y1};
  for (int k = 0; k < 2; ++k) {
    if (dd[k] == 0.0) {
      if (pd[k] < mn[k] || pd[k] > mx[k]) return std::nullopt;
      continue;
    }
    double t0 = (mn[k] - pd[k]) / dd[k], t1 = (mx[k] - pd[k]) / dd[k];
    if (t0 > t1) std::swap(t0, t1);
    lo = std::max(lo, t0);
    hi = std::min(hi, t1);
  }
  if (lo > hi) return std::nullopt;
  return std::make_pair(lo, hi);
}

}  // namespace

std::string emit_svg(const Instance& inst, const TourResult& result) {
  const auto q = result.rect.corners();
  Box box;
  for (Point p : q) box.add(p);
  for (Point p : result.path) box.add(p);
  for (const Ray& r : inst.rays) box.add(r.apex());

  Point centre = (q[0] + q[2]) * 0.5;
  double diag = distance(q[0], q[2]);
  if (inst.kind == RegionKind::Lines && inst.lines.size() <= kMaxPairwise) {
    double reach = 3.0 * std::max(diag, 1e-9);
    for (std::size_t i = 0; i < inst.lines.size(); ++i) {
      for (std::size_t j = i + 1; j < inst.lines.size(); ++j) {
        const Line &l = inst.lines[i], &m = inst.lines[j];
        double det = l.a() * m.b() - l.b() * m.a();
        if (std::abs(det) < 1e-12) continue;
        Point x{(l.c() * m.b() - l.b() * m.c()) / det, (l.a() * m.c() - l.c() * m.a()) / det};
        if (distance(x, centre) <= reach) box.add(x);
      }
    }
  }
  double span = std::max(box.x1 - box.x0, box.y1 - box.y0);
  if (span <= 0.0) span = 1.0;
  double pad = 0.1 * span;
  box.x0 -= pad, box.y0 -= pad, box.x1 += pad, box.y1 += pad;

  const double scale = kCanvas / std::max(box.x1 - box.x0, box.y1 - box.y0);
  const double width = (box.x1 - box.x0) * scale, height = (box.y1 - box.y0) * scale;
  auto X = [&](Point p) { return fmt((p.x - box.x0) * scale); };
  auto Y = [&](Point p) { return fmt((box.y1 - p.y) * scale); };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" + fmt(height) +
       "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) + "\">\n";
  s += "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" "
       "orient=\"auto-start-reverse\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#336\"/></marker></defs>\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + fmt(width) + "\" height=\"" + fmt(height) + "\" fill=\"white\"/>\n";

  s += "<g id=\"regions\" stroke=\"#336\" stroke-width=\"1.5\" fill=\"none\">\n";
  auto segment = [&](Point a, Point b, bool arrow) {
    s += "<line x1=\"" + X(a) + "\" y1=\"" + Y(a) + "\" x2=\"" + X(b) + "\" y2=\"" + Y(b) + "\"";
    if (arrow) s += " marker-end=\"url(#arrow)\"";
    s += "/>\n";
  };
  const double inf = std::numeric_limits<double>::infinity();
  for (const Line& l : inst.lines) {
    Point p = l.foot(), d = l.direction();
    if (auto t = clip(p, d, box, -inf, inf)) segment(p + d * t->first, p + d * t->second, false);
  }
  for (const Ray& r : inst.rays) {
    Point p = r.apex(), d = r.dir();
    if (auto t = clip(p, d, box, 0.0, inf)) {
      segment(p + d * t->first, p + d * t->second, true);
      s += "<circle cx=\"" + X(p) + "\" cy=\"" + Y(p) + "\" r=\"2.5\" fill=\"#336\"/>\n";
    }
  }
  s += "</g>\n";

  s += "<polygon id=\"rectangle\" fill=\"rgba(200,60,40,0.08)\" stroke=\"#c83c28\" stroke-width=\"1\" "
       "stroke-dasharray=\"4 3\" points=\"";
  for (int k = 0; k < 4; ++k) s += (k ? " " : "") + X(q[k]) + "," + Y(q[k]);
  s += "\"/>\n";

  if (!result.path.empty()) {
    s += "<polyline id=\"path\" fill=\"none\" stroke=\"#c83c28\" stroke-width=\"2.5\" points=\"";
    for (std::size_t k = 0; k < result.path.size(); ++k)
      s += (k ? " " : "") + X(result.path[k]) + "," + Y(result.path[k]);
    s += "\"/>\n";
  }

  s += "<g id=\"labels\" font-family=\"sans-serif\" font-size=\"14\" fill=\"#c83c28\">\n";
  for (int k = 0; k < 4; ++k)
    s += "<text x=\"" + X(q[k]) + "\" y=\"" + Y(q[k]) + "\" dx=\"4\" dy=\"-4\">q" + std::to_string(k + 1) + "</text>\n";
  s += "</g>\n</svg>\n";
  return s;
}

}  // namespace tspn
