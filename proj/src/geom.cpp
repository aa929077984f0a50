#include "tspn/geom.hpp"

#include <algorithm>
#include <limits>

namespace tspn {

namespace {

bool finite(double v) { return std::isfinite(v); }

// Liang-Barsky update for the constraint lo <= p0 + t*d <= hi.
// Shrinks [t_lo, t_hi]; returns false once the interval is empty.
bool clip_slab(double p0, double d, double lo, double hi, double& t_lo, double& t_hi) {
  if (d == 0.0) return p0 >= lo && p0 <= hi;
  double ta = (lo - p0) / d;
  double tb = (hi - p0) / d;
  if (ta > tb) std::swap(ta, tb);
  t_lo = std::max(t_lo, ta);
  t_hi = std::min(t_hi, tb);
  return t_lo <= t_hi;
}

bool clip_parametric(Point p0, Point d, const OrientedRect& r, double tol, double t_min) {
  Point fp = rotate_into_frame(p0, r.frame_angle);
  Point fd = rotate_into_frame(d, r.frame_angle);
  double t_lo = t_min;
  double t_hi = std::numeric_limits<double>::infinity();
  if (!clip_slab(fp.x, fd.x, r.x1 - tol, r.x2 + tol, t_lo, t_hi)) return false;
  return clip_slab(fp.y, fd.y, r.y1 - tol, r.y2 + tol, t_lo, t_hi);
}

}  // namespace

Point make_point(double x, double y) {
  if (!finite(x) || !finite(y)) throw InvalidInput("point coordinates must be finite");
  return {x, y};
}

Line Line::from_general(double a, double b, double c) {
  if (!finite(a) || !finite(b) || !finite(c)) throw InvalidInput("line coefficients must be finite");
  double n = std::hypot(a, b);
  if (n == 0.0) throw InvalidInput("line normal (a, b) must be nonzero");
  a /= n;
  b /= n;
  c /= n;
  if (a < 0.0 || (a == 0.0 && b < 0.0)) {
    a = -a;
    b = -b;
    c = -c;
  }
  // Avoid a signed zero in the canonical form.
  if (a == 0.0) a = 0.0;
  if (b == 0.0) b = 0.0;
  if (c == 0.0) c = 0.0;
  return Line(a, b, c);
}

Line Line::through(Point p1, Point p2) {
  Point d = p2 - p1;
  if (d.x == 0.0 && d.y == 0.0) throw InvalidInput("line through two coincident points");
  return from_general(-d.y, d.x, -d.y * p1.x + d.x * p1.y);
}

Line Line::from_slope(double slope, double intercept) {
  return from_general(-slope, 1.0, intercept);
}

bool Line::same_as(const Line& o, double tol) const {
  return std::abs(a_ - o.a_) <= tol && std::abs(b_ - o.b_) <= tol && std::abs(c_ - o.c_) <= tol;
}

Ray Ray::make(Point apex, Point dir) {
  if (!finite(apex.x) || !finite(apex.y) || !finite(dir.x) || !finite(dir.y))
    throw InvalidInput("ray apex and direction must be finite");
  double n = norm(dir);
  if (n == 0.0) throw InvalidInput("ray direction must be nonzero");
  return Ray(apex, {dir.x / n, dir.y / n});
}

Ray Ray::from_angle(Point apex, double radians) {
  return make(apex, {std::cos(radians), std::sin(radians)});
}

Line Ray::supporting_line() const {
  return Line::from_general(-dir_.y, dir_.x, -dir_.y * apex_.x + dir_.x * apex_.y);
}

bool Ray::same_as(const Ray& o, double tol) const {
  return std::abs(apex_.x - o.apex_.x) <= tol && std::abs(apex_.y - o.apex_.y) <= tol &&
         std::abs(dir_.x - o.dir_.x) <= tol && std::abs(dir_.y - o.dir_.y) <= tol;
}

std::array<Point, 4> OrientedRect::corners() const {
  return {rotate_out_of_frame({x1, y1}, frame_angle), rotate_out_of_frame({x2, y1}, frame_angle),
          rotate_out_of_frame({x2, y2}, frame_angle), rotate_out_of_frame({x1, y2}, frame_angle)};
}

Polyline::Polyline(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2) throw InvalidInput("polyline needs at least two vertices");
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!finite(vertices_[i].x) || !finite(vertices_[i].y))
      throw InvalidInput("polyline vertex " + std::to_string(i) + " is not finite");
    if (i > 0 && vertices_[i] == vertices_[i - 1])
      throw InvalidInput("polyline vertices " + std::to_string(i - 1) + " and " +
                         std::to_string(i) + " coincide");
  }
}

double Polyline::length() const {
  double total = 0.0;
  for (std::size_t i = 1; i < vertices_.size(); ++i) total += distance(vertices_[i - 1], vertices_[i]);
  return total;
}

Point rotate_into_frame(Point p, double angle) {
  double c = std::cos(angle), s = std::sin(angle);
  return {p.x * c + p.y * s, -p.x * s + p.y * c};
}

Point rotate_out_of_frame(Point p, double angle) {
  double c = std::cos(angle), s = std::sin(angle);
  return {p.x * c - p.y * s, p.x * s + p.y * c};
}

std::optional<double> slope_in_frame(const Line& line, double angle) {
  double c = std::cos(angle), s = std::sin(angle);
  double fa = line.a() * c + line.b() * s;
  double fb = -line.a() * s + line.b() * c;
  if (std::abs(fb) < 1e-12) return std::nullopt;
  return -fa / fb;
}

int quadrant_in_frame(const Ray& ray, double angle) {
  Point d = rotate_into_frame(ray.dir(), angle);
  if (d.x > 0.0 && d.y >= 0.0) return 1;
  if (d.x <= 0.0 && d.y > 0.0) return 2;
  if (d.x < 0.0 && d.y <= 0.0) return 3;
  return 4;
}

bool line_intersects_rect(const Line& line, const OrientedRect& rect, double tol) {
  return clip_parametric(line.foot(), line.direction(), rect, tol,
                         -std::numeric_limits<double>::infinity());
}

bool ray_intersects_rect(const Ray& ray, const OrientedRect& rect, double tol) {
  return clip_parametric(ray.apex(), ray.dir(), rect, tol, 0.0);
}

bool line_intersects_segment(const Line& line, Point s0, Point s1, double tol) {
  double d0 = line.signed_distance(s0);
  double d1 = line.signed_distance(s1);
  return std::min(d0, d1) <= tol && std::max(d0, d1) >= -tol;
}

bool ray_intersects_segment(const Ray& ray, Point s0, Point s1, double tol) {
  return ray_segment_distance(ray, s0, s1) <= tol;
}

double point_segment_distance(Point p, Point s0, Point s1) {
  Point d = s1 - s0;
  double len2 = dot(d, d);
  if (len2 == 0.0) return distance(p, s0);
  double t = std::clamp(dot(p - s0, d) / len2, 0.0, 1.0);
  return distance(p, s0 + d * t);
}

double point_ray_distance(Point p, const Ray& ray) {
  double t = std::max(0.0, dot(p - ray.apex(), ray.dir()));
  return distance(p, ray.apex() + ray.dir() * t);
}

double line_segment_distance(const Line& line, Point s0, Point s1) {
  double d0 = line.signed_distance(s0);
  double d1 = line.signed_distance(s1);
  if ((d0 <= 0.0 && d1 >= 0.0) || (d0 >= 0.0 && d1 <= 0.0)) return 0.0;
  return std::min(std::abs(d0), std::abs(d1));
}

double ray_segment_distance(const Ray& ray, Point s0, Point s1) {
  Point d = s1 - s0;
  Point r = ray.dir();
  double denom = cross(r, d);
  if (denom != 0.0) {
    Point w = s0 - ray.apex();
    double t = cross(w, d) / denom;   // along the ray
    double u = cross(w, r) / denom;   // along the segment
    if (t >= 0.0 && u >= 0.0 && u <= 1.0) return 0.0;
  }
  return std::min({point_ray_distance(s0, ray), point_ray_distance(s1, ray),
                   point_segment_distance(ray.apex(), s0, s1)});
}

}  // namespace tspn
