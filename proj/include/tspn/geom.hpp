#pragma once

// Planar primitives: points, lines, rays, rectangles in a rotated frame,
// and the clipping-based intersection predicates used by the verifiers.
//
// Frame convention: a frame at angle `a` has its axes equal to the world axes
// rotated counterclockwise by `a`. Frame coordinates of a world point p are
// therefore p rotated by -a about the origin.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "tspn/error.hpp"

namespace tspn {

inline constexpr double kDefaultTol = 1e-9;
inline constexpr double kPi = 3.14159265358979323846;

struct Point {
  double x = 0.0;
  double y = 0.0;

  constexpr Point() = default;
  constexpr Point(double x_, double y_) : x(x_), y(y_) {}

  constexpr Point operator+(Point o) const { return {x + o.x, y + o.y}; }
  constexpr Point operator-(Point o) const { return {x - o.x, y - o.y}; }
  constexpr Point operator*(double s) const { return {x * s, y * s}; }
  constexpr bool operator==(const Point&) const = default;
};

/// Throws InvalidInput unless both coordinates are finite.
Point make_point(double x, double y);

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

/// Infinite line a*x + b*y = c with a^2 + b^2 = 1 and the first nonzero of
/// (a, b) positive. Construct through the factories; the fields are kept
/// canonical so that equality is meaningful.
class Line {
 public:
  static Line from_general(double a, double b, double c);
  static Line through(Point p1, Point p2);
  /// y = slope * x + intercept
  static Line from_slope(double slope, double intercept);

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }

  /// Signed distance a*x + b*y - c.
  double signed_distance(Point p) const { return a_ * p.x + b_ * p.y - c_; }
  Point foot() const { return {a_ * c_, b_ * c_}; }
  Point direction() const { return {-b_, a_}; }

  /// Canonical-form equality within `tol` on every coefficient.
  bool same_as(const Line& o, double tol = 1e-12) const;

 private:
  Line(double a, double b, double c) : a_(a), b_(b), c_(c) {}
  double a_, b_, c_;
};

/// Half-infinite ray {apex + t*dir : t >= 0} with unit dir.
class Ray {
 public:
  static Ray make(Point apex, Point dir);
  static Ray from_angle(Point apex, double radians);

  Point apex() const { return apex_; }
  Point dir() const { return dir_; }
  Line supporting_line() const;
  bool same_as(const Ray& o, double tol = 1e-12) const;

 private:
  Ray(Point apex, Point dir) : apex_(apex), dir_(dir) {}
  Point apex_;
  Point dir_;
};

/// Axis-parallel rectangle [x1,x2] x [y1,y2] in the frame rotated by
/// frame_angle. Zero width and/or height is legal.
struct OrientedRect {
  double frame_angle = 0.0;
  double x1 = 0.0, x2 = 0.0, y1 = 0.0, y2 = 0.0;

  double width() const { return x2 - x1; }
  double height() const { return y2 - y1; }
  double perimeter() const { return 2.0 * width() + 2.0 * height(); }
  double longest_side() const { return std::max(width(), height()); }
  double three_sides() const { return perimeter() - longest_side(); }
  /// World-space corners q1..q4, counterclockwise from the frame lower-left.
  std::array<Point, 4> corners() const;
};

/// Open polygonal curve; at least two vertices, consecutive vertices distinct.
class Polyline {
 public:
  explicit Polyline(std::vector<Point> vertices);

  std::span<const Point> vertices() const { return vertices_; }
  Point front() const { return vertices_.front(); }
  Point back() const { return vertices_.back(); }
  double length() const;

 private:
  std::vector<Point> vertices_;
};

Point rotate_into_frame(Point p, double angle);
Point rotate_out_of_frame(Point p, double angle);

/// Frame slope of a line, or nullopt when the line is vertical in that frame
/// (its frame y-coefficient is below 1e-12 in magnitude).
std::optional<double> slope_in_frame(const Line& line, double angle);

/// Quadrant (1..4) of the ray direction in the given frame. Half-open:
/// direction angle in [0, pi/2) is 1, [pi/2, pi) is 2, [pi, 3pi/2) is 3,
/// [3pi/2, 2pi) is 4.
int quadrant_in_frame(const Ray& ray, double angle);

/// Closed-set intersection via parametric clipping against the rectangle's
/// slabs, each slab widened by tol.
bool line_intersects_rect(const Line& line, const OrientedRect& rect, double tol = kDefaultTol);
bool ray_intersects_rect(const Ray& ray, const OrientedRect& rect, double tol = kDefaultTol);

bool line_intersects_segment(const Line& line, Point s0, Point s1, double tol = kDefaultTol);
bool ray_intersects_segment(const Ray& ray, Point s0, Point s1, double tol = kDefaultTol);

/// Euclidean distances (zero when the sets meet).
double point_segment_distance(Point p, Point s0, Point s1);
double point_ray_distance(Point p, const Ray& ray);
double line_segment_distance(const Line& line, Point s0, Point s1);
double ray_segment_distance(const Ray& ray, Point s0, Point s1);

}  // namespace tspn
