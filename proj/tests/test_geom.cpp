#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "tspn/error.hpp"
#include "tspn/geom.hpp"

using namespace tspn;
using namespace tspn::test;

namespace {

// Smallest distance from sampled points of a parametrised region to the
// rectangle (0 when a sample lies inside). Shares nothing with the clipping
// predicates.
double sampled_gap(Point p0, Point d, double t0, double t1, const OrientedRect& r, int samples) {
  double best = INFINITY;
  for (int k = 0; k <= samples; ++k) {
    double t = t0 + (t1 - t0) * k / samples;
    Point q = rotate_into_frame(p0 + d * t, r.frame_angle);
    double dx = std::max({r.x1 - q.x, 0.0, q.x - r.x2});
    double dy = std::max({r.y1 - q.y, 0.0, q.y - r.y2});
    best = std::min(best, std::hypot(dx, dy));
  }
  return best;
}

const OrientedRect kUnit{0.0, 0.0, 1.0, 0.0, 1.0};

}  // namespace

TEST_SUITE("geom") {
  TEST_CASE("rotation examples") {
    Point a = rotate_into_frame({1, 0}, 0.0);
    CHECK(a.x == 1.0);
    CHECK(a.y == 0.0);
    Point b = rotate_into_frame({1, 0}, kPi / 2);
    CHECK(b.x == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(b.y == doctest::Approx(-1.0).epsilon(1e-15));
    Point c = rotate_into_frame({1, 1}, kPi / 4);
    CHECK(c.x == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(std::abs(c.y) < 1e-15);
  }

  TEST_CASE("rotation round trip and isometry") {
    Rng rng(11);
    for (int i = 0; i < 10000; ++i) {
      Point p{uniform(rng, -1e3, 1e3), uniform(rng, -1e3, 1e3)};
      Point q{uniform(rng, -1e3, 1e3), uniform(rng, -1e3, 1e3)};
      double a = uniform(rng, -10, 10);
      Point back = rotate_out_of_frame(rotate_into_frame(p, a), a);
      REQUIRE(distance(back, p) <= 1e-12 * std::max(1.0, norm(p)));
      double d0 = distance(p, q), d1 = distance(rotate_into_frame(p, a), rotate_into_frame(q, a));
      REQUIRE(std::abs(d0 - d1) <= 1e-12 * std::max(1.0, d0));
    }
  }

  TEST_CASE("line canonical form") {
    Line l = Line::from_general(0, -2, 4);  // y = -2
    CHECK(l.a() == 0.0);
    CHECK(l.b() == 1.0);
    CHECK(l.c() == -2.0);
    Line m = Line::from_general(-3, -4, 5);
    CHECK(m.a() == doctest::Approx(0.6));
    CHECK(m.b() == doctest::Approx(0.8));
    CHECK(m.c() == doctest::Approx(-1.0));
    CHECK(std::abs(m.a() * m.a() + m.b() * m.b() - 1.0) < 1e-12);
    CHECK(Line::through({0, 0}, {1, 1}).same_as(Line::from_slope(1.0, 0.0)));
    CHECK_THROWS_AS(Line::from_general(0, 0, 1), InvalidInput);
    CHECK_THROWS_AS(Line::from_general(NAN, 1, 1), InvalidInput);
    CHECK_THROWS_AS(Line::through({1, 1}, {1, 1}), InvalidInput);
    CHECK_THROWS_AS(make_point(INFINITY, 0), InvalidInput);
  }

  TEST_CASE("ray normalisation") {
    Ray r = Ray::make({1, 2}, {3, 4});
    CHECK(r.dir().x == doctest::Approx(0.6));
    CHECK(r.dir().y == doctest::Approx(0.8));
    CHECK(std::abs(norm(r.dir()) - 1.0) < 1e-12);
    CHECK_THROWS_AS(Ray::make({0, 0}, {0, 0}), InvalidInput);
  }

  TEST_CASE("slope in frame") {
    CHECK(slope_in_frame(Line::from_slope(1, 0), 0.0).value() == doctest::Approx(1.0));
    CHECK_FALSE(slope_in_frame(Line::from_general(1, 0, 0), 0.0).has_value());
    CHECK(slope_in_frame(Line::from_general(1, 0, 0), kPi / 4).value() == doctest::Approx(1.0));
  }

  TEST_CASE("line rectangle examples") {
    CHECK(line_intersects_rect(Line::from_slope(0, 0), kUnit));
    CHECK_FALSE(line_intersects_rect(Line::from_slope(0, 2), kUnit));
    CHECK(line_intersects_rect(Line::from_slope(1, -1), kUnit));
    CHECK(line_intersects_rect(Line::from_slope(0, 1.0 + 5e-10), kUnit, 1e-9));
    CHECK_FALSE(line_intersects_rect(Line::from_slope(0, 1.0 + 5e-9), kUnit, 1e-9));
  }

  TEST_CASE("ray rectangle examples") {
    CHECK(ray_intersects_rect(Ray::make({2, 0.5}, {-1, 0}), kUnit));
    CHECK_FALSE(ray_intersects_rect(Ray::make({2, 0.5}, {1, 0}), kUnit));
    for (double a = 0; a < 2 * kPi; a += 0.3) CHECK(ray_intersects_rect(Ray::from_angle({0.5, 0.5}, a), kUnit));
  }

  TEST_CASE("quadrant convention") {
    CHECK(quadrant_in_frame(Ray::make({0, 0}, {1, 0}), 0.0) == 1);
    CHECK(quadrant_in_frame(Ray::make({0, 0}, {0, 1}), 0.0) == 2);
    CHECK(quadrant_in_frame(Ray::make({0, 0}, {-1, -1}), 0.0) == 3);
    CHECK(quadrant_in_frame(Ray::make({0, 0}, {-1, 0}), 0.0) == 3);
    CHECK(quadrant_in_frame(Ray::make({0, 0}, {0, -1}), 0.0) == 4);
    CHECK(quadrant_in_frame(Ray::make({0, 0}, {1, -1}), 0.0) == 4);
  }

  TEST_CASE("corner order is counterclockwise from frame lower-left") {
    Rng rng(5);
    for (int i = 0; i < 1000; ++i) {
      OrientedRect r = random_rect(rng);
      r.x2 = r.x1 + 0.5 + (r.x2 - r.x1);
      r.y2 = r.y1 + 0.5 + (r.y2 - r.y1);
      auto q = r.corners();
      double area2 = 0.0;
      for (int k = 0; k < 4; ++k) area2 += cross(q[k], q[(k + 1) % 4]);
      REQUIRE(area2 > 0.0);
      Point f = rotate_into_frame(q[0], r.frame_angle);
      REQUIRE(f.x == doctest::Approx(r.x1));
      REQUIRE(f.y == doctest::Approx(r.y1));
    }
  }

  TEST_CASE("rectangle measures") {
    OrientedRect r{0.3, 0, 3, 0, 1};
    CHECK(r.perimeter() == 8.0);
    CHECK(r.longest_side() == 3.0);
    CHECK(r.three_sides() == 5.0);
  }

  TEST_CASE("polyline validation") {
    CHECK_THROWS_AS(Polyline({{0, 0}}), InvalidInput);
    CHECK_THROWS_AS(Polyline({{0, 0}, {0, 0}}), InvalidInput);
    CHECK(Polyline({{0, 0}, {3, 4}, {3, 0}}).length() == doctest::Approx(9.0));
    CHECK(Polyline({{0, 0}, {1, 0}, {0, 0}}).length() == doctest::Approx(2.0));  // closed curves are accepted
  }

  TEST_CASE("clipping agrees with point sampling") {
    Rng rng(2024);
    const double tol = kDefaultTol;
    int lines_checked = 0, rays_checked = 0;
    for (int i = 0; i < 2000; ++i) {
      OrientedRect r = random_rect(rng, 3.0);
      Line l = random_line(rng, 6.0);
      double g = sampled_gap(l.foot(), l.direction(), -60, 60, r, 10000);
      if (g == 0.0) {
        REQUIRE(line_intersects_rect(l, r, tol));
        ++lines_checked;
      } else if (g > 0.05) {
        REQUIRE_FALSE(line_intersects_rect(l, r, tol));
        ++lines_checked;
      }
      Ray ray = random_ray(rng, 6.0);
      g = sampled_gap(ray.apex(), ray.dir(), 0, 100, r, 10000);
      if (g == 0.0) {
        REQUIRE(ray_intersects_rect(ray, r, tol));
        ++rays_checked;
      } else if (g > 0.05) {
        REQUIRE_FALSE(ray_intersects_rect(ray, r, tol));
        ++rays_checked;
      }
    }
    CHECK(lines_checked > 1800);
    CHECK(rays_checked > 1800);
  }

  TEST_CASE("segment distances") {
    Line l = Line::from_slope(0, 0);
    CHECK(line_segment_distance(l, {0, 1}, {0, -1}) == 0.0);
    CHECK(line_segment_distance(l, {0, 1}, {5, 2}) == doctest::Approx(1.0));
    Ray r = Ray::make({0, 0}, {1, 0});
    CHECK(ray_segment_distance(r, {2, -1}, {2, 1}) == 0.0);
    CHECK(ray_segment_distance(r, {-2, -1}, {-2, 1}) == doctest::Approx(2.0));
    CHECK(ray_intersects_segment(r, {3, 0}, {4, 1}));
    CHECK(line_intersects_segment(l, {3, 0}, {4, 1}));
    CHECK(point_ray_distance({-3, 4}, r) == doctest::Approx(5.0));
  }
}
