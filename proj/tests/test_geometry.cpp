#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <gmpxx.h>

#include <cmath>
#include <random>

#include "kissgeo/error.hpp"
#include "kissgeo/geometry.hpp"
#include "kissgeo/unit_disks.hpp"

using namespace kissgeo;
using geom::Point;

namespace {

// Rational oracles, written out directly from the determinant definitions.
int sign_of(const mpq_class& v) { return sgn(v); }

int orient_q(Point p, Point q, Point r) {
  const mpq_class px(p.x), py(p.y), qx(q.x), qy(q.y), rx(r.x), ry(r.y);
  return sign_of((qx - px) * (ry - py) - (qy - py) * (rx - px));
}

int incircle_q(Point a, Point b, Point c, Point d) {
  const mpq_class ax = mpq_class(a.x) - d.x, ay = mpq_class(a.y) - d.y;
  const mpq_class bx = mpq_class(b.x) - d.x, by = mpq_class(b.y) - d.y;
  const mpq_class cx = mpq_class(c.x) - d.x, cy = mpq_class(c.y) - d.y;
  const mpq_class a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
  return sign_of(ax * (by * c2 - b2 * cy) - ay * (bx * c2 - b2 * cx) + a2 * (bx * cy - by * cx));
}

// R < 1 via the exact circumcenter.
bool small_q(Point p, Point q, Point r) {
  const mpq_class ax = mpq_class(q.x) - p.x, ay = mpq_class(q.y) - p.y;
  const mpq_class bx = mpq_class(r.x) - p.x, by = mpq_class(r.y) - p.y;
  const mpq_class d = 2 * (ax * by - ay * bx);
  if (d == 0) return false;
  const mpq_class a2 = ax * ax + ay * ay, b2 = bx * bx + by * by;
  const mpq_class ux = (by * a2 - ay * b2) / d, uy = (ax * b2 - bx * a2) / d;
  return ux * ux + uy * uy < 1;
}

}  // namespace

TEST_CASE("angccw examples") {
  CHECK(geom::angccw({1, 0}, {0, 1}) == doctest::Approx(kPi / 2));
  CHECK(geom::angccw({1, 0}, {1, 0}) == 0.0);
  CHECK(geom::angccw({0, 1}, {1, 0}) == doctest::Approx(3 * kPi / 2));
  CHECK_THROWS_AS(geom::angccw({0, 0}, {1, 0}), Error);
}

TEST_CASE("angccw agrees with rotation oracle") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 2000; ++t) {
    const geom::Vec a{u(rng), u(rng)}, b{u(rng), u(rng)};
    const double th = geom::angccw(a, b);
    REQUIRE(th >= 0.0);
    REQUIRE(th < kTwoPi);
    const geom::Vec rot{a.x * std::cos(th) - a.y * std::sin(th), a.x * std::sin(th) + a.y * std::cos(th)};
    CHECK(std::abs(geom::cross(rot, b)) < 1e-9 * geom::norm(a) * geom::norm(b));
    CHECK(geom::dot(rot, b) > 0.0);
  }
}

TEST_CASE("signed_angle examples") {
  CHECK(geom::signed_angle({1, 0}, {0, 1}) == doctest::Approx(kPi / 2));
  CHECK(geom::signed_angle({0, 1}, {1, 0}) == doctest::Approx(-kPi / 2));
  try {
    geom::signed_angle({1, 0}, {-1, 0});
    FAIL("expected AmbiguousAntiparallel");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::AmbiguousAntiparallel);
  }
}

TEST_CASE("circumcircle examples") {
  const auto c = geom::circumcircle({0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2});
  CHECK(c.center.x == doctest::Approx(0.5));
  CHECK(c.center.y == doctest::Approx(std::sqrt(3.0) / 6));
  CHECK(c.radius == doctest::Approx(1 / std::sqrt(3.0)));
  const auto d = geom::circumcircle({0, 0}, {2, 0}, {0, 2});
  CHECK(d.center.x == doctest::Approx(1.0));
  CHECK(d.center.y == doctest::Approx(1.0));
  CHECK(d.radius == doctest::Approx(std::sqrt(2.0)));
  try {
    geom::circumcircle({0, 0}, {1, 0}, {2, 0});
    FAIL("expected DegenerateTriangle");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateTriangle);
  }
  CHECK(std::isinf(geom::circumradius({0, 0}, {1, 0}, {2, 0})));
}

TEST_CASE("orientation examples") {
  CHECK(geom::orientation({0, 0}, {1, 0}, {0, 1}) == 1);
  CHECK(geom::orientation({0, 0}, {1, 0}, {2, 0}) == 0);
  CHECK(geom::orientation({0, 0}, {0, 1}, {1, 0}) == -1);
}

TEST_CASE("in_circumcircle examples") {
  const Point a{1, 0}, b{0, 1}, c{-1, 0};
  CHECK(geom::in_circumcircle(a, b, c, {0, 0}) == 1);
  CHECK(geom::in_circumcircle(a, b, c, {0, -1}) == 0);
  CHECK(geom::in_circumcircle(a, b, c, {0, -2}) == -1);
  CHECK_THROWS_AS(geom::in_circumcircle(c, b, a, {0, 0}), Error);
}

TEST_CASE("predicates match the rational oracle on near-degenerate input") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-4, 4);
  std::uniform_int_distribution<int> small(-3, 3);
  for (int t = 0; t < 3000; ++t) {
    Point p{u(rng), u(rng)}, q{u(rng), u(rng)};
    // Third point nearly on the line pq, perturbed by a few ulps.
    const double s = u(rng);
    Point r = p + s * (q - p);
    r.x = std::nextafter(r.x, r.x + small(rng));
    CHECK(geom::orientation(p, q, r) == orient_q(p, q, r));
  }
  for (int t = 0; t < 3000; ++t) {
    // Cocircular integer-ish points, then nudged.
    const double th[4] = {u(rng), u(rng), u(rng), u(rng)};
    Point pts[4];
    for (int k = 0; k < 4; ++k) pts[k] = Point{1.5, -0.5} + 2.0 * geom::unit_dir(th[k]);
    pts[3].y = std::nextafter(pts[3].y, pts[3].y + small(rng));
    CHECK(geom::incircle_raw(pts[0], pts[1], pts[2], pts[3]) == incircle_q(pts[0], pts[1], pts[2], pts[3]));
  }
  CHECK(geom::orientation({0.1, 0.1}, {0.2, 0.2}, {0.3, 0.3}) == orient_q({0.1, 0.1}, {0.2, 0.2}, {0.3, 0.3}));
}

TEST_CASE("circumradius_below_one matches the exact circumcenter") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  int small = 0;
  for (int t = 0; t < 5000; ++t) {
    const Point p{u(rng), u(rng)}, q{u(rng), u(rng)}, r{u(rng), u(rng)};
    const bool got = geom::circumradius_below_one(p, q, r);
    CHECK(got == small_q(p, q, r));
    small += got;
  }
  CHECK(small > 100);
  // Exactly R = 1: right triangle inscribed in the unit circle.
  CHECK_FALSE(geom::circumradius_below_one({1, 0}, {-1, 0}, {0, 1}));
  CHECK(geom::circumradius_below_one({0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}));
}

TEST_CASE("normalize_ccw stays in range") {
  for (double a : {-1e-300, -kTwoPi, kTwoPi, 7 * kPi, -0.0, 1e10}) {
    const double n = geom::normalize_ccw(a);
    CHECK(n >= 0.0);
    CHECK(n < kTwoPi);
  }
}

TEST_CASE("segment and ray distance") {
  CHECK(geom::segment_distance({0, 1}, {-1, 0}, {1, 0}) == doctest::Approx(1.0));
  CHECK(geom::segment_distance({3, 0}, {-1, 0}, {1, 0}) == doctest::Approx(2.0));
  CHECK(geom::ray_distance({5, 2}, {0, 0}, {1, 0}) == doctest::Approx(2.0));
  CHECK(geom::ray_distance({-3, 4}, {0, 0}, {1, 0}) == doctest::Approx(5.0));
}

TEST_CASE("uncovered arcs agree with dense sampling") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-2.5, 2.5);
  for (int t = 0; t < 200; ++t) {
    std::vector<Point> c{{0, 0}};
    while (c.size() < 6) {
      const Point p{u(rng), u(rng)};
      bool ok = true;
      for (const Point& q : c) ok = ok && geom::dist(p, q) >= 1.0;
      if (ok) c.push_back(p);
    }
    const auto arcs = geom::uncovered_arcs(c, 0);
    for (int s = 0; s < 720; ++s) {
      const double th = kTwoPi * (s + 0.37) / 720;
      const double margin = geom::cover_margin(c, c[0] + geom::unit_dir(th), 0);
      if (std::abs(margin) < 1e-9) continue;
      bool inside = false;
      for (const auto& a : arcs) inside = inside || a.contains(th);
      CHECK(inside == (margin > 0));
    }
  }
}

TEST_CASE("entry_angle lands on both circles and enters b") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0, kTwoPi), d(0.3, 2.0);
  for (int t = 0; t < 500; ++t) {
    const Point a{0.3, -0.2};
    const Point b = a + d(rng) * geom::unit_dir(u(rng));
    const auto th = geom::entry_angle(a, b);
    REQUIRE(th.has_value());
    const Point x = a + geom::unit_dir(*th);
    CHECK(geom::dist(x, b) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(geom::dist(a + geom::unit_dir(*th - 1e-4), b) > 1.0);
  }
  CHECK_FALSE(geom::entry_angle({0, 0}, {2.5, 0}).has_value());
}
