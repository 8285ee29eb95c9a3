#pragma once

#include <cmath>
#include <numbers>

namespace kissgeo {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Numeric tolerances shared by the whole pipeline (lengths in disk diameters).
struct Tolerances {
  double geom = 1e-9;       // distance / angle equality
  double tangency = 1e-9;   // upper half of the touching band [1 - geom, 1 + tangency]
  double slack = 1e-6;      // an inequality is violated only below -slack
};

namespace geom {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator-(Point a) { return {-a.x, -a.y}; }
  friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend constexpr Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Point a, Point b) = default;
};

using Vec = Point;

constexpr double dot(Vec a, Vec b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec a, Vec b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec a) { return std::hypot(a.x, a.y); }
inline double dist(Point a, Point b) { return norm(a - b); }
inline Vec unit_dir(double angle) { return {std::cos(angle), std::sin(angle)}; }
inline double direction(Vec a) { return std::atan2(a.y, a.x); }
inline bool finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Lexicographic (x, then y) order.
constexpr bool lex_less(Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

/// Throws NonFinite when a coordinate is NaN or infinite.
void require_finite(Point p, const char* what);

struct Circle {
  Point center;
  double radius = 1.0;
};

/// Reduce an angle into [0, 2*pi).
double normalize_ccw(double radians);

/// Counterclockwise rotation taking `a` onto a positive multiple of `b`, in [0, 2*pi).
double angccw(Vec a, Vec b);

/// Directed angle in (-pi, pi). Throws AmbiguousAntiparallel when the
/// vectors are antiparallel within `eps`.
double signed_angle(Vec a, Vec b, double eps = 1e-9);

Circle circumcircle(Point p, Point q, Point r);

/// Circumradius of pqr; +inf for collinear input.
double circumradius(Point p, Point q, Point r);

/// Exact sign of the orientation determinant: +1 ccw, -1 cw, 0 collinear.
int orientation(Point p, Point q, Point r);

/// Exact in-circle sign for ccw pqr: +1 inside, 0 cocircular, -1 outside.
/// Throws DegenerateTriangle unless pqr is strictly counterclockwise.
int in_circumcircle(Point p, Point q, Point r, Point s);

/// Same determinant without the orientation precondition (sign flips for cw pqr).
int incircle_raw(Point p, Point q, Point r, Point s);

/// True iff pqr is non-degenerate and its circumradius is strictly below 1,
/// decided exactly on the double inputs.
bool circumradius_below_one(Point p, Point q, Point r);

/// Distance from `p` to the closed segment ab.
double segment_distance(Point p, Point a, Point b);

/// Distance from `p` to the closed ray starting at `a` with direction `dir`.
double ray_distance(Point p, Point a, Vec dir);

}  // namespace geom
}  // namespace kissgeo
