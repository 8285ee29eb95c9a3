#include "kissgeo/geometry.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "kissgeo/error.hpp"

namespace kissgeo {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::AmbiguousAntiparallel: return "AmbiguousAntiparallel";
    case ErrorKind::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::Overlap: return "Overlap";
    case ErrorKind::DuplicateCenter: return "DuplicateCenter";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::RadiusTooLarge: return "RadiusTooLarge";
    case ErrorKind::Orphan: return "Orphan";
    case ErrorKind::EmptyTree: return "EmptyTree";
    case ErrorKind::TooFewTwoDisks: return "TooFewTwoDisks";
    case ErrorKind::AtOrigin: return "AtOrigin";
    case ErrorKind::InvalidRegion: return "InvalidRegion";
    case ErrorKind::AllCollinear: return "AllCollinear";
    case ErrorKind::NotConvex: return "NotConvex";
    case ErrorKind::TreeEdgeNotInDelaunay: return "TreeEdgeNotInDelaunay";
    case ErrorKind::NotSimplyConnected: return "NotSimplyConnected";
    case ErrorKind::InvolvementMismatch: return "InvolvementMismatch";
    case ErrorKind::CoverageViolation: return "CoverageViolation";
    case ErrorKind::NotUnitRadiusChain: return "NotUnitRadiusChain";
    case ErrorKind::ClockwiseArc: return "ClockwiseArc";
    case ErrorKind::CentersTooClose: return "CentersTooClose";
    case ErrorKind::NoIntersection: return "NoIntersection";
    case ErrorKind::EndpointMismatch: return "EndpointMismatch";
    case ErrorKind::DegenerateAngle: return "DegenerateAngle";
    case ErrorKind::InequalityViolation: return "InequalityViolation";
    case ErrorKind::CentersInvalid: return "CentersInvalid";
    case ErrorKind::CenterNotOnCurve: return "CenterNotOnCurve";
    case ErrorKind::GenerationTimeout: return "GenerationTimeout";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

namespace geom {

void require_finite(Point p, const char* what) {
  if (!finite(p)) throw Error(ErrorKind::NonFinite, std::string(what) + " has a non-finite coordinate");
}

double normalize_ccw(double radians) {
  double r = std::fmod(radians, kTwoPi);
  if (r < 0) r += kTwoPi;
  // fmod of a tiny negative value can round up to exactly 2*pi
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double angccw(Vec a, Vec b) {
  require_finite(a, "angccw argument");
  require_finite(b, "angccw argument");
  if ((a.x == 0 && a.y == 0) || (b.x == 0 && b.y == 0))
    throw Error(ErrorKind::ZeroVector, "angccw of a zero vector");
  return normalize_ccw(std::atan2(cross(a, b), dot(a, b)));
}

double signed_angle(Vec a, Vec b, double eps) {
  const double ccw = angccw(a, b);
  if (std::abs(ccw - kPi) <= eps)
    throw Error(ErrorKind::AmbiguousAntiparallel, "vectors are antiparallel");
  return ccw < kPi ? ccw : ccw - kTwoPi;
}

Circle circumcircle(Point p, Point q, Point r) {
  require_finite(p, "circumcircle vertex");
  require_finite(q, "circumcircle vertex");
  require_finite(r, "circumcircle vertex");
  if (orientation(p, q, r) == 0)
    throw Error(ErrorKind::DegenerateTriangle, "circumcircle of collinear or coincident points");
  // Translate to p for accuracy.
  const Vec b = q - p;
  const Vec c = r - p;
  const double d = 2.0 * cross(b, c);
  const double bb = dot(b, b);
  const double cc = dot(c, c);
  const Vec off{(c.y * bb - b.y * cc) / d, (b.x * cc - c.x * bb) / d};
  return {p + off, norm(off)};
}

double circumradius(Point p, Point q, Point r) {
  if (orientation(p, q, r) == 0) return std::numeric_limits<double>::infinity();
  const double a = dist(q, r), b = dist(p, r), c = dist(p, q);
  const double area2 = std::abs(cross(q - p, r - p));
  return a * b * c / (2.0 * area2);
}

double segment_distance(Point p, Point a, Point b) {
  const Vec ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0) return dist(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return dist(p, a + t * ab);
}

double ray_distance(Point p, Point a, Vec dir) {
  const double len2 = dot(dir, dir);
  if (len2 == 0) return dist(p, a);
  const double t = std::max(0.0, dot(p - a, dir) / len2);
  return dist(p, a + t * dir);
}

}  // namespace geom
}  // namespace kissgeo
