#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kissgeo/geometry.hpp"
#include "kissgeo/packing.hpp"

namespace kissgeo::curve {

using geom::Point;
using geom::Vec;

/// Arc of a unit circle. A negative sweep is a clockwise arc (rejected by validate_curve).
struct Arc {
  Point center;
  double start_angle = 0.0;
  double sweep = 0.0;

  double end_angle() const { return start_angle + sweep; }
  double length() const { return std::abs(sweep); }
  Vec start_dir() const { return geom::unit_dir(start_angle); }
  Vec end_dir() const { return geom::unit_dir(end_angle()); }
  Point start_point() const { return center + start_dir(); }
  Point end_point() const { return center + end_dir(); }
};

struct SparseCurve {
  std::vector<Arc> arcs;
  bool closed = false;

  bool empty() const { return arcs.empty(); }
  Point start() const { return arcs.front().start_point(); }
  Point end() const { return arcs.back().end_point(); }
};

/// Throws ClockwiseArc, NotUnitRadiusChain (endpoints do not chain) or
/// CentersTooClose (distinct centers closer than 1).
void validate_curve(const SparseCurve& c, const Tolerances& tol = {});

double curve_length(const SparseCurve& c);

/// Follows the involved disks (region positions, first and last included)
/// counterclockwise from f_i to f_j, switching where the next circle is entered.
/// Throws NoIntersection(k, k+1).
SparseCurve construct_gamma_ij(const packing::Region& region, const std::vector<std::size_t>& involved,
                               const Tolerances& tol = {});

/// Closed concatenation. Throws EndpointMismatch.
SparseCurve concatenate(const std::vector<SparseCurve>& parts, const Tolerances& tol = {});

struct Jump {
  Point position;
  double value = 0.0;  // angccw(w_{k+1}^s, w_k^f)
};

struct JumpProfile {
  std::vector<Jump> jumps;
  double delta = 0.0;
};

/// Jumps between consecutive arcs (no wrap-around jump, even for closed curves).
JumpProfile direction_jumps(const SparseCurve& c);

struct RegionAngles {
  double phi = 0.0;
  double alpha = 0.0;
  std::optional<double> psi;          // k = 1 only
  Vec u_i, u_j, v_i, v_j;
  double ui_vi = 0.0;                 // signed angle from u_i to v_i
  double uj_vj = 0.0;
  std::optional<Point> c_prime;       // k = 1 only
};

/// Throws DegenerateAngle when u and v are antiparallel.
RegionAngles region_angles(const packing::Region& region);

struct Check {
  std::string name;
  double slack = 0.0;  // negative means the inequality fails by that much
};

struct RegionVerdict {
  std::vector<Check> checks;

  double min_slack() const;
  /// Checks with slack below -tol.
  std::vector<Check> violations(double tol) const;
};

/// Local bounds for one region plus the supporting observations that apply
/// to its case. Never throws on a violation; callers decide.
RegionVerdict check_region_inequality(const packing::Region& region, const RegionAngles& angles,
                                      const SparseCurve& gamma_ij, const JumpProfile& jumps,
                                      const std::vector<std::size_t>& involved);

struct MinCurveResult {
  double length = 0.0;  // +inf when no curve within the depth bound reaches the gap
  SparseCurve curve;
};

/// Shortest counterclockwise curve over the given centers whose endpoints are
/// at least `gap` apart, searching arc sequences through circle intersections
/// of at most `max_arcs` arcs. Throws CentersInvalid.
MinCurveResult min_curve_search(const std::vector<Point>& centers, double gap, int max_arcs = 6);

/// Distance from p to the point set of the curve.
double distance_to_curve(const SparseCurve& c, Point p);

/// Arc-length position of the first point of the curve within eps of p.
std::optional<double> arc_length_position(const SparseCurve& c, Point p, double eps);

struct ExclusionVerdict {
  std::vector<double> positions;  // sorted arc-length positions of the removed centers
  double min_gap = 0.0;           // smallest (cyclic) gap; +inf for fewer than two centers
  double capacity = 0.0;          // |gamma| / (pi/3)
  std::size_t count = 0;
  double slack = 0.0;             // min(min_gap - pi/3, capacity - count)
};

/// Throws CenterNotOnCurve(idx).
ExclusionVerdict excluded_disk_count_bound(const SparseCurve& gamma, const std::vector<Point>& removed,
                                           const Tolerances& tol = {});

}  // namespace kissgeo::curve
