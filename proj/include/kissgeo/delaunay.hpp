#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "kissgeo/geometry.hpp"
#include "kissgeo/packing.hpp"

namespace kissgeo::delaunay {

using geom::Point;
using Face = std::array<std::size_t, 3>;  // counterclockwise vertex indices

struct Triangulation {
  std::vector<Point> points;
  std::vector<Face> faces;

  /// neighbors[f][e] is the face across edge (faces[f][e], faces[f][(e+1)%3]).
  std::vector<std::array<std::optional<std::size_t>, 3>> adjacency() const;
  bool has_edge(std::size_t a, std::size_t b) const;
};

/// Lawson-flip Delaunay triangulation (independent of the greedy construction).
/// Throws AllCollinear for fewer than three points or collinear input.
Triangulation delaunay(const std::vector<Point>& points);

/// Scan all non-degenerate triangles by nondecreasing circumradius (ties:
/// lexicographic vertex triple) and keep each one whose closed triangle
/// holds no other input point and whose interior misses every kept face.
Triangulation greedy_circumradius_triangulation(const std::vector<Point>& points);

/// True iff no input point lies strictly inside any face's circumcircle.
/// With tol > 0 a point must be more than tol * max(1, R) inside to count.
bool satisfies_empty_circle(const Triangulation& t, double tol = 0.0);

/// For a convex quad pqrs split into faces pqr and rsp: checks that
/// R(pqr) < 1 <= R(rsp) implies the angle at s is acute. Throws NotConvex.
bool no_obtuse_flip_check(Point p, Point q, Point r, Point s);

/// The tree drawing together with the Delaunay faces of circumradius < 1.
struct EComplex {
  std::vector<Point> points;
  std::vector<std::pair<std::size_t, std::size_t>> tree_edges;
  std::vector<Face> small_faces;       // ascending circumradius
  bool ascending_order_simply_connected = true;
  std::vector<std::size_t> boundary_walk;
};

/// Throws TreeEdgeNotInDelaunay if some tree edge is missing from `tri`, BadIndex
/// when the two are built on different point sets.
/// A triangulation with no faces (collinear centers) yields E = T.
/// Faces count as small when R < 1 - tol.geom (exact R < 1 when tol.geom is 0).
EComplex build_E(const Triangulation& tri, const packing::PTree& tree, const Tolerances& tol = {});

int euler_characteristic(const EComplex& e);
bool simply_connected(const EComplex& e);

/// One corner of the counterclockwise walk around E: vertex `at`, reached from `from`.
struct WalkCorner {
  std::size_t at;
  std::size_t from;
  std::size_t to;
};

/// Counterclockwise traversal of the boundary of E. Throws NotSimplyConnected.
std::vector<WalkCorner> boundary_walk_corners(const EComplex& e);
std::vector<std::size_t> boundary_walk(const EComplex& e);

/// Maps every corner of the E walk onto the tree traversal occurrence whose
/// tree wedge contains it; returns occurrence indices (the set I).
std::vector<std::size_t> walk_occurrences(const EComplex& e, const packing::PTree& tree,
                                          const packing::PTraversal& tr);

struct InvolvementResult {
  std::vector<std::size_t> positions;    // involved region positions (from the walk), first and last included
  std::vector<bool> by_walk;             // per region member
  std::vector<bool> direct;              // per region member, arc-coverage test
  std::vector<bool> ambiguous;           // direct test within tolerance of the boundary case
};

/// Computes involvement twice (walk membership and direct uncovered-arc test)
/// and throws InvolvementMismatch(k) when an unambiguous direct verdict disagrees.
InvolvementResult involved_disks(const packing::Region& region, const std::vector<std::size_t>& walk_occ,
                                 const std::vector<Point>& centers, const Tolerances& tol = {});

struct CoverageReport {
  std::size_t small_face_arcs_checked = 0;
  std::size_t walk_witnesses = 0;
  std::vector<Point> witnesses;  // one per boundary-walk corner
};

/// Cone arcs of small faces are covered by the two neighbouring disks, and every
/// walk corner has a point of its arc outside both walk neighbours. Throws CoverageViolation.
CoverageReport arc_coverage_checks(const EComplex& e, const Tolerances& tol = {});

/// Arc of the unit circle around `q` swept counterclockwise from ray qp to ray qr
/// (full turn when the rays coincide). Returns {start angle, length}.
std::pair<double, double> cone_arc(Point q, Point p, Point r);

}  // namespace kissgeo::delaunay
