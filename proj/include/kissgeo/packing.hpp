#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "kissgeo/geometry.hpp"

namespace kissgeo::packing {

using geom::Point;

/// Unit-diameter disks given by their centers, plus an optional source disk.
struct PackingInstance {
  std::vector<Point> centers;
  std::optional<std::size_t> source;
};

/// Two unit-diameter disks touch when their centers are 1 apart within the band.
bool touching(Point a, Point b, const Tolerances& tol = {});

struct ValidationReport {
  std::vector<std::pair<std::size_t, std::size_t>> tangent_pairs;
};

/// Checks the packing condition. Throws DuplicateCenter, Overlap(i, j, d),
/// NonFinite or BadIndex (source out of range).
ValidationReport validate_packing(const PackingInstance& p, const Tolerances& tol = {});

std::vector<std::vector<std::size_t>> tangency_graph(const std::vector<Point>& centers,
                                                     const Tolerances& tol = {});

inline constexpr int kUnreachable = -1;

struct KissingProfile {
  std::size_t source = 0;
  std::vector<int> dist;                       // kUnreachable for infinite kissing distance
  std::vector<std::vector<std::size_t>> layers;
  std::optional<int> radius;                   // nullopt when some disk is unreachable

  int layer_size(int d) const {
    return d < static_cast<int>(layers.size()) ? static_cast<int>(layers[static_cast<std::size_t>(d)].size()) : 0;
  }
};

KissingProfile kissing_profile(const PackingInstance& p, std::size_t source, const Tolerances& tol = {});

/// Index minimising the kissing radius (ties: lowest index).
std::size_t select_source(const PackingInstance& p, const Tolerances& tol = {});

/// Parent rule: among tangent disks one layer closer, minimise
/// angccw(source - child, candidate - child); ties by lowest index.
std::optional<std::size_t> choose_parent(const std::vector<Point>& centers, const KissingProfile& prof,
                                         const std::vector<std::vector<std::size_t>>& graph, std::size_t child);

struct PrunedPacking {
  PackingInstance packing;               // source is set
  KissingProfile profile;                // profile of `packing`
  std::vector<std::size_t> kept;         // original index of each kept disk
  std::vector<std::size_t> removed;      // original indices of removed disks
  std::vector<Point> removed_centers;
};

/// Drops all 3-disks and every 1-disk that is parent of no 2-disk.
/// Throws RadiusTooLarge unless the radius is finite and at most 3.
PrunedPacking prune(const PackingInstance& p, const KissingProfile& prof, const Tolerances& tol = {});

struct TreeEdge {
  std::size_t parent;
  std::size_t child;
  geom::Vec direction;  // unit vector parent -> child
};

struct PTree {
  std::vector<Point> points;
  std::size_t root = 0;
  std::vector<std::optional<std::size_t>> parent;
  std::vector<TreeEdge> edges;
  std::vector<int> layer;

  Point origin() const { return points[root]; }
  std::vector<std::vector<std::size_t>> adjacency() const;
};

/// Throws Orphan(v) when a non-source disk has no tangent disk one layer closer.
PTree assign_parents(const PackingInstance& p, const KissingProfile& prof, const Tolerances& tol = {});

/// Cyclic face walk of the plane tree; occ[k] is the disk at occurrence k.
struct PTraversal {
  std::vector<std::size_t> occ;
  std::size_t size() const { return occ.size(); }
  std::size_t at(std::size_t k) const { return occ[k % occ.size()]; }
};

/// Counterclockwise walk around the tree; starts at the lexicographically
/// smallest 2-disk (or smallest leaf when there are none).
PTraversal boundary_traversal(const PTree& t);

Point farthest_point(Point c, Point origin = {0.0, 0.0});

/// The stretch of the traversal between two consecutive 2-disk occurrences,
/// with the closed planar region it cuts off.
struct Region {
  std::size_t i = 0;                    // occurrence index of the first 2-disk
  std::size_t j = 0;                    // occurrence index of the second (mod n)
  std::vector<std::size_t> occurrences; // i, i+1, ..., j  (mod n)
  std::vector<std::size_t> members;     // disk index per occurrence
  int k01 = 0;                          // occurrences of the source
  std::vector<Point> chain;             // c_i, ..., c_j
  Point origin;
  Point f_i;
  Point f_j;

  std::size_t size() const { return members.size(); }
  Point c_i() const { return chain.front(); }
  Point c_j() const { return chain.back(); }
  geom::Vec ray_i() const;
  geom::Vec ray_j() const;
};

/// Throws TooFewTwoDisks when fewer than two 2-disk occurrences exist and
/// InvalidRegion when a subsegment has a size other than 3 or 5.
std::vector<Region> subsegments(const PTraversal& tr, const PTree& tree, const KissingProfile& prof);

/// Membership in the closed region; points within `tol` of its boundary count.
bool region_contains(const Region& r, Point p, double tol = 0.0);

/// Signed distance to the region boundary, positive inside.
double region_depth(const Region& r, Point p);

/// Hexagonal-lattice helpers shared by tests and generators.
std::vector<Point> hex_lattice_points(int n);

}  // namespace kissgeo::packing
