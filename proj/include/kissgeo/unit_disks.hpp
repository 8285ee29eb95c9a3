#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "kissgeo/geometry.hpp"

namespace kissgeo::geom {

/// Closed arc of a unit circle: angles [start, start + length].
struct AngleInterval {
  double start = 0.0;
  double length = 0.0;

  bool contains(double angle, double eps = 0.0) const {
    return normalize_ccw(angle - start) <= length + eps || normalize_ccw(angle - start) >= kTwoPi - eps;
  }
  double at(double t) const { return start + t * length; }
};

/// Part of the unit circle around centers[k] not covered by the open unit
/// disks around the other centers. Degenerate (single point) arcs are kept.
std::vector<AngleInterval> uncovered_arcs(const std::vector<Point>& centers, std::size_t k);

/// min over m != skip of |p - c_m| - 1 (positive: outside every other disk).
double cover_margin(const std::vector<Point>& centers, Point p,
                    std::optional<std::size_t> skip = std::nullopt);

/// True iff p lies in some open unit disk around the centers.
inline bool in_union(const std::vector<Point>& centers, Point p) { return cover_margin(centers, p) < 0.0; }

/// Entry point of circle b when travelling counterclockwise along circle a
/// (unit radii). nullopt when the circles do not meet (|a-b| > 2 + eps).
std::optional<double> entry_angle(Point a, Point b, double eps = 1e-9);

}  // namespace kissgeo::geom
