#include "kissgeo/unit_disks.hpp"

#include <algorithm>
#include <cmath>

namespace kissgeo::geom {

std::vector<AngleInterval> uncovered_arcs(const std::vector<Point>& centers, std::size_t k) {
  struct Open {
    double start, end;
  };
  std::vector<Open> cover;
  const Point c = centers[k];
  for (std::size_t m = 0; m < centers.size(); ++m) {
    if (m == k) continue;
    const Vec d = centers[m] - c;
    const double len = norm(d);
    if (len == 0.0 || len >= 2.0) continue;
    const double half = std::acos(len / 2.0);
    const double s = normalize_ccw(direction(d) - half);
    cover.push_back({s, s + 2.0 * half});
  }
  if (cover.empty()) return {{0.0, kTwoPi}};
  std::sort(cover.begin(), cover.end(), [](const Open& a, const Open& b) { return a.start < b.start; });

  const double s0 = cover.front().start;
  double reach = s0;
  for (const Open& o : cover) reach = std::max(reach, o.end - kTwoPi);

  std::vector<AngleInterval> gaps;
  for (std::size_t idx = 0; idx < cover.size(); ++idx) {
    const Open& o = cover[idx];
    if (idx > 0 && o.start >= reach) gaps.push_back({normalize_ccw(reach), o.start - reach});
    reach = std::max(reach, o.end);
  }
  if (reach <= s0 + kTwoPi) gaps.push_back({normalize_ccw(reach), s0 + kTwoPi - reach});
  return gaps;
}

double cover_margin(const std::vector<Point>& centers, Point p, std::optional<std::size_t> skip) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (skip && *skip == i) continue;
    m = std::min(m, dist(p, centers[i]) - 1.0);
  }
  return m;
}

std::optional<double> entry_angle(Point a, Point b, double eps) {
  const Vec d = b - a;
  const double len = norm(d);
  if (len == 0.0 || len > 2.0 + eps) return std::nullopt;
  const double half = std::acos(std::min(1.0, len / 2.0));
  return normalize_ccw(direction(d) - half);
}

}  // namespace kissgeo::geom
