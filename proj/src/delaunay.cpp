#include "kissgeo/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <tuple>

#include "kissgeo/error.hpp"

namespace kissgeo::delaunay {

using geom::orientation;

std::vector<std::array<std::optional<std::size_t>, 3>> Triangulation::adjacency() const {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> owner;
  for (std::size_t f = 0; f < faces.size(); ++f)
    for (int e = 0; e < 3; ++e) owner[{faces[f][e], faces[f][(e + 1) % 3]}] = f;
  std::vector<std::array<std::optional<std::size_t>, 3>> adj(faces.size());
  for (std::size_t f = 0; f < faces.size(); ++f)
    for (int e = 0; e < 3; ++e) {
      const auto it = owner.find({faces[f][(e + 1) % 3], faces[f][e]});
      if (it != owner.end()) adj[f][e] = it->second;
    }
  return adj;
}

bool Triangulation::has_edge(std::size_t a, std::size_t b) const {
  for (const Face& f : faces)
    for (int e = 0; e < 3; ++e) {
      const std::size_t u = f[e], v = f[(e + 1) % 3];
      if ((u == a && v == b) || (u == b && v == a)) return true;
    }
  return false;
}

namespace {

void require_triangulable(const std::vector<Point>& pts) {
  for (const Point& p : pts) geom::require_finite(p, "triangulation point");
  if (pts.size() < 3) throw Error(ErrorKind::AllCollinear, "fewer than three points");
  for (std::size_t k = 2; k < pts.size(); ++k)
    if (orientation(pts[0], pts[1], pts[k]) != 0) return;
  throw Error(ErrorKind::AllCollinear, std::to_string(pts.size()) + " collinear points");
}

Face ccw_face(const std::vector<Point>& pts, std::size_t a, std::size_t b, std::size_t c) {
  if (orientation(pts[a], pts[b], pts[c]) < 0) std::swap(b, c);
  return {a, b, c};
}

// Sweep triangulation in lexicographic order; starts from the first
// non-collinear prefix and fans each new point to the visible hull edges.
std::vector<Face> sweep_triangulation(const std::vector<Point>& pts) {
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return geom::lex_less(pts[a], pts[b]); });
  for (std::size_t k = 1; k < order.size(); ++k)
    if (pts[order[k]] == pts[order[k - 1]]) throw Error(ErrorKind::DegenerateTriangle, "duplicate point");

  std::size_t apex_pos = 2;
  while (orientation(pts[order[0]], pts[order[1]], pts[order[apex_pos]]) == 0) ++apex_pos;
  const std::size_t apex = order[apex_pos];

  std::vector<Face> faces;
  for (std::size_t t = 0; t + 1 < apex_pos; ++t) faces.push_back(ccw_face(pts, order[t], order[t + 1], apex));

  std::vector<std::size_t> hull;
  if (orientation(pts[order[0]], pts[order[1]], pts[apex]) > 0) {
    for (std::size_t t = 0; t < apex_pos; ++t) hull.push_back(order[t]);
    hull.push_back(apex);
  } else {
    hull.push_back(order[0]);
    hull.push_back(apex);
    for (std::size_t t = apex_pos - 1; t >= 1; --t) hull.push_back(order[t]);
  }

  for (std::size_t k = apex_pos + 1; k < order.size(); ++k) {
    const std::size_t p = order[k];
    const std::size_t h = hull.size();
    std::vector<bool> visible(h);
    for (std::size_t e = 0; e < h; ++e) visible[e] = orientation(pts[hull[e]], pts[hull[(e + 1) % h]], pts[p]) < 0;
    std::size_t first = h;
    for (std::size_t e = 0; e < h; ++e)
      if (visible[e] && !visible[(e + h - 1) % h]) first = e;
    std::size_t e = first;
    std::size_t count = 0;
    while (visible[e]) {
      faces.push_back({hull[(e + 1) % h], hull[e], p});
      e = (e + 1) % h;
      ++count;
    }
    // hull[first+1 .. first+count-1] leave the hull; p goes after hull[first].
    std::vector<std::size_t> next;
    next.reserve(h + 1);
    for (std::size_t s = 0; s < h; ++s) {
      const std::size_t idx = (first + 1 + count + s) % h;  // starts at hull[first + count]
      const std::size_t offset = (idx + h - first) % h;
      if (offset >= 1 && offset < count) continue;
      next.push_back(hull[idx]);
      if (idx == first) next.push_back(p);
    }
    hull = std::move(next);
  }
  return faces;
}

}  // namespace

Triangulation delaunay(const std::vector<Point>& points) {
  require_triangulable(points);
  Triangulation t;
  t.points = points;
  t.faces = sweep_triangulation(points);

  // Lawson flips until every interior edge is locally Delaunay.
  bool flipped = true;
  while (flipped) {
    flipped = false;
    std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, int>> owner;
    for (std::size_t f = 0; f < t.faces.size(); ++f)
      for (int e = 0; e < 3; ++e) owner[{t.faces[f][e], t.faces[f][(e + 1) % 3]}] = {f, e};
    for (std::size_t f = 0; f < t.faces.size() && !flipped; ++f) {
      for (int e = 0; e < 3 && !flipped; ++e) {
        const std::size_t a = t.faces[f][e], b = t.faces[f][(e + 1) % 3], c = t.faces[f][(e + 2) % 3];
        const auto it = owner.find({b, a});
        if (it == owner.end()) continue;
        const auto [g, ge] = it->second;
        const std::size_t d = t.faces[g][(ge + 2) % 3];
        if (geom::incircle_raw(points[a], points[b], points[c], points[d]) > 0) {
          t.faces[f] = {a, d, c};
          t.faces[g] = {d, b, c};
          flipped = true;
        }
      }
    }
  }
  return t;
}

namespace {

bool point_in_closed_triangle(const std::vector<Point>& pts, const Face& f, Point m) {
  return orientation(pts[f[0]], pts[f[1]], m) >= 0 && orientation(pts[f[1]], pts[f[2]], m) >= 0 &&
         orientation(pts[f[2]], pts[f[0]], m) >= 0;
}

// Separating-axis test on the six edge lines; exact via the orientation predicate.
bool interiors_disjoint(const std::vector<Point>& pts, const Face& s, const Face& t) {
  auto separated_by = [&](const Face& a, const Face& b) {
    for (int e = 0; e < 3; ++e) {
      const Point p = pts[a[e]], q = pts[a[(e + 1) % 3]];
      if (orientation(p, q, pts[b[0]]) <= 0 && orientation(p, q, pts[b[1]]) <= 0 && orientation(p, q, pts[b[2]]) <= 0)
        return true;
    }
    return false;
  };
  return separated_by(s, t) || separated_by(t, s);
}

struct Box {
  double x0, y0, x1, y1;
};

Box box_of(const std::vector<Point>& pts, const Face& f) {
  Box b{pts[f[0]].x, pts[f[0]].y, pts[f[0]].x, pts[f[0]].y};
  for (int k = 1; k < 3; ++k) {
    b.x0 = std::min(b.x0, pts[f[k]].x);
    b.y0 = std::min(b.y0, pts[f[k]].y);
    b.x1 = std::max(b.x1, pts[f[k]].x);
    b.y1 = std::max(b.y1, pts[f[k]].y);
  }
  return b;
}

// Number of input points on the convex hull boundary (collinear ones included).
std::size_t hull_point_count(const std::vector<Point>& pts) {
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return geom::lex_less(pts[a], pts[b]); });
  std::vector<std::size_t> hull;
  for (int pass = 0; pass < 2; ++pass) {
    const std::size_t base = hull.size();
    for (std::size_t idx : order) {
      while (hull.size() >= base + 2 && orientation(pts[hull[hull.size() - 2]], pts[hull.back()], pts[idx]) <= 0)
        hull.pop_back();
      hull.push_back(idx);
    }
    hull.pop_back();
    std::reverse(order.begin(), order.end());
  }
  std::size_t count = 0;
  for (const Point& m : pts) {
    for (std::size_t e = 0; e < hull.size(); ++e) {
      const Point a = pts[hull[e]], b = pts[hull[(e + 1) % hull.size()]];
      if (orientation(a, b, m) == 0 && std::min(a.x, b.x) <= m.x && m.x <= std::max(a.x, b.x) &&
          std::min(a.y, b.y) <= m.y && m.y <= std::max(a.y, b.y)) {
        ++count;
        break;
      }
    }
  }
  return count;
}

}  // namespace

Triangulation greedy_circumradius_triangulation(const std::vector<Point>& points) {
  require_triangulable(points);
  const std::size_t n = points.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (points[a] == points[b]) throw Error(ErrorKind::DegenerateTriangle, "duplicate point");

  struct Candidate {
    double key;
    Face face;  // sorted vertex triple
  };
  std::vector<Candidate> cands;
  cands.reserve(n * (n - 1) * (n - 2) / 6);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        if (orientation(points[a], points[b], points[c]) == 0) continue;
        const double r = geom::circumradius(points[a], points[b], points[c]);
        // Quantise so that rounding noise between equal radii defers to the lexicographic key.
        const double key = r < 1e6 ? std::round(r * 1e10) / 1e10 : r;
        cands.push_back({key, {a, b, c}});
      }
  std::sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
    return std::tie(x.key, x.face) < std::tie(y.key, y.face);
  });

  const std::size_t target = 2 * n - 2 - hull_point_count(points);
  Triangulation t;
  t.points = points;
  std::vector<Box> boxes;
  for (const Candidate& cand : cands) {
    if (t.faces.size() == target) break;
    const Face f = ccw_face(points, cand.face[0], cand.face[1], cand.face[2]);
    bool ok = true;
    for (std::size_t m = 0; m < n && ok; ++m) {
      if (m == f[0] || m == f[1] || m == f[2]) continue;
      if (point_in_closed_triangle(points, f, points[m])) ok = false;
    }
    if (!ok) continue;
    const Box bf = box_of(points, f);
    for (std::size_t g = 0; g < t.faces.size() && ok; ++g) {
      const Box& bg = boxes[g];
      if (bf.x1 <= bg.x0 || bg.x1 <= bf.x0 || bf.y1 <= bg.y0 || bg.y1 <= bf.y0) continue;
      if (!interiors_disjoint(points, f, t.faces[g])) ok = false;
    }
    if (!ok) continue;
    t.faces.push_back(f);
    boxes.push_back(bf);
  }
  return t;
}

bool satisfies_empty_circle(const Triangulation& t, double tol) {
  for (const Face& f : t.faces) {
    const Point a = t.points[f[0]], b = t.points[f[1]], c = t.points[f[2]];
    const geom::Circle cc = tol > 0.0 ? geom::circumcircle(a, b, c) : geom::Circle{};
    for (std::size_t m = 0; m < t.points.size(); ++m) {
      if (m == f[0] || m == f[1] || m == f[2]) continue;
      if (tol > 0.0) {
        if (geom::dist(t.points[m], cc.center) < cc.radius - tol * std::max(1.0, cc.radius)) return false;
      } else if (geom::in_circumcircle(a, b, c, t.points[m]) > 0) {
        return false;
      }
    }
  }
  return true;
}

bool no_obtuse_flip_check(Point p, Point q, Point r, Point s) {
  const int o1 = orientation(p, q, r), o2 = orientation(q, r, s), o3 = orientation(r, s, p), o4 = orientation(s, p, q);
  if (o1 == 0 || o1 != o2 || o2 != o3 || o3 != o4) throw Error(ErrorKind::NotConvex, "quadrilateral pqrs is not strictly convex");
  const bool premise = geom::circumradius_below_one(p, q, r) && !geom::circumradius_below_one(r, s, p);
  if (!premise) return true;
  return geom::dot(r - s, p - s) > 0.0;
}

}  // namespace kissgeo::delaunay
