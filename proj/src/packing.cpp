#include "kissgeo/packing.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <limits>
#include <string>

#include "kissgeo/error.hpp"

namespace kissgeo::packing {

using geom::Vec;

bool touching(Point a, Point b, const Tolerances& tol) {
  const double d = geom::dist(a, b);
  return d >= 1.0 - tol.geom && d <= 1.0 + tol.tangency;
}

std::vector<std::vector<std::size_t>> tangency_graph(const std::vector<Point>& centers, const Tolerances& tol) {
  std::vector<std::vector<std::size_t>> g(centers.size());
  for (std::size_t a = 0; a < centers.size(); ++a)
    for (std::size_t b = a + 1; b < centers.size(); ++b)
      if (touching(centers[a], centers[b], tol)) {
        g[a].push_back(b);
        g[b].push_back(a);
      }
  return g;
}

ValidationReport validate_packing(const PackingInstance& p, const Tolerances& tol) {
  for (const Point& c : p.centers) geom::require_finite(c, "disk center");
  if (p.source && *p.source >= p.centers.size())
    throw Error(ErrorKind::BadIndex, "source index " + std::to_string(*p.source) + " out of range");
  ValidationReport report;
  for (std::size_t a = 0; a < p.centers.size(); ++a) {
    for (std::size_t b = a + 1; b < p.centers.size(); ++b) {
      if (p.centers[a] == p.centers[b])
        throw Error(ErrorKind::DuplicateCenter, "disks " + std::to_string(a) + " and " + std::to_string(b));
      const double d = geom::dist(p.centers[a], p.centers[b]);
      if (d < 1.0 - tol.geom) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "(%zu, %zu, %.17g)", a, b, d);
        throw Error(ErrorKind::Overlap, buf);
      }
      if (d <= 1.0 + tol.tangency) report.tangent_pairs.emplace_back(a, b);
    }
  }
  return report;
}

KissingProfile kissing_profile(const PackingInstance& p, std::size_t source, const Tolerances& tol) {
  if (source >= p.centers.size())
    throw Error(ErrorKind::BadIndex, "source index " + std::to_string(source) + " out of range");
  const auto g = tangency_graph(p.centers, tol);
  KissingProfile prof;
  prof.source = source;
  prof.dist.assign(p.centers.size(), kUnreachable);
  prof.dist[source] = 0;
  std::deque<std::size_t> queue{source};
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t w : g[v])
      if (prof.dist[w] == kUnreachable) {
        prof.dist[w] = prof.dist[v] + 1;
        queue.push_back(w);
      }
  }
  int maxd = 0;
  bool all_reached = true;
  for (int d : prof.dist) {
    if (d == kUnreachable) all_reached = false;
    else maxd = std::max(maxd, d);
  }
  prof.layers.resize(static_cast<std::size_t>(maxd) + 1);
  for (std::size_t v = 0; v < prof.dist.size(); ++v)
    if (prof.dist[v] != kUnreachable) prof.layers[static_cast<std::size_t>(prof.dist[v])].push_back(v);
  if (all_reached) prof.radius = maxd;
  return prof;
}

std::size_t select_source(const PackingInstance& p, const Tolerances& tol) {
  if (p.centers.empty()) throw Error(ErrorKind::BadIndex, "empty packing has no source");
  std::size_t best = 0;
  int best_radius = std::numeric_limits<int>::max();
  for (std::size_t s = 0; s < p.centers.size(); ++s) {
    const auto prof = kissing_profile(p, s, tol);
    if (prof.radius && *prof.radius < best_radius) {
      best_radius = *prof.radius;
      best = s;
    }
  }
  return best;
}

std::optional<std::size_t> choose_parent(const std::vector<Point>& centers, const KissingProfile& prof,
                                         const std::vector<std::vector<std::size_t>>& graph, std::size_t child) {
  const int d = prof.dist[child];
  if (d <= 0) return std::nullopt;
  const Point c = centers[child];
  const Vec inward = centers[prof.source] - c;
  std::optional<std::size_t> best;
  double best_key = 0.0;
  for (std::size_t cand : graph[child]) {
    if (prof.dist[cand] != d - 1) continue;
    const double key = geom::angccw(inward, centers[cand] - c);
    if (!best || key < best_key || (key == best_key && cand < *best)) {
      best = cand;
      best_key = key;
    }
  }
  return best;
}

PrunedPacking prune(const PackingInstance& p, const KissingProfile& prof, const Tolerances& tol) {
  if (!prof.radius || *prof.radius > 3)
    throw Error(ErrorKind::RadiusTooLarge,
                prof.radius ? "kissing radius " + std::to_string(*prof.radius) + " exceeds 3" : "kissing radius is infinite");
  const auto g = tangency_graph(p.centers, tol);
  const std::size_t n = p.centers.size();
  std::vector<bool> has_child(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    if (prof.dist[v] != 2) continue;
    const auto par = choose_parent(p.centers, prof, g, v);
    if (!par) throw Error(ErrorKind::Orphan, "2-disk " + std::to_string(v) + " has no tangent 1-disk");
    has_child[*par] = true;
  }

  PrunedPacking out;
  std::vector<std::size_t> remap(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    const int d = prof.dist[v];
    const bool drop = d == 3 || (d == 1 && !has_child[v]);
    if (drop) {
      out.removed.push_back(v);
      out.removed_centers.push_back(p.centers[v]);
    } else {
      remap[v] = out.kept.size();
      out.kept.push_back(v);
      out.packing.centers.push_back(p.centers[v]);
    }
  }
  out.packing.source = remap[prof.source];
  out.profile = kissing_profile(out.packing, *out.packing.source, tol);
  return out;
}

std::vector<std::vector<std::size_t>> PTree::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(points.size());
  for (const auto& e : edges) {
    adj[e.parent].push_back(e.child);
    adj[e.child].push_back(e.parent);
  }
  return adj;
}

PTree assign_parents(const PackingInstance& p, const KissingProfile& prof, const Tolerances& tol) {
  const auto g = tangency_graph(p.centers, tol);
  PTree t;
  t.points = p.centers;
  t.root = prof.source;
  t.layer = prof.dist;
  t.parent.assign(p.centers.size(), std::nullopt);
  for (std::size_t v = 0; v < p.centers.size(); ++v) {
    if (v == prof.source) continue;
    if (prof.dist[v] == kUnreachable)
      throw Error(ErrorKind::Orphan, "disk " + std::to_string(v) + " is unreachable from the source");
    const auto par = choose_parent(p.centers, prof, g, v);
    if (!par) throw Error(ErrorKind::Orphan, "disk " + std::to_string(v) + " has no tangent parent");
    t.parent[v] = par;
    const Vec d = p.centers[v] - p.centers[*par];
    t.edges.push_back({*par, v, (1.0 / geom::norm(d)) * d});
  }
  return t;
}

PTraversal boundary_traversal(const PTree& t) {
  if (t.edges.empty()) throw Error(ErrorKind::EmptyTree, "tree has no edges");
  auto adj = t.adjacency();
  // Neighbours of each vertex sorted counterclockwise by direction.
  for (std::size_t v = 0; v < adj.size(); ++v) {
    std::sort(adj[v].begin(), adj[v].end(), [&](std::size_t a, std::size_t b) {
      return geom::normalize_ccw(geom::direction(t.points[a] - t.points[v])) <
             geom::normalize_ccw(geom::direction(t.points[b] - t.points[v]));
    });
  }
  auto next_after = [&](std::size_t v, std::size_t from) {
    const auto& nb = adj[v];
    const auto it = std::find(nb.begin(), nb.end(), from);
    const std::size_t pos = static_cast<std::size_t>(it - nb.begin());
    return nb[(pos + 1) % nb.size()];
  };

  std::optional<std::size_t> start;
  for (int wanted : {2, -2}) {  // 2-disks first, otherwise any leaf
    for (std::size_t v = 0; v < adj.size(); ++v) {
      const bool ok = wanted == 2 ? (t.layer[v] == 2 && adj[v].size() == 1) : adj[v].size() == 1;
      if (ok && (!start || geom::lex_less(t.points[v], t.points[*start]))) start = v;
    }
    if (start) break;
  }

  PTraversal tr;
  const std::size_t first = *start;
  std::size_t prev = first;
  std::size_t cur = adj[first].front();
  tr.occ.push_back(first);
  const std::size_t total = 2 * t.edges.size();
  while (tr.occ.size() < total) {
    tr.occ.push_back(cur);
    const std::size_t nxt = next_after(cur, prev);
    prev = cur;
    cur = nxt;
  }
  return tr;
}

Point farthest_point(Point c, Point origin) {
  const Vec v = c - origin;
  const double len = geom::norm(v);
  if (len == 0.0) throw Error(ErrorKind::AtOrigin, "farthest point of a disk centered at the origin");
  return origin + (1.0 + 1.0 / len) * v;
}

Vec Region::ray_i() const {
  const Vec v = c_i() - origin;
  return (1.0 / geom::norm(v)) * v;
}

Vec Region::ray_j() const {
  const Vec v = c_j() - origin;
  return (1.0 / geom::norm(v)) * v;
}

std::vector<Region> subsegments(const PTraversal& tr, const PTree& tree, const KissingProfile& prof) {
  std::vector<std::size_t> twos;
  for (std::size_t k = 0; k < tr.size(); ++k)
    if (prof.dist[tr.occ[k]] == 2) twos.push_back(k);
  if (twos.size() < 2)
    throw Error(ErrorKind::TooFewTwoDisks, std::to_string(twos.size()) + " 2-disk occurrence(s)");

  const std::size_t n = tr.size();
  std::vector<Region> regions;
  for (std::size_t a = 0; a < twos.size(); ++a) {
    Region r;
    r.i = twos[a];
    r.j = twos[(a + 1) % twos.size()];
    r.origin = tree.origin();
    const std::size_t len = (r.j + n - r.i) % n + 1;
    for (std::size_t s = 0; s < len; ++s) {
      const std::size_t k = (r.i + s) % n;
      r.occurrences.push_back(k);
      r.members.push_back(tr.occ[k]);
      r.chain.push_back(tree.points[tr.occ[k]]);
      if (tr.occ[k] == tree.root) ++r.k01;
    }
    if (len != 3 && len != 5)
      throw Error(ErrorKind::InvalidRegion, "subsegment at occurrence " + std::to_string(r.i) + " has " +
                                                std::to_string(len) + " disks");
    r.f_i = farthest_point(r.c_i(), r.origin);
    r.f_j = farthest_point(r.c_j(), r.origin);
    regions.push_back(std::move(r));
  }
  return regions;
}

namespace {

// Far enough that the closing polyline never matters for queries near the packing.
constexpr double kFar = 1e6;

std::vector<Point> region_polygon(const Region& r) {
  std::vector<Point> poly;
  const double a0 = geom::direction(r.ray_i());
  const double sweep = geom::angccw(r.ray_i(), r.ray_j());
  poly.push_back(r.c_i() + kFar * r.ray_i());
  const int steps = static_cast<int>(std::ceil(sweep / (kPi / 4))) ;
  for (int s = 1; s < steps; ++s) poly.push_back(r.origin + kFar * geom::unit_dir(a0 + sweep * s / steps));
  poly.push_back(r.c_j() + kFar * r.ray_j());
  for (auto it = r.chain.rbegin(); it != r.chain.rend(); ++it) poly.push_back(*it);
  return poly;
}

double boundary_distance(const Region& r, Point p) {
  double d = std::min(geom::ray_distance(p, r.c_i(), r.ray_i()), geom::ray_distance(p, r.c_j(), r.ray_j()));
  for (std::size_t k = 0; k + 1 < r.chain.size(); ++k) d = std::min(d, geom::segment_distance(p, r.chain[k], r.chain[k + 1]));
  return d;
}

bool on_boundary_exact(const Region& r, Point p) {
  auto on_segment = [&](Point a, Point b) {
    if (geom::orientation(a, b, p) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
  };
  for (std::size_t k = 0; k + 1 < r.chain.size(); ++k)
    if (on_segment(r.chain[k], r.chain[k + 1])) return true;
  return on_segment(r.c_i(), r.c_i() + kFar * r.ray_i()) || on_segment(r.c_j(), r.c_j() + kFar * r.ray_j());
}

int winding_number(const std::vector<Point>& poly, Point p) {
  int wn = 0;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const Point a = poly[k];
    const Point b = poly[(k + 1) % poly.size()];
    if (a.y <= p.y) {
      if (b.y > p.y && geom::orientation(a, b, p) > 0) ++wn;
    } else if (b.y <= p.y && geom::orientation(a, b, p) < 0) {
      --wn;
    }
  }
  return wn;
}

}  // namespace

bool region_contains(const Region& r, Point p, double tol) {
  if (on_boundary_exact(r, p)) return true;
  if (tol > 0 && boundary_distance(r, p) <= tol) return true;
  return winding_number(region_polygon(r), p) != 0;
}

double region_depth(const Region& r, Point p) {
  const double d = boundary_distance(r, p);
  return winding_number(region_polygon(r), p) != 0 ? d : -d;
}

std::vector<Point> hex_lattice_points(int n) {
  // Ring k walked counterclockwise from lattice point (k, 0).
  static constexpr int kSteps[6][2] = {{-1, 1}, {-1, 0}, {0, -1}, {1, -1}, {1, 0}, {0, 1}};
  const double h = std::sqrt(3.0) / 2.0;
  std::vector<Point> pts{{0.0, 0.0}};
  for (int k = 1; k <= n; ++k) {
    int a = k, b = 0;
    for (const auto& step : kSteps)
      for (int s = 0; s < k; ++s) {
        pts.push_back({a + 0.5 * b, h * b});
        a += step[0];
        b += step[1];
      }
  }
  return pts;
}

}  // namespace kissgeo::packing
