#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "kissgeo/delaunay.hpp"
#include "kissgeo/error.hpp"
#include "kissgeo/unit_disks.hpp"

namespace kissgeo::delaunay {

namespace {

using Edge = std::pair<std::size_t, std::size_t>;

Edge undirected(std::size_t a, std::size_t b) { return a < b ? Edge{a, b} : Edge{b, a}; }

struct UnionFind {
  std::vector<std::size_t> up;
  explicit UnionFind(std::size_t n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  std::size_t find(std::size_t x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  }
  void join(std::size_t a, std::size_t b) { up[find(a)] = find(b); }
};

// chi and connectivity of the tree plus the first `nfaces` small faces.
std::pair<int, bool> topology(const EComplex& e, std::size_t nfaces) {
  std::set<Edge> edges;
  std::set<std::size_t> verts;
  for (const auto& [a, b] : e.tree_edges) {
    edges.insert(undirected(a, b));
    verts.insert(a);
    verts.insert(b);
  }
  for (std::size_t f = 0; f < nfaces; ++f)
    for (int k = 0; k < 3; ++k) {
      edges.insert(undirected(e.small_faces[f][k], e.small_faces[f][(k + 1) % 3]));
      verts.insert(e.small_faces[f][k]);
    }
  if (verts.empty()) return {static_cast<int>(e.points.size()), e.points.size() == 1};
  UnionFind uf(e.points.size());
  for (const auto& [a, b] : edges) uf.join(a, b);
  std::set<std::size_t> roots;
  for (std::size_t v : verts) roots.insert(uf.find(v));
  const int chi = static_cast<int>(verts.size()) - static_cast<int>(edges.size()) + static_cast<int>(nfaces);
  return {chi, roots.size() == 1};
}

}  // namespace

EComplex build_E(const Triangulation& tri, const packing::PTree& tree, const Tolerances& tol) {
  EComplex e;
  e.points = tree.points;
  if (tri.points.size() != tree.points.size())
    throw Error(ErrorKind::BadIndex, "triangulation and tree are built on different point sets");
  for (const auto& te : tree.edges) {
    if (!tri.faces.empty() && !tri.has_edge(te.parent, te.child))
      throw Error(ErrorKind::TreeEdgeNotInDelaunay,
                  "tree edge (" + std::to_string(te.parent) + ", " + std::to_string(te.child) + ") is not a triangulation edge");
    e.tree_edges.emplace_back(te.parent, te.child);
  }
  std::vector<std::pair<double, Face>> small;
  for (const Face& f : tri.faces) {
    const Point p = tri.points[f[0]], q = tri.points[f[1]], r = tri.points[f[2]];
    // Exact unit circumradii (tangent 120 degree triples) must not flip on rounding.
    const bool is_small = tol.geom > 0.0 ? geom::circumradius(p, q, r) < 1.0 - tol.geom : geom::circumradius_below_one(p, q, r);
    if (is_small) {
      Face key = f;
      std::sort(key.begin(), key.end());
      small.emplace_back(geom::circumradius(p, q, r), key);
    }
  }
  std::sort(small.begin(), small.end());
  for (const auto& [r, key] : small) {
    Face f = key;
    if (geom::orientation(tri.points[f[0]], tri.points[f[1]], tri.points[f[2]]) < 0) std::swap(f[1], f[2]);
    e.small_faces.push_back(f);
  }
  for (std::size_t m = 0; m <= e.small_faces.size(); ++m) {
    const auto [chi, connected] = topology(e, m);
    if (chi != 1 || !connected) e.ascending_order_simply_connected = false;
  }
  if (simply_connected(e)) e.boundary_walk = boundary_walk(e);
  return e;
}

int euler_characteristic(const EComplex& e) { return topology(e, e.small_faces.size()).first; }

bool simply_connected(const EComplex& e) {
  const auto [chi, connected] = topology(e, e.small_faces.size());
  return connected && chi == 1;
}

std::vector<WalkCorner> boundary_walk_corners(const EComplex& e) {
  if (!simply_connected(e)) throw Error(ErrorKind::NotSimplyConnected, "E is not simply connected");
  std::set<Edge> und;
  for (const auto& [a, b] : e.tree_edges) und.insert(undirected(a, b));
  std::set<Edge> face_half;  // directed edges with a small face on their left
  for (const Face& f : e.small_faces)
    for (int k = 0; k < 3; ++k) {
      und.insert(undirected(f[k], f[(k + 1) % 3]));
      face_half.insert({f[k], f[(k + 1) % 3]});
    }
  if (und.empty()) return {};

  std::vector<std::vector<std::size_t>> adj(e.points.size());
  for (const auto& [a, b] : und) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (std::size_t v = 0; v < adj.size(); ++v)
    std::sort(adj[v].begin(), adj[v].end(), [&](std::size_t a, std::size_t b) {
      return geom::normalize_ccw(geom::direction(e.points[a] - e.points[v])) <
             geom::normalize_ccw(geom::direction(e.points[b] - e.points[v]));
    });

  // a -> b is on the boundary when no small face lies to its right.
  std::set<Edge> boundary;
  for (const auto& [a, b] : und) {
    if (!face_half.count({b, a})) boundary.insert({a, b});
    if (!face_half.count({a, b})) boundary.insert({b, a});
  }

  std::size_t start_v = und.begin()->first;
  for (const auto& [a, b] : und)
    for (std::size_t v : {a, b})
      if (geom::lex_less(e.points[v], e.points[start_v])) start_v = v;
  std::optional<Edge> start;
  for (std::size_t w : adj[start_v])
    if (boundary.count({start_v, w})) {
      start = Edge{start_v, w};
      break;
    }
  if (!start) throw Error(ErrorKind::NotSimplyConnected, "no boundary edge at the leftmost vertex");

  std::vector<WalkCorner> corners;
  std::set<Edge> seen;
  Edge cur = *start;
  do {
    seen.insert(cur);
    const auto [from, at] = cur;
    const auto& nb = adj[at];
    const std::size_t pos = static_cast<std::size_t>(std::find(nb.begin(), nb.end(), from) - nb.begin());
    const std::size_t to = nb[(pos + 1) % nb.size()];
    corners.push_back({at, from, to});
    cur = {at, to};
    if (!boundary.count(cur))
      throw Error(ErrorKind::NotSimplyConnected, "walk left the boundary at " + std::to_string(at));
    if (corners.size() > 2 * und.size()) throw Error(ErrorKind::NotSimplyConnected, "boundary walk does not close");
  } while (cur != *start);
  if (seen.size() != boundary.size())
    throw Error(ErrorKind::NotSimplyConnected, std::to_string(boundary.size() - seen.size()) + " boundary edges off the walk");
  // Begin with the corner at the starting vertex.
  std::rotate(corners.begin(), corners.end() - 1, corners.end());
  return corners;
}

std::vector<std::size_t> boundary_walk(const EComplex& e) {
  std::vector<std::size_t> d;
  for (const WalkCorner& c : boundary_walk_corners(e)) d.push_back(c.at);
  return d;
}

std::vector<std::size_t> walk_occurrences(const EComplex& e, const packing::PTree& tree,
                                          const packing::PTraversal& tr) {
  const auto tadj = tree.adjacency();
  std::map<Edge, std::size_t> occ_of;  // (disk, previous disk) -> occurrence
  for (std::size_t k = 0; k < tr.size(); ++k) occ_of[{tr.occ[k], tr.at(k + tr.size() - 1)}] = k;

  std::vector<std::size_t> out;
  for (const WalkCorner& c : boundary_walk_corners(e)) {
    const Point v = e.points[c.at];
    const geom::Vec in = e.points[c.from] - v;
    std::optional<std::size_t> best;
    double best_angle = 0.0;
    for (std::size_t a : tadj[c.at]) {
      const double ang = geom::angccw(tree.points[a] - v, in);
      if (!best || ang < best_angle) {
        best = a;
        best_angle = ang;
      }
    }
    if (!best) throw Error(ErrorKind::InvolvementMismatch, "walk vertex " + std::to_string(c.at) + " is not on the tree");
    const auto it = occ_of.find({c.at, *best});
    if (it == occ_of.end())
      throw Error(ErrorKind::InvolvementMismatch, "no tree occurrence for walk vertex " + std::to_string(c.at));
    out.push_back(it->second);
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw Error(ErrorKind::InvolvementMismatch, "two walk corners share a tree occurrence");
  return out;
}

namespace {

// Direct verdicts closer than this to the boundary case are not trusted.
constexpr double kAmbiguityBand = 1e-7;
constexpr int kArcSamples = 256;

// Angles where the unit circle around q crosses the bisector of f and g.
void bisector_crossings(Point q, Point f, Point g, std::vector<double>& out) {
  const geom::Vec fg = g - f;
  const double len = geom::norm(fg);
  if (len == 0.0) return;
  const double cosv = -geom::dot(q - 0.5 * (f + g), fg) / len;
  if (std::abs(cosv) > 1.0) return;
  const double phi = geom::direction(fg), off = std::acos(cosv);
  out.push_back(phi + off);
  out.push_back(phi - off);
}

}  // namespace

InvolvementResult involved_disks(const packing::Region& region, const std::vector<std::size_t>& walk_occ,
                                 const std::vector<Point>& centers, const Tolerances& tol) {
  (void)tol;
  InvolvementResult res;
  const std::size_t len = region.size();
  res.by_walk.resize(len);
  res.direct.resize(len);
  res.ambiguous.resize(len);
  for (std::size_t s = 0; s < len; ++s) {
    res.by_walk[s] = std::binary_search(walk_occ.begin(), walk_occ.end(), region.occurrences[s]);
    const std::size_t m = region.members[s];
    // An interior occurrence owns the wedge from its predecessor counterclockwise to its successor.
    std::optional<std::pair<double, double>> wedge;
    if (s > 0 && s + 1 < len) wedge = cone_arc(region.chain[s], region.chain[s - 1], region.chain[s + 1]);
    std::vector<double> angles;
    for (const geom::AngleInterval& arc : geom::uncovered_arcs(centers, m))
      for (int t = 0; t <= kArcSamples; ++t) angles.push_back(arc.at(static_cast<double>(t) / kArcSamples));
    // Covered everywhere up to rounding: the best point is where two covering circles cross.
    std::vector<std::size_t> near;
    for (std::size_t o = 0; o < centers.size(); ++o)
      if (o != m && geom::dist(centers[o], centers[m]) < 2.0 + kAmbiguityBand) near.push_back(o);
    for (std::size_t a = 0; a < near.size(); ++a)
      for (std::size_t b = a + 1; b < near.size(); ++b)
        bisector_crossings(centers[m], centers[near[a]], centers[near[b]], angles);
    double best = -std::numeric_limits<double>::infinity();
    for (double th : angles) {
      if (wedge && geom::normalize_ccw(th - wedge->first) > wedge->second) continue;
      const Point p = centers[m] + geom::unit_dir(th);
      best = std::max(best, std::min(geom::cover_margin(centers, p, m), packing::region_depth(region, p)));
    }
    res.direct[s] = best >= 0.0;
    res.ambiguous[s] = std::abs(best) <= kAmbiguityBand;
    if (res.by_walk[s]) res.positions.push_back(s);
    if (!res.ambiguous[s] && res.direct[s] != res.by_walk[s])
      throw Error(ErrorKind::InvolvementMismatch,
                  "occurrence " + std::to_string(region.occurrences[s]) + " (disk " + std::to_string(m) + "): walk says " +
                      (res.by_walk[s] ? "involved" : "not involved") + ", arc test says otherwise (score " +
                      std::to_string(best) + ")");
  }
  return res;
}

std::pair<double, double> cone_arc(Point q, Point p, Point r) {
  const double start = geom::normalize_ccw(geom::direction(p - q));
  double len = geom::angccw(p - q, r - q);
  if (len == 0.0) len = kTwoPi;
  return {start, len};
}

CoverageReport arc_coverage_checks(const EComplex& e, const Tolerances& tol) {
  CoverageReport rep;
  for (const Face& f : e.small_faces) {
    for (int k = 0; k < 3; ++k) {
      // Interior angle at q runs counterclockwise from ray q->r to ray q->p.
      const std::size_t p = f[(k + 2) % 3], q = f[k], r = f[(k + 1) % 3];
      const auto [start, length] = cone_arc(e.points[q], e.points[r], e.points[p]);
      for (int t = 0; t <= kArcSamples; ++t) {
        const Point x = e.points[q] + geom::unit_dir(start + length * t / kArcSamples);
        const double margin = std::min(geom::dist(x, e.points[p]), geom::dist(x, e.points[r])) - 1.0;
        if (margin >= tol.geom)
          throw Error(ErrorKind::CoverageViolation, "cone arc at " + std::to_string(q) + " of face (" +
                                                         std::to_string(f[0]) + ", " + std::to_string(f[1]) + ", " +
                                                         std::to_string(f[2]) + ") is not covered");
      }
      ++rep.small_face_arcs_checked;
    }
  }
  if (e.tree_edges.empty() && e.small_faces.empty()) return rep;
  for (const WalkCorner& c : boundary_walk_corners(e)) {
    const auto [start, length] = cone_arc(e.points[c.at], e.points[c.from], e.points[c.to]);
    const Point q = e.points[c.at], f = e.points[c.from], g = e.points[c.to];
    std::vector<double> angles;
    for (int t = 0; t <= kArcSamples; ++t) angles.push_back(start + length * t / kArcSamples);
    // The margin peaks on the bisector of the two neighbours or opposite one of them.
    std::vector<double> extra{geom::direction(q - f), geom::direction(q - g)};
    bisector_crossings(q, f, g, extra);
    for (double th : extra)
      if (geom::normalize_ccw(th - start) <= length) angles.push_back(th);
    double best = -std::numeric_limits<double>::infinity();
    Point witness;
    for (double th : angles) {
      const Point x = q + geom::unit_dir(th);
      const double margin = std::min(geom::dist(x, f), geom::dist(x, g)) - 1.0;
      if (margin > best) {
        best = margin;
        witness = x;
      }
    }
    if (best < -tol.geom)
      throw Error(ErrorKind::CoverageViolation, "walk corner at " + std::to_string(c.at) + " has no uncovered point (best margin " +
                                                     std::to_string(best) + ")");
    rep.witnesses.push_back(witness);
    ++rep.walk_witnesses;
  }
  return rep;
}

}  // namespace kissgeo::delaunay
