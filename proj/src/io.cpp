#include "kissgeo/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "kissgeo/error.hpp"

namespace kissgeo::io {

using geom::Point;

namespace {

json point_json(Point p) { return json::array({p.x, p.y}); }

Point point_from(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(ErrorKind::Parse, std::string(what) + " must be a pair of numbers");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

PackingDocument PackingDocument::from(const packing::PackingInstance& p) {
  PackingDocument d;
  d.disks = p.centers;
  d.source = p.source;
  return d;
}

json to_json(const PackingDocument& d) {
  json j;
  j["format_version"] = d.format_version;
  j["disks"] = json::array();
  for (const Point& p : d.disks) j["disks"].push_back(point_json(p));
  if (d.source) j["source"] = *d.source;
  j["metadata"] = d.metadata;
  return j;
}

PackingDocument packing_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::Parse, "packing document must be an object");
  PackingDocument d;
  if (j.contains("format_version")) {
    if (!j["format_version"].is_string()) throw Error(ErrorKind::Parse, "format_version must be a string");
    d.format_version = j["format_version"].get<std::string>();
  }
  if (d.format_version != "1") throw Error(ErrorKind::Parse, "unsupported format_version " + d.format_version);
  if (!j.contains("disks") || !j["disks"].is_array()) throw Error(ErrorKind::Parse, "missing disks array");
  for (const json& p : j["disks"]) d.disks.push_back(point_from(p, "disk"));
  if (j.contains("source") && !j["source"].is_null()) {
    if (!j["source"].is_number_unsigned()) throw Error(ErrorKind::Parse, "source must be a non-negative integer");
    d.source = j["source"].get<std::size_t>();
  }
  if (j.contains("metadata")) {
    if (!j["metadata"].is_object()) throw Error(ErrorKind::Parse, "metadata must be an object");
    for (const auto& [k, v] : j["metadata"].items()) {
      if (!v.is_string()) throw Error(ErrorKind::Parse, "metadata values must be strings");
      d.metadata[k] = v.get<std::string>();
    }
  }
  return d;
}

curve::SparseCurve CurveDocument::curve() const {
  curve::SparseCurve c;
  c.closed = closed;
  for (const CurveArc& a : arcs) c.arcs.push_back({a.center, a.start_angle, a.end_angle_ccw - a.start_angle});
  return c;
}

CurveDocument CurveDocument::from(const curve::SparseCurve& c) {
  CurveDocument d;
  d.closed = c.closed;
  for (const curve::Arc& a : c.arcs) d.arcs.push_back({a.center, a.start_angle, a.end_angle()});
  return d;
}

json to_json(const CurveDocument& d) {
  json j;
  j["arcs"] = json::array();
  for (const CurveArc& a : d.arcs)
    j["arcs"].push_back({{"center", point_json(a.center)}, {"start_angle", a.start_angle}, {"end_angle_ccw", a.end_angle_ccw}});
  j["closed"] = d.closed;
  return j;
}

CurveDocument curve_from_json(const json& j) {
  if (!j.is_object() || !j.contains("arcs") || !j["arcs"].is_array())
    throw Error(ErrorKind::Parse, "curve document needs an arcs array");
  CurveDocument d;
  for (const json& a : j["arcs"]) {
    if (!a.is_object() || !a.contains("center") || !a.contains("start_angle") || !a.contains("end_angle_ccw") ||
        !a["start_angle"].is_number() || !a["end_angle_ccw"].is_number())
      throw Error(ErrorKind::Parse, "arc needs center, start_angle and end_angle_ccw");
    d.arcs.push_back({point_from(a["center"], "arc center"), a["start_angle"].get<double>(), a["end_angle_ccw"].get<double>()});
  }
  if (j.contains("closed")) {
    if (!j["closed"].is_boolean()) throw Error(ErrorKind::Parse, "closed must be a boolean");
    d.closed = j["closed"].get<bool>();
  }
  return d;
}

std::vector<Point> centers_from_json(const json& j) {
  if (j.is_object() && j.contains("centers")) {
    if (!j["centers"].is_array()) throw Error(ErrorKind::Parse, "centers must be an array");
    std::vector<Point> out;
    for (const json& p : j["centers"]) out.push_back(point_from(p, "center"));
    return out;
  }
  return packing_from_json(j).disks;
}

json to_json(const certify::CertReport& r) {
  json j;
  j["n"] = r.n;
  j["source"] = r.source;
  j["radius"] = r.radius;
  j["counts"] = {{"c0", r.counts.c0}, {"c1", r.counts.c1}, {"c2", r.counts.c2},
                 {"removed", r.counts.removed}, {"total", r.counts.total}};
  j["fallback_used"] = r.fallback_used;
  j["total_bound"] = r.total_bound;
  j["within_bound"] = r.counts.total <= static_cast<std::size_t>(r.total_bound);
  j["ok"] = r.ok();
  j["violations"] = json::array();
  for (const auto& v : r.violations) j["violations"].push_back({{"where", v.where}, {"check", v.check}, {"slack", v.slack}});
  if (r.fallback_used) return j;

  j["gamma_length"] = r.gamma_length;
  j["lemma_value"] = r.lemma_value;
  j["global_sums"] = {{"phi", r.sum_phi}, {"alpha", r.sum_alpha}, {"psi", r.sum_psi}};
  j["euler_characteristic"] = r.euler_characteristic;
  j["ascending_simply_connected"] = r.ascending_simply_connected;
  j["walk_corners"] = r.walk_corners;
  j["coverage_witnesses"] = r.coverage_witnesses;
  j["involvement_ambiguous"] = r.involvement_ambiguous;
  j["boundary_samples"] = r.boundary_samples;
  j["removed_positions"] = r.exclusion.positions;
  j["removed_min_gap"] = std::isfinite(r.exclusion.min_gap) ? json(r.exclusion.min_gap) : json(nullptr);
  j["removed_capacity"] = r.exclusion.capacity;
  j["per_region"] = json::array();
  for (const auto& rr : r.per_region) {
    json q;
    q["i"] = rr.i;
    q["j"] = rr.j;
    q["k"] = rr.k;
    q["members"] = rr.members;
    q["involved"] = rr.involved;
    q["phi"] = rr.angles.phi;
    q["alpha"] = rr.angles.alpha;
    q["psi"] = rr.angles.psi ? json(*rr.angles.psi) : json(nullptr);
    q["delta"] = rr.jumps.delta;
    q["jumps"] = json::array();
    for (const auto& jp : rr.jumps.jumps) q["jumps"].push_back(jp.value);
    q["length"] = rr.length;
    q["identity_residual"] = rr.identity_residual;
    q["min_slack"] = rr.verdict.min_slack();
    json checks = json::object();
    for (const auto& c : rr.verdict.checks) checks[c.name] = c.slack;
    q["checks"] = checks;
    j["per_region"].push_back(q);
  }
  return j;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Parse, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorKind::Parse, "failed writing " + path);
}

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string in_pi(double v) { return fmt("%.9f", v / kPi) + " pi"; }

}  // namespace

std::string text_report(const certify::CertReport& r) {
  std::ostringstream os;
  os << "n                " << r.n << "\n";
  os << "source           " << r.source << " (kissing radius " << r.radius << ")\n";
  os << "disks            " << r.counts.total << "  (C1 " << r.counts.c1 << ", C2 " << r.counts.c2 << ", removed "
     << r.counts.removed << ")\n";
  if (r.fallback_used) {
    os << "fallback         fewer than two 2-disks; bound " << r.total_bound << "\n";
  } else {
    os << "|gamma|          " << in_pi(r.gamma_length) << "\n";
    os << "lemma value      " << fmt("%.9f", r.lemma_value) << "  (bound 36)\n";
    os << "sum phi          " << in_pi(r.sum_phi) << "\n";
    os << "sum alpha        " << in_pi(r.sum_alpha) << "\n";
    os << "sum psi          " << in_pi(r.sum_psi) << "\n";
    os << "euler char       " << r.euler_characteristic << "\n";
    os << "regions          " << r.per_region.size() << "\n";
    for (const auto& rr : r.per_region) {
      os << "  [" << rr.i << "-" << rr.j << "] k=" << rr.k << "  phi " << in_pi(rr.angles.phi) << "  alpha "
         << in_pi(rr.angles.alpha);
      if (rr.angles.psi) os << "  psi " << in_pi(*rr.angles.psi);
      os << "  delta " << in_pi(rr.jumps.delta) << "  |gamma_ij| " << in_pi(rr.length) << "  min slack "
         << fmt("%.9f", rr.verdict.min_slack()) << "\n";
    }
  }
  os << "total bound      " << r.total_bound << (r.counts.total <= static_cast<std::size_t>(r.total_bound) ? "  ok" : "  EXCEEDED")
     << "\n";
  if (r.violations.empty()) {
    os << "violations       none\n";
  } else {
    os << "violations       " << r.violations.size() << "\n";
    for (const auto& v : r.violations) os << "  " << v.where << ": " << v.check << " slack " << fmt("%.3e", v.slack) << "\n";
  }
  return os.str();
}

namespace {

struct Canvas {
  double scale, minx, maxy;
  std::string x(double v) const { return fmt("%.3f", (v - minx) * scale); }
  std::string y(double v) const { return fmt("%.3f", (maxy - v) * scale); }
  std::string len(double v) const { return fmt("%.3f", v * scale); }
};

}  // namespace

std::string render_svg(const certify::CertReport& r, const packing::PackingInstance& input, const SvgOptions& opt) {
  double minx = std::numeric_limits<double>::infinity(), maxx = -minx, miny = minx, maxy = -minx;
  for (const Point& p : input.centers) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  if (input.centers.empty()) minx = maxx = miny = maxy = 0.0;
  const double margin = 2.5;
  minx -= margin;
  miny -= margin;
  maxx += margin;
  maxy += margin;
  const Canvas cv{opt.scale, minx, maxy};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cv.len(maxx - minx) << "\" height=\""
     << cv.len(maxy - miny) << "\" viewBox=\"0 0 " << cv.len(maxx - minx) << " " << cv.len(maxy - miny) << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  os << "<g id=\"disks\" fill=\"#d9d9d9\" stroke=\"#808080\" stroke-width=\"1\">\n";
  for (const Point& p : input.centers)
    os << "<circle cx=\"" << cv.x(p.x) << "\" cy=\"" << cv.y(p.y) << "\" r=\"" << cv.len(0.5) << "\"/>\n";
  os << "</g>\n";

  os << "<g id=\"tree\" stroke=\"#1f4e9a\" stroke-width=\"2\">\n";
  for (const auto& e : r.tree.edges) {
    const Point a = r.tree.points[e.parent], b = r.tree.points[e.child];
    os << "<line x1=\"" << cv.x(a.x) << "\" y1=\"" << cv.y(a.y) << "\" x2=\"" << cv.x(b.x) << "\" y2=\"" << cv.y(b.y)
       << "\"/>\n";
  }
  os << "</g>\n";

  os << "<g id=\"rays\" stroke=\"#c03030\" stroke-width=\"1\" stroke-dasharray=\"6 4\">\n";
  for (const auto& reg : r.regions) {
    const Point a = reg.c_i(), b = reg.c_i() + margin * reg.ray_i();
    os << "<line x1=\"" << cv.x(a.x) << "\" y1=\"" << cv.y(a.y) << "\" x2=\"" << cv.x(b.x) << "\" y2=\"" << cv.y(b.y)
       << "\"/>\n";
  }
  os << "</g>\n";

  if (!r.gamma.empty()) {
    os << "<path id=\"gamma\" fill=\"none\" stroke=\"black\" stroke-width=\"4\" d=\"";
    bool first = true;
    for (const auto& a : r.gamma.arcs) {
      const Point s = a.start_point();
      if (first) os << "M " << cv.x(s.x) << " " << cv.y(s.y);
      first = false;
      const int pieces = std::max(1, static_cast<int>(std::ceil(a.length() / (kPi / 2.0))));
      for (int k = 1; k <= pieces; ++k) {
        const Point e = a.center + geom::unit_dir(a.start_angle + a.sweep * k / pieces);
        // y is flipped, so a counterclockwise arc is drawn with sweep-flag 0.
        os << " A " << cv.len(1.0) << " " << cv.len(1.0) << " 0 0 " << (a.sweep >= 0 ? 0 : 1) << " " << cv.x(e.x)
           << " " << cv.y(e.y);
      }
    }
    os << (r.gamma.closed ? " Z" : "") << "\"/>\n";
  }

  os << "<g id=\"removed\" stroke=\"#d07000\" stroke-width=\"3\">\n";
  for (const Point& p : r.pruned.removed_centers) {
    const double h = 0.08;
    os << "<line x1=\"" << cv.x(p.x - h) << "\" y1=\"" << cv.y(p.y - h) << "\" x2=\"" << cv.x(p.x + h) << "\" y2=\""
       << cv.y(p.y + h) << "\"/>\n";
    os << "<line x1=\"" << cv.x(p.x - h) << "\" y1=\"" << cv.y(p.y + h) << "\" x2=\"" << cv.x(p.x + h) << "\" y2=\""
       << cv.y(p.y - h) << "\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace kissgeo::io
