#include "kissgeo/certify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kissgeo/error.hpp"
#include "kissgeo/unit_disks.hpp"

namespace kissgeo::certify {

using geom::Point;

PackingInstance hex_packing(int n) {
  PackingInstance p;
  p.centers = packing::hex_lattice_points(std::max(0, n));
  p.source = 0;
  return p;
}

namespace {

constexpr int kBoundarySamples = 1000;

void record(CertReport& rep, const std::string& where, const std::string& check, double slack, double tol) {
  if (slack < -tol) rep.violations.push_back({where, check, slack});
}

// Points of the boundary of the union, spread evenly over its total arc length.
std::vector<Point> boundary_samples(const std::vector<Point>& centers, int count) {
  std::vector<std::pair<std::size_t, geom::AngleInterval>> arcs;
  double total = 0.0;
  for (std::size_t k = 0; k < centers.size(); ++k)
    for (const auto& a : geom::uncovered_arcs(centers, k)) {
      arcs.emplace_back(k, a);
      total += a.length;
    }
  std::vector<Point> out;
  if (total <= 0.0) return out;
  const double step = total / count;
  double cum = 0.0;
  std::size_t idx = 0;
  for (int s = 0; s < count; ++s) {
    const double target = (s + 0.5) * step;
    while (idx + 1 < arcs.size() && cum + arcs[idx].second.length < target) cum += arcs[idx++].second.length;
    const auto& [k, a] = arcs[idx];
    const double off = std::clamp(target - cum, 0.0, a.length);
    out.push_back(centers[k] + geom::unit_dir(a.start + off));
  }
  return out;
}

}  // namespace

CertReport certify_unchecked(const PackingInstance& p, int n, const Tolerances& tol) {
  packing::validate_packing(p, tol);
  if (p.centers.empty()) throw Error(ErrorKind::BadIndex, "empty packing");
  CertReport rep;
  rep.n = n;
  rep.source = p.source ? *p.source : packing::select_source(p, tol);
  const auto prof = packing::kissing_profile(p, rep.source, tol);
  if (!prof.radius) throw Error(ErrorKind::RadiusTooLarge, "kissing radius is infinite");
  rep.radius = *prof.radius;
  if (rep.radius > n || rep.radius > 3)
    throw Error(ErrorKind::RadiusTooLarge, "kissing radius " + std::to_string(rep.radius) + " with n = " + std::to_string(n));
  rep.counts.total = p.centers.size();

  if (prof.layer_size(2) < 2) {
    // Fewer than two 2-disks: f(2) plus the six 3-disks around the only 2-disk.
    rep.fallback_used = true;
    rep.total_bound = 25;
    rep.counts.c1 = prof.layer_size(1);
    rep.counts.c2 = prof.layer_size(2);
    rep.counts.removed = static_cast<std::size_t>(prof.layer_size(3));
    record(rep, "packing", "fallback_bound", 25.0 - static_cast<double>(rep.counts.total), 0.0);
    return rep;
  }

  rep.pruned = packing::prune(p, prof, tol);
  const auto& pp = rep.pruned.packing;
  const auto& centers = pp.centers;
  rep.counts.c1 = rep.pruned.profile.layer_size(1);
  rep.counts.c2 = rep.pruned.profile.layer_size(2);
  rep.counts.removed = rep.pruned.removed.size();

  rep.tree = packing::assign_parents(pp, rep.pruned.profile, tol);
  const auto tr = packing::boundary_traversal(rep.tree);
  rep.regions = packing::subsegments(tr, rep.tree, rep.pruned.profile);

  delaunay::Triangulation tri;
  tri.points = centers;
  try {
    tri = delaunay::greedy_circumradius_triangulation(centers);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::AllCollinear) throw;
  }
  if (!tri.faces.empty() && !delaunay::satisfies_empty_circle(tri, tol.geom))
    throw Error(ErrorKind::TreeEdgeNotInDelaunay, "greedy triangulation is not Delaunay");
  const auto e = delaunay::build_E(tri, rep.tree, tol);
  rep.euler_characteristic = delaunay::euler_characteristic(e);
  rep.ascending_simply_connected = e.ascending_order_simply_connected;
  const auto walk_occ = delaunay::walk_occurrences(e, rep.tree, tr);
  rep.walk_corners = walk_occ.size();
  const auto coverage = delaunay::arc_coverage_checks(e, tol);
  rep.coverage_witnesses = coverage.walk_witnesses;

  for (const auto& region : rep.regions) {
    RegionReport rr;
    rr.i = region.i;
    rr.j = region.j;
    rr.k = region.k01;
    rr.members = region.members;
    const auto inv = delaunay::involved_disks(region, walk_occ, centers, tol);
    for (bool amb : inv.ambiguous) rep.involvement_ambiguous += amb ? 1 : 0;
    rr.involved = inv.positions;
    auto gij = curve::construct_gamma_ij(region, rr.involved, tol);
    curve::validate_curve(gij, tol);
    rr.jumps = curve::direction_jumps(gij);
    rr.angles = curve::region_angles(region);
    rr.length = curve::curve_length(gij);
    rr.identity_residual = rr.length - rr.jumps.delta - rr.angles.alpha;
    rr.verdict = curve::check_region_inequality(region, rr.angles, gij, rr.jumps, rr.involved);
    const std::string where = "region " + std::to_string(rr.i) + "-" + std::to_string(rr.j);
    for (const auto& c : rr.verdict.checks) record(rep, where, c.name, c.slack, tol.slack);
    record(rep, where, "length_equals_jumps_plus_alpha", -std::abs(rr.identity_residual), tol.geom);
    rep.sum_phi += rr.angles.phi;
    rep.sum_alpha += rr.angles.alpha;
    if (rr.angles.psi) rep.sum_psi += *rr.angles.psi;
    rep.region_curves.push_back(std::move(gij));
    rep.per_region.push_back(std::move(rr));
  }
  record(rep, "global", "sum_phi", -std::abs(rep.sum_phi - kTwoPi), tol.geom);
  record(rep, "global", "sum_alpha", -std::abs(rep.sum_alpha - kTwoPi), tol.geom);
  record(rep, "global", "sum_psi", -std::abs(rep.sum_psi - kTwoPi), tol.geom);

  rep.gamma = curve::concatenate(rep.region_curves, tol);
  curve::validate_curve(rep.gamma, tol);
  rep.gamma_length = curve::curve_length(rep.gamma);
  rep.lemma_value = rep.counts.c1 + rep.counts.c2 + rep.gamma_length / (kPi / 3.0);
  record(rep, "global", "lemma_value_at_most_36", 36.0 - rep.lemma_value, tol.slack);

  // The curve covers the boundary of the union.
  const auto samples = boundary_samples(centers, kBoundarySamples);
  rep.boundary_samples = samples.size();
  double worst = 0.0;
  for (const Point& s : samples) worst = std::max(worst, curve::distance_to_curve(rep.gamma, s));
  record(rep, "global", "boundary_on_curve", -worst, tol.geom);

  // Rays beyond f_i stay outside every disk; points of a region covered by S are
  // covered by the region's own disks.
  for (const auto& region : rep.regions) {
    const std::string where = "region " + std::to_string(region.i) + "-" + std::to_string(region.j);
    const geom::Vec ray = region.ray_i();
    double far_slack = geom::cover_margin(centers, region.f_i);
    for (double t : {1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0, 4.0})
      far_slack = std::min(far_slack, geom::cover_margin(centers, region.f_i + t * ray));
    record(rep, where, "far", far_slack, tol.geom);

    std::vector<Point> own;
    for (std::size_t m : region.members) own.push_back(centers[m]);
    double inner_slack = 0.0;
    for (std::size_t m = 0; m < centers.size(); ++m) {
      if (std::find(region.members.begin(), region.members.end(), m) != region.members.end()) continue;
      for (double rho : {0.0, 0.5, 0.9, 0.999})
        for (int s = 0; s < (rho == 0.0 ? 1 : 32); ++s) {
          const Point q = centers[m] + rho * geom::unit_dir(kTwoPi * s / 32.0);
          if (packing::region_depth(region, q) <= tol.geom) continue;
          inner_slack = std::min(inner_slack, -geom::cover_margin(own, q));
        }
    }
    record(rep, where, "only_inner", inner_slack, tol.geom);
  }

  rep.exclusion = curve::excluded_disk_count_bound(rep.gamma, rep.pruned.removed_centers, tol);
  record(rep, "global", "removed_spacing_and_count", rep.exclusion.slack, tol.slack);
  record(rep, "global", "total_at_most_37", 37.0 - static_cast<double>(rep.counts.total), 0.0);
  return rep;
}

CertReport certify(const PackingInstance& p, int n, const Tolerances& tol) {
  CertReport rep = certify_unchecked(p, n, tol);
  if (!rep.violations.empty()) {
    const auto& v = rep.violations.front();
    throw Error(ErrorKind::InequalityViolation,
                v.where + " " + v.check + " slack " + std::to_string(v.slack) + " (" +
                    std::to_string(rep.violations.size()) + " violation(s))");
  }
  return rep;
}

}  // namespace kissgeo::certify
