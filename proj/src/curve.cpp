#include "kissgeo/curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "kissgeo/error.hpp"
#include "kissgeo/unit_disks.hpp"

namespace kissgeo::curve {

namespace {

// Sweeps this close to a full turn come from round-off around a zero-length arc.
constexpr double kFullTurnSnap = 1e-9;

double ccw_sweep(double from, double to) {
  const double s = geom::normalize_ccw(to - from);
  return s > kTwoPi - kFullTurnSnap ? 0.0 : s;
}

std::string pt(Point p) { return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")"; }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

void validate_curve(const SparseCurve& c, const Tolerances& tol) {
  for (std::size_t k = 0; k < c.arcs.size(); ++k) {
    const Arc& a = c.arcs[k];
    geom::require_finite(a.center, "arc center");
    if (!std::isfinite(a.start_angle) || !std::isfinite(a.sweep)) throw Error(ErrorKind::NonFinite, "arc angle");
    if (a.sweep < 0.0) throw Error(ErrorKind::ClockwiseArc, "arc " + std::to_string(k) + " has sweep " + std::to_string(a.sweep));
  }
  const std::size_t links = c.closed ? c.arcs.size() : (c.arcs.empty() ? 0 : c.arcs.size() - 1);
  for (std::size_t k = 0; k < links; ++k) {
    const Arc& a = c.arcs[k];
    const Arc& b = c.arcs[(k + 1) % c.arcs.size()];
    if (geom::dist(a.end_point(), b.start_point()) > tol.geom)
      throw Error(ErrorKind::NotUnitRadiusChain, "arc " + std::to_string(k) + " ends at " + pt(a.end_point()) +
                                                      " but the next arc starts at " + pt(b.start_point()));
  }
  for (std::size_t a = 0; a < c.arcs.size(); ++a)
    for (std::size_t b = a + 1; b < c.arcs.size(); ++b) {
      const double d = geom::dist(c.arcs[a].center, c.arcs[b].center);
      if (d > tol.geom && d < 1.0 - tol.geom)
        throw Error(ErrorKind::CentersTooClose,
                    "(" + std::to_string(a) + ", " + std::to_string(b) + ") centers " + std::to_string(d) + " apart");
    }
}

double curve_length(const SparseCurve& c) {
  double len = 0.0;
  for (const Arc& a : c.arcs) len += a.length();
  return len;
}

SparseCurve construct_gamma_ij(const packing::Region& region, const std::vector<std::size_t>& involved,
                               const Tolerances& tol) {
  if (involved.size() < 2 || involved.front() != 0 || involved.back() + 1 != region.size())
    throw Error(ErrorKind::InvalidRegion, "involved positions must start at i and end at j");
  SparseCurve c;
  double cur = geom::direction(region.c_i() - region.origin);
  for (std::size_t t = 0; t + 1 < involved.size(); ++t) {
    const Point a = region.chain[involved[t]];
    const Point b = region.chain[involved[t + 1]];
    if (a == b) {  // same disk met twice in a row: zero-length hand-over
      c.arcs.push_back({a, cur, 0.0});
      continue;
    }
    const auto entry = geom::entry_angle(a, b, tol.geom);
    if (!entry)
      throw Error(ErrorKind::NoIntersection, "positions (" + std::to_string(involved[t]) + ", " +
                                                 std::to_string(involved[t + 1]) + "): circles at " + pt(a) + " and " +
                                                 pt(b) + " do not meet");
    c.arcs.push_back({a, cur, ccw_sweep(cur, *entry)});
    const Point x = a + geom::unit_dir(*entry);
    if (!packing::region_contains(region, x, 1e-6))
      throw Error(ErrorKind::NoIntersection, "switch point " + pt(x) + " lies outside the region");
    cur = geom::direction(x - b);
  }
  const double end = geom::direction(region.c_j() - region.origin);
  c.arcs.push_back({region.c_j(), cur, ccw_sweep(cur, end)});
  return c;
}

SparseCurve concatenate(const std::vector<SparseCurve>& parts, const Tolerances& tol) {
  SparseCurve out;
  out.closed = true;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const SparseCurve& a = parts[k];
    const SparseCurve& b = parts[(k + 1) % parts.size()];
    if (a.empty()) throw Error(ErrorKind::EndpointMismatch, "part " + std::to_string(k) + " is empty");
    if (b.empty() || geom::dist(a.end(), b.start()) > tol.geom)
      throw Error(ErrorKind::EndpointMismatch, "part " + std::to_string(k) + " ends at " + pt(a.end()) +
                                                   ", next part starts elsewhere");
    out.arcs.insert(out.arcs.end(), a.arcs.begin(), a.arcs.end());
  }
  return out;
}

JumpProfile direction_jumps(const SparseCurve& c) {
  JumpProfile p;
  for (std::size_t k = 0; k + 1 < c.arcs.size(); ++k) {
    const Arc& a = c.arcs[k];
    const Arc& b = c.arcs[k + 1];
    double v = a.center == b.center ? 0.0 : geom::angccw(b.start_dir(), a.end_dir());
    if (v > kTwoPi - kFullTurnSnap) v = 0.0;
    p.jumps.push_back({a.end_point(), v});
    p.delta += v;
  }
  return p;
}

namespace {

double checked_signed_angle(Vec a, Vec b, const char* what) {
  try {
    return geom::signed_angle(a, b);
  } catch (const Error& e) {
    throw Error(ErrorKind::DegenerateAngle, std::string(what) + ": " + e.what());
  }
}

}  // namespace

RegionAngles region_angles(const packing::Region& r) {
  RegionAngles a;
  const Point c = r.origin;
  if (r.size() == 3) {
    a.u_i = a.u_j = r.chain[1] - c;
    a.v_i = r.chain[0] - r.chain[1];
    a.v_j = r.chain[2] - r.chain[1];
  } else if (r.size() == 5) {
    a.u_i = r.chain[1] - c;
    a.u_j = r.chain[3] - c;
    a.v_i = r.chain[0] - r.chain[1];
    a.v_j = r.chain[4] - r.chain[3];
    double psi = geom::angccw(a.u_i, a.u_j);
    if (r.chain[1] == r.chain[3]) psi = kTwoPi;
    a.psi = psi;
    a.c_prime = r.chain[1] + r.chain[3] - c;
  } else {
    throw Error(ErrorKind::InvalidRegion, "region of " + std::to_string(r.size()) + " disks");
  }
  a.ui_vi = checked_signed_angle(a.u_i, a.v_i, "angle(u_i, v_i)");
  a.uj_vj = checked_signed_angle(a.u_j, a.v_j, "angle(u_j, v_j)");
  a.phi = -a.ui_vi + a.psi.value_or(0.0) + a.uj_vj;
  a.alpha = geom::angccw(r.c_i() - c, r.c_j() - c);
  return a;
}

double RegionVerdict::min_slack() const {
  double m = std::numeric_limits<double>::infinity();
  for (const Check& c : checks) m = std::min(m, c.slack);
  return m;
}

std::vector<Check> RegionVerdict::violations(double tol) const {
  std::vector<Check> out;
  for (const Check& c : checks)
    if (c.slack < -tol) out.push_back(c);
  return out;
}

RegionVerdict check_region_inequality(const packing::Region& r, const RegionAngles& a, const SparseCurve& gamma_ij,
                                      const JumpProfile& jumps, const std::vector<std::size_t>& involved) {
  RegionVerdict v;
  auto add = [&](std::string name, double slack) { v.checks.push_back({std::move(name), slack}); };
  const double len = curve_length(gamma_ij);
  const double delta = jumps.delta;
  const double phi = a.phi;
  const bool k1 = a.psi.has_value();
  const auto is_involved = [&](std::size_t pos) { return std::binary_search(involved.begin(), involved.end(), pos); };

  if (!k1) {
    add("length_bound", phi + a.alpha - len);
    add("jump_bound", phi - delta);
  } else {
    const double psi = *a.psi;
    const double rhs = 3.0 * psi - 2.0 * kPi / 3.0 + 2.0 * phi;
    add("length_bound", rhs + a.alpha - len);
    add("jump_bound", rhs - delta);
    add("jump_total", 4.0 * kPi / 3.0 - delta);
    add("psi_at_least_pi_3", psi - kPi / 3.0);
    add("psi_plus_phi_at_least_pi_3", psi + phi - kPi / 3.0);
    const Point c = r.origin, ci = r.c_i(), cj = r.c_j(), p = r.chain[1], q = r.chain[3];
    if (psi < kPi) {
      const Point cp = *a.c_prime;
      const double rhombus = ccw_sweep(geom::direction(ci - p), geom::direction(cp - p)) +
                             ccw_sweep(geom::direction(cp - q), geom::direction(cj - q));
      add("psi_plus_phi_identity", -std::abs(psi + phi - rhombus));
      add("c_prime_in_region", packing::region_depth(r, cp));
    }
    if (is_involved(2)) {
      add("source_involved_phi_nonnegative", phi);
      add("source_involved_side_angles", rhs - (geom::angccw(ci - p, c - p) + geom::angccw(c - q, cj - q)));
    }
    if (involved.size() == 2 && !jumps.jumps.empty()) {
      const double dj = jumps.jumps.front().value;
      add("single_jump_chord", 2.0 * std::sin(psi / 2.0) + 2.0 * std::abs(std::sin(phi / 2.0)) - 2.0 * std::sin(dj / 2.0));
    }
  }
  add("ui_vi_range", 2.0 * kPi / 3.0 - std::abs(a.ui_vi));
  add("uj_vj_range", 2.0 * kPi / 3.0 - std::abs(a.uj_vj));

  for (std::size_t pos : involved) {
    if (pos == 0 || pos + 1 == r.size()) continue;
    const Point prev = r.chain[pos - 1], here = r.chain[pos], next = r.chain[pos + 1];
    const double open = prev == next ? kTwoPi : geom::angccw(prev - here, next - here);
    add("involved_opening_" + std::to_string(pos), open - 2.0 * kPi / 3.0);
  }
  if (jumps.jumps.size() + 1 == involved.size()) {
    for (std::size_t t = 0; t < jumps.jumps.size(); ++t) {
      const double gap = static_cast<double>(involved[t + 1] - involved[t]);
      add("jump_" + std::to_string(t) + "_vs_index_gap", gap * kPi / 3.0 - jumps.jumps[t].value);
    }
  }
  return v;
}

namespace {

struct Candidate {
  double total = std::numeric_limits<double>::infinity();
  double x = 0.0;  // length of the first arc
  double y = 0.0;  // length of the last arc
};

// Smallest y >= 0 such that |c_end + unit(theta + y) - a| >= gap, or nullopt.
std::optional<double> min_tail(Point c_end, double theta, Point a, double gap) {
  const Vec w = a - c_end;
  const double d = geom::norm(w);
  if (d == 0.0) return gap <= 1.0 ? std::optional<double>(0.0) : std::nullopt;
  const double kappa = (1.0 + d * d - gap * gap) / (2.0 * d);  // need cos(phi - omega) <= kappa
  if (kappa >= 1.0) return 0.0;
  if (kappa < -1.0) return std::nullopt;
  const double lim = std::acos(kappa);
  const double t = geom::normalize_ccw(theta - geom::direction(w));
  if (t >= lim && t <= kTwoPi - lim) return 0.0;
  if (t < lim) return lim - t;
  return kTwoPi - t + lim;
}

// Minimises x + y(x) over the free first-arc length x in [0, 2pi).
Candidate best_ends(Point c_first, double theta_first, Point c_last, double theta_last, double gap) {
  auto objective = [&](double x) {
    const Point a = c_first + geom::unit_dir(theta_first - x);
    const auto y = min_tail(c_last, theta_last, a, gap);
    return y ? Candidate{x + *y, x, *y} : Candidate{};
  };
  constexpr int kGrid = 256;
  std::vector<Candidate> grid(kGrid);
  Candidate best;
  for (int s = 0; s < kGrid; ++s) {
    grid[static_cast<std::size_t>(s)] = objective(kTwoPi * s / kGrid);
    if (grid[static_cast<std::size_t>(s)].total < best.total) best = grid[static_cast<std::size_t>(s)];
  }
  // Golden-section refinement around every grid local minimum.
  const double step = kTwoPi / kGrid;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int s = 0; s < kGrid; ++s) {
    const double here = grid[static_cast<std::size_t>(s)].total;
    if (!std::isfinite(here)) continue;
    const double left = s > 0 ? grid[static_cast<std::size_t>(s - 1)].total : here;
    const double right = s + 1 < kGrid ? grid[static_cast<std::size_t>(s + 1)].total : here;
    if (here > left || here > right) continue;
    double lo = std::max(0.0, (s - 1) * step), hi = std::min(kTwoPi, (s + 1) * step);
    double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
    Candidate f1 = objective(m1), f2 = objective(m2);
    for (int it = 0; it < 60; ++it) {
      if (f1.total <= f2.total) {
        hi = m2;
        m2 = m1;
        f2 = f1;
        m1 = hi - g * (hi - lo);
        f1 = objective(m1);
      } else {
        lo = m1;
        m1 = m2;
        f1 = f2;
        m2 = lo + g * (hi - lo);
        f2 = objective(m2);
      }
    }
    for (const Candidate& cand : {f1, f2, objective(lo), objective(hi)})
      if (cand.total < best.total) best = cand;
  }
  return best;
}

struct Search {
  const std::vector<Point>& centers;
  double gap;
  int max_arcs;
  std::vector<std::vector<std::size_t>> meets;  // circles sharing a point
  double best = std::numeric_limits<double>::infinity();
  SparseCurve witness;

  // seq: circles so far; theta[k]: angle on seq[k] where its arc starts (k >= 1);
  // mid: summed length of the arcs strictly between the first and the last.
  void extend(std::vector<std::size_t>& seq, std::vector<double>& theta, std::vector<double>& sweeps,
              double first_end, double mid) {
    if (seq.size() >= 2) {
      const Candidate c = best_ends(centers[seq.front()], first_end, centers[seq.back()], theta.back(), gap);
      if (c.total + mid < best) {
        best = c.total + mid;
        witness.arcs.clear();
        witness.arcs.push_back({centers[seq.front()], first_end - c.x, c.x});
        for (std::size_t k = 1; k + 1 < seq.size(); ++k) witness.arcs.push_back({centers[seq[k]], theta[k], sweeps[k]});
        witness.arcs.push_back({centers[seq.back()], theta.back(), c.y});
      }
    }
    if (static_cast<int>(seq.size()) >= max_arcs) return;
    const std::size_t cur = seq.back();
    for (std::size_t nxt : meets[cur]) {
      const Point a = centers[cur], b = centers[nxt];
      const double d = geom::dist(a, b);
      const double half = std::acos(std::min(1.0, d / 2.0));
      const double dir = geom::direction(b - a);
      for (double sw : {-half, half}) {
        const double at = dir + sw;  // switch point angle on `cur`
        const Point x = a + geom::unit_dir(at);
        double add = 0.0;
        double end_first = first_end;
        if (seq.size() == 1) {
          end_first = at;
        } else {
          add = ccw_sweep(theta.back(), at);
          sweeps.back() = add;
        }
        if (mid + add >= best) continue;
        seq.push_back(nxt);
        theta.push_back(geom::direction(x - b));
        sweeps.push_back(0.0);
        extend(seq, theta, sweeps, end_first, mid + add);
        seq.pop_back();
        theta.pop_back();
        sweeps.pop_back();
        if (half == 0.0) break;
      }
    }
  }
};

}  // namespace

MinCurveResult min_curve_search(const std::vector<Point>& centers_in, double gap, int max_arcs) {
  if (centers_in.empty()) throw Error(ErrorKind::CentersInvalid, "no centers");
  if (!(gap > 0.0) || !std::isfinite(gap)) throw Error(ErrorKind::CentersInvalid, "gap must be positive and finite");
  std::vector<Point> centers;
  for (const Point& p : centers_in) {
    geom::require_finite(p, "center");
    if (std::find(centers.begin(), centers.end(), p) == centers.end()) centers.push_back(p);
  }
  for (std::size_t a = 0; a < centers.size(); ++a)
    for (std::size_t b = a + 1; b < centers.size(); ++b)
      if (geom::dist(centers[a], centers[b]) < 1.0)
        throw Error(ErrorKind::CentersInvalid,
                    "centers " + std::to_string(a) + " and " + std::to_string(b) + " are closer than 1");

  Search s{centers, gap, std::max(1, max_arcs), std::vector<std::vector<std::size_t>>(centers.size()), std::numeric_limits<double>::infinity(), {}};
  for (std::size_t a = 0; a < centers.size(); ++a)
    for (std::size_t b = 0; b < centers.size(); ++b)
      if (a != b && geom::dist(centers[a], centers[b]) <= 2.0) s.meets[a].push_back(b);

  MinCurveResult res;
  if (gap <= 2.0) {
    s.best = 2.0 * std::asin(gap / 2.0);
    s.witness.arcs = {{centers.front(), 0.0, s.best}};
  }
  for (std::size_t first = 0; first < centers.size(); ++first) {
    std::vector<std::size_t> seq{first};
    std::vector<double> theta{0.0}, sweeps{0.0};
    s.extend(seq, theta, sweeps, 0.0, 0.0);
  }
  res.length = s.best;
  res.curve = s.witness;
  return res;
}

namespace {

// Angle offset of p along arc `a` (counterclockwise from its start) and the distance to the arc.
std::pair<double, double> project(const Arc& a, Point p) {
  const Vec rel = p - a.center;
  const double r = geom::norm(rel);
  const double sweep = a.length();
  const double start = a.sweep >= 0 ? a.start_angle : a.end_angle();
  if (r == 0.0) return {0.0, 1.0};
  const double t = geom::normalize_ccw(geom::direction(rel) - start);
  if (sweep >= kTwoPi || t <= sweep) return {t, std::abs(r - 1.0)};
  const double ds = geom::dist(p, a.center + geom::unit_dir(start));
  const double de = geom::dist(p, a.center + geom::unit_dir(start + sweep));
  return ds <= de ? std::pair{0.0, ds} : std::pair{sweep, de};
}

}  // namespace

double distance_to_curve(const SparseCurve& c, Point p) {
  double d = std::numeric_limits<double>::infinity();
  for (const Arc& a : c.arcs) d = std::min(d, project(a, p).second);
  return d;
}

std::optional<double> arc_length_position(const SparseCurve& c, Point p, double eps) {
  double cum = 0.0;
  for (const Arc& a : c.arcs) {
    const auto [t, d] = project(a, p);
    if (d <= eps) {
      // Points just before the start of the arc wrap to t near 2pi.
      const double off = t > a.length() ? (kTwoPi - t < t - a.length() ? 0.0 : a.length()) : t;
      return cum + off;
    }
    cum += a.length();
  }
  return std::nullopt;
}

ExclusionVerdict excluded_disk_count_bound(const SparseCurve& gamma, const std::vector<Point>& removed,
                                           const Tolerances& tol) {
  ExclusionVerdict v;
  // Near-tangent circles pin their crossing only to sqrt of the distance error.
  const double eps = std::sqrt(2.0 * (tol.geom + tol.tangency));
  for (std::size_t k = 0; k < removed.size(); ++k) {
    const auto pos = arc_length_position(gamma, removed[k], eps);
    if (!pos)
      throw Error(ErrorKind::CenterNotOnCurve, "removed center " + std::to_string(k) + " " + pt(removed[k]) +
                                                   " is " + sci(distance_to_curve(gamma, removed[k])) +
                                                   " away from the curve");
    v.positions.push_back(*pos);
  }
  std::sort(v.positions.begin(), v.positions.end());
  const double len = curve_length(gamma);
  v.count = removed.size();
  v.capacity = len / (kPi / 3.0);
  v.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < v.positions.size(); ++k)
    v.min_gap = std::min(v.min_gap, v.positions[k + 1] - v.positions[k]);
  if (gamma.closed && v.positions.size() >= 2)
    v.min_gap = std::min(v.min_gap, len - v.positions.back() + v.positions.front());
  v.slack = std::min(v.min_gap - kPi / 3.0, v.capacity - static_cast<double>(v.count));
  return v;
}

}  // namespace kissgeo::curve
