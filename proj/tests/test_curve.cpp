#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "kissgeo/certify.hpp"
#include "kissgeo/curve.hpp"
#include "kissgeo/error.hpp"
#include "kissgeo/unit_disks.hpp"

using namespace kissgeo;
using namespace kissgeo::curve;
using geom::Point;

namespace {

const double kH = std::sqrt(3.0) / 2.0;

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::Parse;
}

double ccw_atan2(Point a, Point b) {
  double t = std::atan2(b.y, b.x) - std::atan2(a.y, a.x);
  while (t < 0) t += 2 * kPi;
  while (t >= 2 * kPi) t -= 2 * kPi;
  return t;
}

// Length of the boundary of the union of unit disks, by dense sampling of each circle.
double sampled_boundary_length(const std::vector<Point>& c) {
  const int samples = 20000;
  double total = 0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    int out = 0;
    for (int s = 0; s < samples; ++s) {
      const Point x = c[k] + geom::unit_dir(2 * kPi * (s + 0.5) / samples);
      bool covered = false;
      for (std::size_t m = 0; m < c.size() && !covered; ++m) covered = m != k && geom::dist(x, c[m]) < 1 - 1e-12;
      out += !covered;
    }
    total += 2 * kPi * out / samples;
  }
  return total;
}

// The shortest curve from the remark: two arcs of length 2 asin(1/4), the first clockwise.
SparseCurve remark_curve() {
  const double l = 2 * std::asin(0.25);
  return {{{{0, -1}, kPi / 2 + l, -l}, {{0, 1}, -kPi / 2, l}}, false};
}

const certify::RegionReport* region_with_psi(const certify::CertReport& r, double psi) {
  for (const auto& reg : r.per_region)
    if (reg.angles.psi && std::abs(*reg.angles.psi - psi) < 1e-9) return &reg;
  return nullptr;
}

}  // namespace

TEST_CASE("validate_curve examples") {
  const SparseCurve one{{{{0, 0}, 0.0, kPi / 3}}, false};
  CHECK_NOTHROW(validate_curve(one));
  CHECK(curve_length(one) == doctest::Approx(kPi / 3));
  CHECK(curve_length(SparseCurve{}) == 0.0);

  CHECK(kind_of([] { validate_curve(remark_curve()); }) == ErrorKind::ClockwiseArc);
  const auto rc = remark_curve();
  CHECK(curve_length(rc) == doctest::Approx(4 * std::asin(0.25)));
  CHECK(curve_length(rc) < kPi / 3);
  CHECK(geom::dist(rc.start(), rc.end()) == doctest::Approx(1.0));
  CHECK(geom::dist(rc.arcs[0].end_point(), rc.arcs[1].start_point()) < 1e-12);

  // Centers 0.5 apart, chained at an intersection point of the two circles.
  const Point a{0, 0}, b{0.5, 0};
  const double t = std::acos(0.25);
  const SparseCurve close{{{a, t - 0.2, 0.2}, {b, kPi - t, 0.3}}, false};
  REQUIRE(geom::dist(close.arcs[0].end_point(), close.arcs[1].start_point()) < 1e-12);
  CHECK(kind_of([&] { validate_curve(close); }) == ErrorKind::CentersTooClose);

  const SparseCurve broken{{{{0, 0}, 0.0, 0.5}, {{1, 0}, 2.0, 0.5}}, false};
  CHECK(kind_of([&] { validate_curve(broken); }) == ErrorKind::NotUnitRadiusChain);
}

TEST_CASE("direction jump of tangent circles is pi/3") {
  // Outer boundary of two unit circles around (1,0) and (0,0), corner at (1/2, sqrt3/2).
  const SparseCurve c{{{{1, 0}, kPi / 3, kPi / 3}, {{0, 0}, kPi / 3, 0.4}}, false};
  CHECK_NOTHROW(validate_curve(c));
  const auto j = direction_jumps(c);
  REQUIRE(j.jumps.size() == 1);
  CHECK(j.jumps[0].value == doctest::Approx(kPi / 3));
  CHECK(j.delta == doctest::Approx(kPi / 3));
}

TEST_CASE("concatenate") {
  const SparseCurve a{{{{0, 0}, 0.0, kPi}}, false};
  const SparseCurve b{{{{0, 0}, kPi, kPi}}, false};
  const auto c = concatenate({a, b});
  CHECK(c.closed);
  CHECK(curve_length(c) == doctest::Approx(2 * kPi));
  const SparseCurve off{{{{3, 0}, 0.0, 1.0}}, false};
  CHECK(kind_of([&] { concatenate({a, off}); }) == ErrorKind::EndpointMismatch);
}

TEST_CASE("hex(3) region curves and angles") {
  const auto rep = certify::certify_unchecked(certify::hex_packing(3), 3);
  REQUIRE(rep.per_region.size() == 12);
  for (std::size_t k = 0; k < rep.regions.size(); ++k) {
    const auto& region = rep.regions[k];
    const auto& rr = rep.per_region[k];
    CHECK_NOTHROW(validate_curve(rep.region_curves[k]));
    CHECK(rr.length == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(rr.jumps.delta == doctest::Approx(kPi / 3).epsilon(1e-12));
    CHECK(std::abs(rr.identity_residual) < 1e-9);
    // alpha recomputed with atan2.
    CHECK(rr.angles.alpha == doctest::Approx(ccw_atan2(region.c_i() - region.origin, region.c_j() - region.origin)));
    CHECK(rr.angles.alpha == doctest::Approx(kPi / 6));
    if (region.k01 == 0) {
      CHECK(rr.angles.phi == doctest::Approx(kPi / 3));
      CHECK(rr.involved == std::vector<std::size_t>{0, 2});
      CHECK(rep.region_curves[k].arcs.size() == 2);
      CHECK(rr.verdict.min_slack() > -1e-9);
    } else {
      REQUIRE(rr.angles.psi.has_value());
      CHECK(*rr.angles.psi == doctest::Approx(kPi / 3));
      CHECK(*rr.angles.psi ==
            doctest::Approx(ccw_atan2(region.chain[1] - region.origin, region.chain[3] - region.origin)));
    }
  }
  CHECK(rep.sum_phi == doctest::Approx(2 * kPi).epsilon(1e-12));
  CHECK(rep.sum_alpha == doctest::Approx(2 * kPi).epsilon(1e-12));
  CHECK(rep.sum_psi == doctest::Approx(2 * kPi).epsilon(1e-12));
  CHECK(rep.gamma.closed);
  CHECK_NOTHROW(validate_curve(rep.gamma));
  CHECK(std::abs(curve_length(rep.gamma) - 6 * kPi) < 1e-9);
  // Independent estimate of the boundary of the union of the unit disks.
  CHECK(sampled_boundary_length(rep.pruned.packing.centers) == doctest::Approx(6 * kPi).epsilon(1e-3));
}

TEST_CASE("the k=0 region at the corner (2,0)") {
  const auto rep = certify::certify_unchecked(certify::hex_packing(3), 3);
  bool found = false;
  for (std::size_t k = 0; k < rep.regions.size(); ++k) {
    const auto& r = rep.regions[k];
    if (r.size() != 3 || geom::dist(r.c_i(), {2, 0}) > 1e-12) continue;
    found = true;
    CHECK(geom::dist(r.c_j(), {1.5, kH}) < 1e-12);
    const auto& c = rep.region_curves[k];
    CHECK(geom::dist(c.start(), {3, 0}) < 1e-12);
    CHECK(geom::dist(c.end(), packing::farthest_point(r.c_j(), r.origin)) < 1e-12);
    // Switch where the two circles meet outside: c_i + dir(60 degrees).
    CHECK(geom::dist(c.arcs[0].end_point(), Point{2.5, kH}) < 1e-12);
  }
  CHECK(found);
}

TEST_CASE("collinear chain: all five involved") {
  const certify::PackingInstance p{{{0, 0}, {1, 0}, {2, 0}, {-1, 0}, {-2, 0}}, 0};
  const auto rep = certify::certify_unchecked(p, 2);
  REQUIRE(rep.per_region.size() == 2);
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& rr = rep.per_region[k];
    CHECK(rr.involved == std::vector<std::size_t>{0, 1, 2, 3, 4});
    CHECK(rep.region_curves[k].arcs.size() == 5);
    REQUIRE(rr.jumps.jumps.size() == 4);
    for (const auto& j : rr.jumps.jumps) CHECK(j.value == doctest::Approx(kPi / 3));
    CHECK(rr.jumps.delta == doctest::Approx(4 * kPi / 3));
    REQUIRE(rr.angles.psi.has_value());
    const double bound = 3 * *rr.angles.psi - 2 * kPi / 3 + 2 * rr.angles.phi;
    CHECK(bound >= rr.jumps.delta - 1e-9);
    CHECK(rr.verdict.violations(1e-6).empty());
  }
  CHECK(rep.ok());
}

TEST_CASE("jumps pi/3, psi, pi/3 when the source is covered") {
  // 1-disks at (1,0) and (0,1) meet at (1,1); their children sit further out.
  const certify::PackingInstance p{{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {0, 2}}, 0};
  const auto rep = certify::certify_unchecked(p, 2);
  const auto* rr = region_with_psi(rep, kPi / 2);
  REQUIRE(rr != nullptr);
  CHECK(rr->involved == std::vector<std::size_t>{0, 1, 3, 4});
  REQUIRE(rr->jumps.jumps.size() == 3);
  CHECK(rr->jumps.jumps[0].value == doctest::Approx(kPi / 3));
  CHECK(rr->jumps.jumps[1].value == doctest::Approx(kPi / 2));
  CHECK(rr->jumps.jumps[2].value == doctest::Approx(kPi / 3));
  CHECK(geom::dist(rr->jumps.jumps[1].position, {1, 1}) < 1e-9);
  CHECK(rep.ok());
}

TEST_CASE("region identities on random radius-2 packings") {
  int regions = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    certify::PackingInstance p;
    try {
      p = certify::random_radius2_packing(seed, 5 + seed % 14);
    } catch (const Error&) {
      continue;
    }
    const auto rep = certify::certify_unchecked(p, 2);
    if (rep.fallback_used) continue;
    double phi = 0, alpha = 0, psi = 0;
    for (std::size_t k = 0; k < rep.per_region.size(); ++k) {
      const auto& rr = rep.per_region[k];
      CHECK_NOTHROW(validate_curve(rep.region_curves[k]));
      CHECK(std::abs(rr.length - rr.jumps.delta - rr.angles.alpha) < 1e-9);
      CHECK(rr.verdict.violations(1e-6).empty());
      CHECK(std::abs(rr.angles.ui_vi) <= 2 * kPi / 3 + 1e-9);
      phi += rr.angles.phi;
      alpha += rr.angles.alpha;
      psi += rr.angles.psi.value_or(0.0);
      ++regions;
    }
    CHECK(std::abs(phi - 2 * kPi) < 1e-9);
    CHECK(std::abs(alpha - 2 * kPi) < 1e-9);
    CHECK(std::abs(psi - 2 * kPi) < 1e-9);
    CHECK(rep.lemma_value <= 36 + 1e-6);
  }
  CHECK(regions > 500);
}

TEST_CASE("min_curve_search examples") {
  CHECK(std::abs(min_curve_search({{0, 0}}, 1.0).length - kPi / 3) < 1e-9);
  CHECK(std::abs(min_curve_search({{0, 0}}, 2.0).length - kPi) < 1e-9);
  CHECK(std::abs(min_curve_search({{0, 0}, {1, 0}}, 1.0, 4).length - kPi / 3) < 1e-9);
  CHECK(kind_of([] { min_curve_search({}, 1.0); }) == ErrorKind::CentersInvalid);
  CHECK(kind_of([] { min_curve_search({{0, 0}, {0.5, 0}}, 1.0); }) == ErrorKind::CentersInvalid);
  CHECK(kind_of([] { min_curve_search({{0, 0}}, 0.0); }) == ErrorKind::CentersInvalid);
  // A single circle cannot reach gap 2.5; two circles can.
  CHECK(std::isinf(min_curve_search({{0, 0}}, 2.5).length));
  const auto two = min_curve_search({{0, 0}, {1, 0}}, 2.5);
  REQUIRE(std::isfinite(two.length));
  CHECK(two.length >= 2.5 - 1e-9);
  CHECK_NOTHROW(validate_curve(two.curve));
  CHECK(geom::dist(two.curve.start(), two.curve.end()) >= 2.5 - 1e-9);
  CHECK(curve_length(two.curve) == doctest::Approx(two.length));
}

TEST_CASE("min_curve_search on random admissible sets") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(-1.8, 1.8), g(1.0, 1.9);
  for (int t = 0; t < 60; ++t) {
    std::vector<Point> c;
    const std::size_t n = 1 + t % 4;
    while (c.size() < n) {
      const Point p{u(rng), u(rng)};
      bool ok = true;
      for (const Point& q : c) ok = ok && geom::dist(p, q) >= 1.0;
      if (ok) c.push_back(p);
    }
    const double gap = t % 2 ? 1.0 : g(rng);
    const auto res = min_curve_search(c, gap, 4);
    CHECK(res.length >= kPi / 3 - 1e-6);
    if (gap == 1.0) CHECK(res.length <= kPi / 3 + 1e-9);
    if (n == 1) CHECK(res.length >= 2 * std::asin(gap / 2) - 1e-9);
    CHECK_NOTHROW(validate_curve(res.curve));
    CHECK(geom::dist(res.curve.start(), res.curve.end()) >= gap - 1e-9);
  }
}

TEST_CASE("excluded disks on hex(3)") {
  const auto rep = certify::certify_unchecked(certify::hex_packing(3), 3);
  const auto v = excluded_disk_count_bound(rep.gamma, rep.pruned.removed_centers);
  CHECK(v.count == 18);
  CHECK(v.capacity == doctest::Approx(18.0));
  CHECK(v.min_gap == doctest::Approx(kPi / 3));
  CHECK(v.slack > -1e-9);
  for (std::size_t k = 0; k < v.positions.size(); ++k) {
    const double next = k + 1 < v.positions.size() ? v.positions[k + 1] : v.positions.front() + 6 * kPi;
    CHECK(next - v.positions[k] == doctest::Approx(kPi / 3));
  }
  const auto none = excluded_disk_count_bound(rep.gamma, {});
  CHECK(none.count == 0);
  CHECK(none.slack > 0);
  CHECK(kind_of([&] { excluded_disk_count_bound(rep.gamma, {{0.1, 0.1}}); }) == ErrorKind::CenterNotOnCurve);
}

TEST_CASE("distance and arc-length helpers") {
  const SparseCurve c{{{{0, 0}, 0.0, kPi / 2}, {{0, 2}, -kPi / 2, kPi / 2}}, false};
  CHECK(distance_to_curve(c, {2, 0}) == doctest::Approx(1.0));
  CHECK(distance_to_curve(c, {0, 0}) == doctest::Approx(1.0));
  const auto pos = arc_length_position(c, {0, 1}, 1e-12);
  REQUIRE(pos.has_value());
  CHECK(*pos == doctest::Approx(kPi / 2));
  CHECK_FALSE(arc_length_position(c, {5, 5}, 1e-6).has_value());
}
