#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <vector>

#include "kissgeo/certify.hpp"
#include "kissgeo/error.hpp"
#include "kissgeo/packing.hpp"

using namespace kissgeo;
using geom::Point;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Parse;
}

// Plain BFS over the touching graph, counting the disks at each depth.
std::vector<int> depths(const std::vector<Point>& c, std::size_t src) {
  std::vector<int> d(c.size(), -1);
  std::deque<std::size_t> q{src};
  d[src] = 0;
  while (!q.empty()) {
    const auto u = q.front();
    q.pop_front();
    for (std::size_t v = 0; v < c.size(); ++v)
      if (d[v] < 0 && std::abs(geom::dist(c[u], c[v]) - 1.0) < 1e-9) {
        d[v] = d[u] + 1;
        q.push_back(v);
      }
  }
  return d;
}

int max_depth(const std::vector<Point>& c, std::size_t src) {
  const auto d = depths(c, src);
  if (std::count(d.begin(), d.end(), -1)) return 1 << 20;
  return *std::max_element(d.begin(), d.end());
}

// Boundary length of a union of unit-radius disks: for each circle, merge the
// angular intervals swallowed by other disks and count what is left.
double union_boundary_length(const std::vector<Point>& c) {
  double total = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    std::vector<std::pair<double, double>> cov;
    for (std::size_t m = 0; m < c.size(); ++m) {
      const double d = geom::dist(c[k], c[m]);
      if (m == k || d >= 2.0) continue;
      const double mid = std::atan2(c[m].y - c[k].y, c[m].x - c[k].x);
      const double h = std::acos(d / 2.0);
      double lo = mid - h;
      while (lo < 0) lo += 2 * kPi;
      while (lo >= 2 * kPi) lo -= 2 * kPi;
      const double hi = lo + 2 * h;
      if (hi <= 2 * kPi) {
        cov.push_back({lo, hi});
      } else {
        cov.push_back({lo, 2 * kPi});
        cov.push_back({0.0, hi - 2 * kPi});
      }
    }
    std::sort(cov.begin(), cov.end());
    double covered = 0.0, end = 0.0;
    for (auto [a, b] : cov) {
      if (b <= end) continue;
      covered += b - std::max(a, end);
      end = b;
    }
    total += 2 * kPi - covered;
  }
  return total;
}

int lattice_count(int n) {
  int k = 0;
  for (int a = -n; a <= n; ++a)
    for (int b = -n; b <= n; ++b) k += std::max({std::abs(a), std::abs(b), std::abs(a + b)}) <= n;
  return k;
}

}  // namespace

TEST_CASE("hex packings certify with the lattice counts") {
  for (int n = 1; n <= 3; ++n) {
    const auto p = certify::hex_packing(n);
    CHECK(p.centers.size() == static_cast<std::size_t>(lattice_count(n)));
    CHECK(max_depth(p.centers, *p.source) == n);
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = certify::certify(p, n);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(r.counts.total == static_cast<std::size_t>(lattice_count(n)));
    CHECK(r.ok());
    CHECK(secs < 1.0);
  }
  CHECK(lattice_count(1) == 7);
  CHECK(lattice_count(2) == 19);
  CHECK(lattice_count(3) == 37);
}

TEST_CASE("hex(3) is tight") {
  const auto p = certify::hex_packing(3);
  const auto r = certify::certify(p, 3);
  const auto d = depths(p.centers, *p.source);
  CHECK(r.counts.c1 == std::count(d.begin(), d.end(), 1));
  CHECK(r.counts.c2 == std::count(d.begin(), d.end(), 2));
  CHECK(r.counts.c1 == 6);
  CHECK(r.counts.c2 == 12);
  CHECK(r.counts.removed == 18);
  CHECK_FALSE(r.fallback_used);

  std::vector<Point> kept;
  for (std::size_t k = 0; k < p.centers.size(); ++k)
    if (d[k] <= 2) kept.push_back(p.centers[k]);
  const double oracle = union_boundary_length(kept);
  CHECK(oracle == doctest::Approx(6 * kPi).epsilon(1e-12));
  CHECK(std::abs(r.gamma_length - oracle) < 1e-6);
  CHECK(std::abs(r.lemma_value - 36.0) < 1e-6);

  const auto& pos = r.exclusion.positions;
  REQUIRE(pos.size() == 18);
  for (std::size_t k = 0; k < pos.size(); ++k) {
    const double next = k + 1 < pos.size() ? pos[k + 1] : pos[0] + r.gamma_length;
    CHECK(std::abs(next - pos[k] - kPi / 3) < 1e-6);
  }
  CHECK(std::abs(r.sum_phi - 2 * kPi) < 1e-9);
  CHECK(std::abs(r.sum_alpha - 2 * kPi) < 1e-9);
  CHECK(std::abs(r.sum_psi - 2 * kPi) < 1e-9);
  CHECK(r.per_region.size() == 12);
  CHECK(r.euler_characteristic == 1);
}

TEST_CASE("hex(2) as a radius-3 instance") {
  const auto r = certify::certify(certify::hex_packing(2), 3);
  CHECK(r.counts.total == 19);
  CHECK(r.counts.removed == 0);
  CHECK(r.lemma_value <= 36.0 + 1e-6);
  std::vector<Point> c = certify::hex_packing(2).centers;
  CHECK(std::abs(r.gamma_length - union_boundary_length(c)) < 1e-6);
}

TEST_CASE("fewer than two 2-disks takes the rough bound") {
  const packing::PackingInstance chain{{{0, 0}, {1, 0}, {2, 0}}, 0};
  const auto r = certify::certify(chain, 3);
  CHECK(r.fallback_used);
  CHECK(r.total_bound == 25);
  CHECK(r.counts.total == 3);
  CHECK(r.ok());

  const packing::PackingInstance lone{{{0, 0}}, 0};
  const auto s = certify::certify(lone, 3);
  CHECK(s.fallback_used);
  CHECK(s.counts.total == 1);

  const auto hex1 = certify::certify(certify::hex_packing(1), 1);
  CHECK(hex1.fallback_used);
  CHECK(hex1.counts.total == 7);
}

TEST_CASE("certify rejects bad input") {
  const packing::PackingInstance overlap{{{0, 0}, {0.5, 0}}, 0};
  CHECK(kind_of([&] { certify::certify(overlap, 3); }) == ErrorKind::Overlap);
  const packing::PackingInstance long_chain{{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}}, 0};
  CHECK(kind_of([&] { certify::certify(long_chain, 3); }) == ErrorKind::RadiusTooLarge);
  CHECK(kind_of([&] { certify::certify(certify::hex_packing(3), 2); }) == ErrorKind::RadiusTooLarge);
  const packing::PackingInstance split{{{0, 0}, {5, 0}}, 0};
  CHECK(kind_of([&] { certify::certify(split, 3); }) == ErrorKind::RadiusTooLarge);
}

TEST_CASE("a demanding slack turns the tight lattice into a violation") {
  Tolerances strict;
  strict.slack = -0.5;
  const auto u = certify::certify_unchecked(certify::hex_packing(3), 3, strict);
  CHECK_FALSE(u.ok());
  bool lemma = false;
  for (const auto& v : u.violations) lemma = lemma || v.check == "lemma_value_at_most_36";
  CHECK(lemma);
  CHECK(kind_of([&] { certify::certify(certify::hex_packing(3), 3, strict); }) == ErrorKind::InequalityViolation);
}

TEST_CASE("random_radius2_packing") {
  const auto p = certify::random_radius2_packing(1, 7);
  CHECK(p.centers.size() == 7);
  CHECK_NOTHROW(packing::validate_packing(p));
  REQUIRE(p.source.has_value());
  CHECK(max_depth(p.centers, *p.source) <= 2);

  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto q = certify::random_radius2_packing(s, 3);
    CHECK(q.centers.size() == 3);
    CHECK(max_depth(q.centers, *q.source) <= 2);
  }
  const auto again = certify::random_radius2_packing(1, 7);
  CHECK(certify::canonical_string(again) == certify::canonical_string(p));

  CHECK(kind_of([] { certify::random_radius2_packing(1, 2); }) == ErrorKind::GenerationTimeout);
  CHECK(kind_of([] { certify::random_radius2_packing(1, 20); }) == ErrorKind::GenerationTimeout);
}

TEST_CASE("random radius-3 packings obey the bound") {
  int done = 0;
  for (std::uint64_t s = 0; s < 60; ++s) {
    packing::PackingInstance p;
    try {
      p = certify::random_packing(s, 12 + s % 10, 3);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::GenerationTimeout);
      continue;
    }
    CHECK(max_depth(p.centers, *p.source) <= 3);
    const auto r = certify::certify(p, 3);
    CHECK(r.counts.total == p.centers.size());
    CHECK(r.lemma_value <= 36.0 + 1e-6);
    CHECK(r.counts.total <= 37);
    ++done;
  }
  CHECK(done > 30);
}

TEST_CASE("thinned hex packings") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const std::size_t k = 1 + s % 12;
    const auto p = certify::thinned_hex_packing(s, 3, k);
    CHECK(p.centers.size() == 37 - k);
    CHECK(max_depth(p.centers, *p.source) <= 3);
    const auto r = certify::certify(p, 3);
    CHECK(r.counts.total == 37 - k);
    CHECK(r.lemma_value <= 36.0 + 1e-6);
  }
}

TEST_CASE("canonical_string") {
  const packing::PackingInstance a{{{0, 0}, {1, 0}}, 0};
  const packing::PackingInstance b{{{0, 0}, {std::nextafter(1.0, 2.0), 0}}, 0};
  CHECK(certify::canonical_string(a) == certify::canonical_string(a));
  CHECK(certify::canonical_string(a) != certify::canonical_string(b));
  CHECK(certify::canonical_string(a) == "0 0;1 0;");
}

TEST_CASE("optimize is deterministic and monotone in budget") {
  certify::SearchConfig cfg;
  cfg.n = 1;
  cfg.seed = 7;
  cfg.budget = 3000;
  const auto a = certify::optimize(cfg);
  const auto b = certify::optimize(cfg);
  CHECK(certify::canonical_string(a.best) == certify::canonical_string(b.best));
  CHECK(a.trajectory == b.trajectory);
  CHECK(a.accepted == b.accepted);

  std::size_t prev = 0;
  for (std::uint64_t budget : {10, 100, 1000, 5000, 20000}) {
    cfg.budget = budget;
    const auto s = certify::optimize(cfg);
    CHECK(s.best_count >= prev);
    CHECK(s.best_count <= 7);
    CHECK(s.best.centers.size() == s.best_count);
    prev = s.best_count;
  }
  CHECK(prev == 7);
}

TEST_CASE("optimize keeps the lattice and restarts merge") {
  certify::SearchConfig cfg;
  cfg.n = 2;
  cfg.seed = 3;
  cfg.budget = 2000;
  cfg.seed_lattice = true;
  const auto s = certify::optimize(cfg);
  CHECK(s.best_count == 19);

  cfg.seed_lattice = false;
  cfg.n = 1;
  cfg.restarts = 3;
  cfg.budget = 500;
  const auto m = certify::optimize(cfg);
  std::size_t best = 0;
  for (unsigned r = 0; r < 3; ++r) {
    certify::SearchConfig one = cfg;
    one.restarts = 1;
    one.seed = cfg.seed + r;
    best = std::max(best, certify::optimize(one).best_count);
  }
  CHECK(m.best_count == best);

  certify::SearchConfig bad;
  bad.n = 5;
  CHECK_THROWS_AS(certify::optimize(bad), Error);
}

TEST_CASE("degenerate instances certify cleanly") {
  // c' coincides with the ray through c_i: a zero rhombus angle.
  for (std::uint64_t s : {280, 1498, 1558}) {
    const auto r = certify::certify_unchecked(certify::random_radius2_packing(s, 4 + s % 15), 3);
    CHECK(r.violations.empty());
  }
  // Four centers collinear to the last ulp leave zero-area hull slivers in the triangulation.
  const auto p = certify::random_packing(6671, 15, 3);
  const auto r = certify::certify(p, 3);
  CHECK(r.euler_characteristic == 1);
  CHECK(r.lemma_value <= 36.0 + 1e-6);
}
