#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "kissgeo/certify.hpp"
#include "kissgeo/error.hpp"

namespace kissgeo::certify {

using geom::Point;

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

// Point at distance 1 from both a and b (one of the two, chosen by `side`).
std::optional<Point> roll_point(Point a, Point b, bool side) {
  const double d = geom::dist(a, b);
  if (d < 1.0 || d > 2.0 || d == 0.0) return std::nullopt;
  const double h = std::sqrt(std::max(0.0, 1.0 - d * d / 4.0));
  const geom::Vec u = (1.0 / d) * (b - a);
  const geom::Vec n{-u.y, u.x};
  return a + (d / 2.0) * u + (side ? h : -h) * n;
}

// Valid placement for a new center given the others (skip = index being moved).
bool fits(const std::vector<Point>& c, Point p, std::optional<std::size_t> skip, const Tolerances& tol) {
  if (!geom::finite(p)) return false;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (skip && *skip == k) continue;
    if (geom::dist(c[k], p) < 1.0 - tol.geom) return false;
  }
  return true;
}

// Kissing radius from disk 0, or nullopt when some disk is unreachable.
std::optional<int> radius_from_origin(const std::vector<Point>& c, const Tolerances& tol) {
  PackingInstance p{c, 0};
  return packing::kissing_profile(p, 0, tol).radius;
}

Point random_candidate(Rng& rng, const std::vector<Point>& c, double roll_prob) {
  if (c.size() >= 2 && uniform(rng, 0.0, 1.0) < roll_prob) {
    const std::size_t a = pick(rng, c.size());
    std::vector<std::size_t> partners;
    for (std::size_t b = 0; b < c.size(); ++b) {
      const double d = geom::dist(c[a], c[b]);
      if (b != a && d >= 1.0 && d <= 2.0) partners.push_back(b);
    }
    if (!partners.empty()) {
      const std::size_t b = partners[pick(rng, partners.size())];
      if (const auto q = roll_point(c[a], c[b], pick(rng, 2) == 0)) return *q;
    }
  }
  return c[pick(rng, c.size())] + geom::unit_dir(uniform(rng, 0.0, kTwoPi));
}

}  // namespace

PackingInstance random_packing(std::uint64_t seed, std::size_t size, int max_radius, const Tolerances& tol) {
  if (size == 0) throw Error(ErrorKind::GenerationTimeout, "size must be positive");
  Rng rng(seed);
  std::vector<Point> c{{0.0, 0.0}};
  std::vector<int> layer{0};
  const std::size_t max_attempts = 400 * size;
  std::size_t attempts = 0;
  while (c.size() < size) {
    if (++attempts > max_attempts)
      throw Error(ErrorKind::GenerationTimeout, "placed " + std::to_string(c.size()) + " of " + std::to_string(size) +
                                                    " disks within radius " + std::to_string(max_radius));
    const Point q = random_candidate(rng, c, 0.7);
    if (!fits(c, q, std::nullopt, tol)) continue;
    // A new disk only shortens paths through itself; its own layer decides feasibility.
    int best = -1;
    for (std::size_t k = 0; k < c.size(); ++k)
      if (packing::touching(c[k], q, tol) && (best < 0 || layer[k] + 1 < best)) best = layer[k] + 1;
    if (best < 0 || best > max_radius) continue;
    c.push_back(q);
    PackingInstance tmp{c, 0};
    layer = packing::kissing_profile(tmp, 0, tol).dist;
  }
  return {c, 0};
}

PackingInstance random_radius2_packing(std::uint64_t seed, std::size_t size) {
  if (size < 3) throw Error(ErrorKind::GenerationTimeout, "size must be at least 3");
  return random_packing(seed, size, 2);
}

PackingInstance thinned_hex_packing(std::uint64_t seed, int n, std::size_t remove) {
  Rng rng(seed);
  PackingInstance p = hex_packing(n);
  for (int attempt = 0; attempt < 1000 && remove > 0 && p.centers.size() > 1; ++attempt) {
    const std::size_t k = 1 + pick(rng, p.centers.size() - 1);
    auto c = p.centers;
    c.erase(c.begin() + static_cast<std::ptrdiff_t>(k));
    const auto r = radius_from_origin(c, {});
    if (!r || *r > n) continue;
    p.centers = std::move(c);
    --remove;
  }
  if (remove > 0) throw Error(ErrorKind::GenerationTimeout, "could not thin the lattice further");
  return p;
}

std::string canonical_string(const PackingInstance& p) {
  std::string s;
  char buf[64];
  for (const Point& c : p.centers) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g;", c.x, c.y);
    s += buf;
  }
  return s;
}

namespace {

// Annealing schedule repeats with this period, independent of the budget.
constexpr std::uint64_t kPeriod = 20000;

struct Chain {
  const SearchConfig& cfg;
  const Tolerances& tol;
  Rng rng;
  std::vector<Point> c;
  SearchState st;

  bool admissible(const std::vector<Point>& cand) const {
    const auto r = radius_from_origin(cand, tol);
    return r && *r <= cfg.n;
  }

  void note_best(std::uint64_t it) {
    if (c.size() > st.best_count) {
      st.best_count = c.size();
      st.best = {c, 0};
      st.trajectory.emplace_back(it, c.size());
    }
  }

  void step(std::uint64_t it) {
    const double frac = static_cast<double>(it % kPeriod) / kPeriod;
    const double temp = std::pow(0.01, frac);
    const double sigma = 0.2 * std::pow(0.05, frac);
    const double u = uniform(rng, 0.0, 1.0);
    if (u < 0.4) {  // insertion
      const Point q = random_candidate(rng, c, 0.7);
      if (!fits(c, q, std::nullopt, tol)) return;
      auto cand = c;
      cand.push_back(q);
      if (!admissible(cand)) return;
      c = std::move(cand);
      ++st.accepted;
    } else if (u < 0.5) {  // deletion, Metropolis on the disk count
      if (c.size() <= 1) return;
      const std::size_t k = 1 + pick(rng, c.size() - 1);
      if (uniform(rng, 0.0, 1.0) >= std::exp(-1.0 / temp)) return;
      auto cand = c;
      cand.erase(cand.begin() + static_cast<std::ptrdiff_t>(k));
      if (!admissible(cand)) return;
      c = std::move(cand);
      ++st.accepted;
    } else {  // jitter: rotate about a touching disk, or displace and snap to the nearest
      if (c.size() <= 1) return;
      const std::size_t k = 1 + pick(rng, c.size() - 1);
      std::normal_distribution<double> gauss(0.0, sigma);
      Point q;
      if (u < 0.75) {
        std::vector<std::size_t> touching;
        for (std::size_t m = 0; m < c.size(); ++m)
          if (m != k && packing::touching(c[m], c[k], tol)) touching.push_back(m);
        if (touching.empty()) return;
        const std::size_t piv = touching[pick(rng, touching.size())];
        const Point pivot = c[piv];
        const double at = geom::direction(c[k] - pivot);
        if (u < 0.6) {  // slide about the pivot until the first contact
          const double sgn = uniform(rng, 0.0, 1.0) < 0.5 ? 1.0 : -1.0;
          std::optional<double> stop;
          for (std::size_t m = 0; m < c.size(); ++m) {
            const double d = geom::dist(c[m], pivot);
            if (m == k || m == piv || d >= 2.0) continue;
            const double h = std::acos(d / 2.0), mid = geom::direction(c[m] - pivot);
            for (double t : {mid - h, mid + h}) {
              const double turn = geom::normalize_ccw(sgn * (t - at));
              if (turn > 1e-9 && (!stop || turn < *stop)) stop = turn;
            }
          }
          if (!stop) return;
          q = pivot + geom::unit_dir(at + sgn * *stop);
        } else {
          q = pivot + geom::unit_dir(at + gauss(rng));
        }
      } else {
        const Point moved = c[k] + Point{gauss(rng), gauss(rng)};
        std::optional<std::size_t> near;
        for (std::size_t m = 0; m < c.size(); ++m)
          if (m != k && (!near || geom::dist(c[m], moved) < geom::dist(c[*near], moved))) near = m;
        const geom::Vec d = moved - c[*near];
        if (geom::norm(d) == 0.0) return;
        q = c[*near] + (1.0 / geom::norm(d)) * d;
      }
      if (!fits(c, q, k, tol)) return;
      auto cand = c;
      cand[k] = q;
      if (!admissible(cand)) return;
      c = std::move(cand);
      ++st.accepted;
    }
  }
};

}  // namespace

SearchState optimize(const SearchConfig& cfg, const Tolerances& tol) {
  if (cfg.n < 1 || cfg.n > 4) throw Error(ErrorKind::RadiusTooLarge, "search supports 1 <= n <= 4");
  std::optional<SearchState> merged;
  for (unsigned r = 0; r < std::max(1u, cfg.restarts); ++r) {
    Chain ch{cfg, tol, Rng(cfg.seed + r), {}, {}};
    ch.st.rng_seed = cfg.seed + r;
    ch.c = cfg.seed_lattice ? hex_packing(cfg.n).centers : std::vector<Point>{{0.0, 0.0}};
    ch.note_best(0);
    for (std::uint64_t it = 1; it <= cfg.budget; ++it) {
      ch.step(it);
      ch.note_best(it);
    }
    ch.st.iterations = cfg.budget;
    if (!merged || ch.st.best_count > merged->best_count ||
        (ch.st.best_count == merged->best_count &&
         canonical_string(ch.st.best) < canonical_string(merged->best)))
      merged = std::move(ch.st);
  }
  if (cfg.n <= 3) certify(merged->best, cfg.n, tol);
  return *merged;
}

}  // namespace kissgeo::certify
