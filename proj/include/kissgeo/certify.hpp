#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kissgeo/curve.hpp"
#include "kissgeo/delaunay.hpp"
#include "kissgeo/packing.hpp"

namespace kissgeo::certify {

using packing::PackingInstance;

/// Triangular-lattice disks within lattice distance n of the origin (source = 0).
PackingInstance hex_packing(int n);

struct RegionReport {
  std::size_t i = 0, j = 0;                 // traversal occurrences of the two 2-disks
  int k = 0;                                // occurrences of the source
  std::vector<std::size_t> members;         // pruned disk indices
  std::vector<std::size_t> involved;        // region positions
  curve::RegionAngles angles;
  curve::JumpProfile jumps;
  double length = 0.0;                      // |gamma_ij|
  double identity_residual = 0.0;           // |gamma_ij| - delta - alpha
  curve::RegionVerdict verdict;
};

struct Violation {
  std::string where;
  std::string check;
  double slack = 0.0;
};

struct Counts {
  int c0 = 1;
  int c1 = 0;
  int c2 = 0;
  std::size_t removed = 0;
  std::size_t total = 0;
};

struct CertReport {
  int n = 3;
  std::size_t source = 0;  // index in the input packing
  int radius = 0;
  Counts counts;
  double gamma_length = 0.0;
  double lemma_value = 0.0;
  std::vector<RegionReport> per_region;
  double sum_phi = 0.0, sum_alpha = 0.0, sum_psi = 0.0;
  int total_bound = 37;
  bool fallback_used = false;

  int euler_characteristic = 0;
  bool ascending_simply_connected = false;
  std::size_t walk_corners = 0;
  std::size_t coverage_witnesses = 0;
  std::size_t involvement_ambiguous = 0;
  std::size_t boundary_samples = 0;
  curve::ExclusionVerdict exclusion;
  std::vector<Violation> violations;

  // Intermediate objects, kept for rendering and inspection.
  packing::PrunedPacking pruned;
  packing::PTree tree;
  std::vector<packing::Region> regions;
  std::vector<curve::SparseCurve> region_curves;
  curve::SparseCurve gamma;

  bool ok() const { return violations.empty() && counts.total <= static_cast<std::size_t>(total_bound); }
};

/// Runs the whole pipeline and records every inequality as a slack. Structural
/// failures (overlap, radius, involvement mismatch, ...) still throw.
CertReport certify_unchecked(const PackingInstance& p, int n, const Tolerances& tol = {});

/// certify_unchecked, then throws InequalityViolation on the first recorded violation.
CertReport certify(const PackingInstance& p, int n, const Tolerances& tol = {});

/// Grows a packing from a source at the origin by tangent and two-tangent
/// placements, keeping the kissing radius at most `max_radius`. Throws GenerationTimeout.
PackingInstance random_packing(std::uint64_t seed, std::size_t size, int max_radius, const Tolerances& tol = {});

PackingInstance random_radius2_packing(std::uint64_t seed, std::size_t size);

/// hex(n) with random disks removed while keeping every disk reachable within radius n.
PackingInstance thinned_hex_packing(std::uint64_t seed, int n, std::size_t remove);

struct SearchConfig {
  int n = 1;
  std::uint64_t budget = 100000;   // iterations per restart
  std::uint64_t seed = 0;
  unsigned restarts = 1;
  bool seed_lattice = false;       // start from hex(n) instead of the lone source
};

struct SearchState {
  std::uint64_t rng_seed = 0;
  PackingInstance best;
  std::size_t best_count = 0;
  std::uint64_t iterations = 0;
  std::uint64_t accepted = 0;
  std::vector<std::pair<std::uint64_t, std::size_t>> trajectory;  // (iteration, new best count)
};

/// Simulated annealing over valid packings of kissing radius <= n. The final
/// best is certified for n <= 3 (a failure there throws).
SearchState optimize(const SearchConfig& cfg, const Tolerances& tol = {});

/// Stable text form used to break ties between restarts.
std::string canonical_string(const PackingInstance& p);

}  // namespace kissgeo::certify
