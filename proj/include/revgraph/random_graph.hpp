#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "revgraph/signed_perm.hpp"

namespace revgraph {

enum class SamplerKind {
  // One uniform per edge slot via the avalanche hash of (seed, lo, hi).
  // Default: coupled across lambda, bit-identical for any worker count, and
  // shared with the lazy explorer so both methods realize the same subgraph
  // for the same seed.
  Hash,
  // Geometric gap skipping over the slot enumeration; O(expected edges)
  // instead of O(edge slots) at small lambda. Serial, same distribution,
  // different realization (not coupled with Hash or across lambda).
  GeometricSkip,
};

struct SampleConfig {
  int n = 1;
  double lambda = 0.0;  // per-edge probability, in [0,1]
  double c = 0.0;       // lambda * C(n+1,2)
  GeneratorKind gens = GeneratorKind::Reversals;
  std::uint64_t seed = 0;
  SamplerKind sampler = SamplerKind::Hash;
  int explicit_max_n = 8;

  static SampleConfig from_lambda(int n, double lambda, GeneratorKind gens,
                                  std::uint64_t seed);
  static SampleConfig from_c(int n, double c, GeneratorKind gens,
                             std::uint64_t seed);
};

// Explicit Bernoulli(lambda) sample of the Cayley graph's edge set. Edges are
// canonical (lo, hi) rank pairs in enumeration order.
struct SampledSubgraph {
  SampleConfig config;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
};

struct ComponentStats {
  std::uint64_t vertex_count = 0;
  std::vector<std::uint64_t> sizes;  // descending
  std::uint64_t largest = 0;
  std::uint64_t second = 0;  // 0 when there is a single component
  std::uint64_t component_count = 0;
};

struct ExplorationResult {
  std::uint64_t component_size = 0;  // exact unless hit_cutoff
  bool hit_cutoff = false;
  std::uint64_t edges_examined = 0;
};

struct GiantFractionEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
};

SampledSubgraph sample_subgraph_explicit(const SampleConfig& config);
// Single-threaded reference; bit-identical to the parallel kernel for the
// Hash sampler (tests compare them).
SampledSubgraph sample_subgraph_explicit_serial(const SampleConfig& config);

ComponentStats components(const SampledSubgraph& g);

// BFS from `start` where each incident edge is decided by the shared edge
// law; stops once `cutoff` vertices have been discovered. max_probes guards
// runaway explorations.
ExplorationResult explore_component_lazy(int n, double lambda,
                                         const SignedPerm& start,
                                         std::uint64_t cutoff,
                                         GeneratorKind gens, std::uint64_t seed,
                                         std::uint64_t max_probes = 1ULL << 40);

// Fraction of independent explorations from the identity that hit the
// cutoff; per-trial seeds derived from master_seed.
GiantFractionEstimate estimate_giant_fraction(int n, double lambda,
                                              std::uint64_t cutoff,
                                              std::uint64_t trials,
                                              GeneratorKind gens,
                                              std::uint64_t master_seed);
GiantFractionEstimate estimate_giant_fraction_serial(int n, double lambda,
                                                     std::uint64_t cutoff,
                                                     std::uint64_t trials,
                                                     GeneratorKind gens,
                                                     std::uint64_t master_seed);

// Binary persistence: small header (n, lambda, seed, generator kind, version)
// followed by the edge rank pairs.
void save_subgraph(const SampledSubgraph& g, const std::string& path);
SampledSubgraph load_subgraph(const std::string& path);

}  // namespace revgraph
