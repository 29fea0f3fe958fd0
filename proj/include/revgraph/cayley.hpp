#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "revgraph/signed_perm.hpp"

namespace revgraph {

// The full (deterministic) Cayley graph of B_n under a generator set.
struct GraphSpec {
  int n = 1;
  GeneratorSet gens;

  std::uint64_t vertex_count() const { return group_order(n); }
  std::uint64_t degree() const { return gens.count(); }
};

// Set of vertices by rank; members sorted and unique.
struct VertexSet {
  int n = 1;
  std::vector<std::uint64_t> members;

  static VertexSet of_perms(const std::vector<SignedPerm>& perms);
  bool contains(std::uint64_t r) const;
  std::uint64_t size() const { return members.size(); }
};

// Memory guards for algorithms that touch the whole vertex set (or could).
// Single-source distance queries get one extra n because the reachable set is
// explored lazily.
struct CayleyLimits {
  int full_graph_max_n = 6;
  int distance_max_n = 7;
};

std::vector<SignedPerm> neighbors(const SignedPerm& v, const GeneratorSet& gens);

// Shortest generator-path length, or nullopt if it exceeds max_depth.
std::optional<int> bfs_distance(const SignedPerm& v, const SignedPerm& w,
                                const GeneratorSet& gens, int max_depth,
                                const CayleyLimits& limits = {});

// Distances from the identity to every vertex (-1 never appears: the graphs
// are connected; asserted by tests, not assumed here).
std::vector<int> bfs_all_distances(const GraphSpec& spec,
                                   const CayleyLimits& limits = {});

// Eccentricity of the identity; equals the diameter because Cayley graphs are
// vertex-transitive. Returns the measured value even where it deviates from
// the expected n+1 (it does at n = 1).
int diameter(const GraphSpec& spec, const CayleyLimits& limits = {});

VertexSet ball(const VertexSet& a, int radius, const GeneratorSet& gens);
VertexSet vertex_boundary(const VertexSet& a, const GeneratorSet& gens);

// True iff every vertex of B_n is within distance 1 of the set.
bool is_dense(const VertexSet& e, const GeneratorSet& gens,
              const CayleyLimits& limits = {});

// Generic Cayley-graph boundary estimate:
//   |boundary(A)| >= |A| * (1 - |A| / |B_n|) / (n+1).
struct BoundaryBoundReport {
  std::uint64_t boundary_size = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

BoundaryBoundReport check_boundary_bound(const VertexSet& a,
                                         const GeneratorSet& gens);

}  // namespace revgraph
