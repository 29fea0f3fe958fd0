#pragma once

#include <cstdint>
#include <vector>

#include "revgraph/signed_perm.hpp"

namespace revgraph {

// Root of x + e^{-lambda x} = 1 with lambda = 1 + epsilon. The unique root in
// (0,1) exists iff epsilon > 0; otherwise the root is 0.
struct SurvivalResult {
  double epsilon = 0.0;
  double lambda = 1.0;
  double root = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

SurvivalResult survival_fixed_point(double epsilon, double tol = 1e-10);

// Predicted giant-component fraction for c = 1 + epsilon. The fixed-point
// root is the primary value; the 2*epsilon small-epsilon branch is reported
// alongside. Outside epsilon in [n^(-1/4), 1) the value is still computed but
// flagged.
struct GiantPrediction {
  double value = 0.0;
  double small_eps_branch = 0.0;
  bool in_stated_regime = false;
};

GiantPrediction predicted_giant_fraction(double epsilon_n, int n);

enum class OffspringModel {
  BinomialRoot,  // root Binomial(m,p), descendants Binomial(m-1,p)
  Binomial,      // everyone Binomial(m,p)
  Poisson,       // everyone Poisson(lambda)
};

struct BranchingConfig {
  OffspringModel model = OffspringModel::Poisson;
  int m = 1;            // binomial models
  double p = 0.0;       // binomial models
  double lambda = 0.0;  // poisson model
  int max_generations = 200;
  std::uint64_t population_cap = 10000;
};

// Survival proxy: the population reaches population_cap or is still positive
// after max_generations.
struct SurvivalEstimate {
  double mean = 0.0;
  double ci_low = 0.0;   // 95%, normal approximation
  double ci_high = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t survived = 0;
};

SurvivalEstimate simulate_branching(const BranchingConfig& config,
                                    std::uint64_t trials,
                                    std::uint64_t master_seed);
SurvivalEstimate simulate_branching_serial(const BranchingConfig& config,
                                           std::uint64_t trials,
                                           std::uint64_t master_seed);

// Tree-growth process restricted to reversals whose left endpoint lies above
// a reserved prefix: from the lex-smallest frontier vertex, probe the m
// lex-smallest admissible neighbors with probability lambda each, never
// reusing a reversal or a left endpoint. Succeeds when target_size vertices
// are connected.
struct RestrictedTreeParams {
  int n = 0;
  int reserved_prefix = 0;  // floor(n^(3/4) / 2)
  int target_size = 0;      // floor(n^(3/4) / 4)
  long long m_offspring = 0;
};

// Throws infeasible_error (with the computed numbers) when target_size < 2
// or m_offspring < 1.
RestrictedTreeParams restricted_tree_params(int n);

struct RestrictedTreeRun {
  int n = 0;
  double lambda = 0.0;
  std::uint64_t seed = 0;
  RestrictedTreeParams params;

  struct Edge {
    int parent = 0;  // index into vertices
    int child = 0;
    Reversal rev;
  };

  std::vector<SignedPerm> vertices;  // connection order; vertices[0] = id
  std::vector<Edge> parent_edges;
  bool succeeded = false;
};

RestrictedTreeRun grow_restricted_tree(int n, double lambda,
                                       std::uint64_t seed);

// Independent runs with derived seeds; parallel over runs.
std::vector<RestrictedTreeRun> grow_restricted_trees(int n, double lambda,
                                                     std::uint64_t runs,
                                                     std::uint64_t master_seed);

}  // namespace revgraph
