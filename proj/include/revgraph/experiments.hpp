#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "revgraph/random_graph.hpp"
#include "revgraph/signed_perm.hpp"

namespace revgraph {

enum class SweepMethod { Explicit, Lazy, Both };

const char* sweep_method_name(SweepMethod m);

struct SweepConfig {
  std::vector<int> n_values;
  std::vector<double> c_values;  // lambda = c / C(n+1,2)
  int trials_per_cell = 10;
  std::uint64_t master_seed = 0;
  SweepMethod method = SweepMethod::Explicit;
  // Lazy cutoff; when unset the default rule n^4 applies.
  std::optional<std::uint64_t> fixed_cutoff;
  GeneratorKind gens = GeneratorKind::Reversals;
  SamplerKind sampler = SamplerKind::Hash;
  int explicit_max_n = 8;
  // Adds one extra c per n: c = 1 + n^(-1/8), probing the window where the
  // supercritical excess vanishes with n.
  bool include_vanishing_eps_family = false;

  std::uint64_t cutoff_for(int n) const;
};

// Aggregated per-(n, c, method) cell. trials == 0 marks a cell that was
// infeasible with the requested method.
struct SweepRow {
  int n = 0;
  double c = 0.0;
  double lambda = 0.0;
  std::string method;
  double mean_largest_fraction = 0.0;
  double std_largest_fraction = 0.0;
  double mean_second_over_first = 0.0;
  double predicted_wp = 0.0;    // 0 for c <= 1
  double predicted_2eps = 0.0;  // small-excess branch 2(c-1), 0 for c <= 1
  int trials = 0;
};

// One sampled subgraph / exploration.
struct TrialRow {
  int n = 0;
  double c = 0.0;
  double lambda = 0.0;
  std::string method;
  int trial = 0;
  std::uint64_t largest = 0;
  std::uint64_t second = 0;
  std::uint64_t vertex_count = 0;
  std::uint64_t seed = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<TrialRow> trials;
};

SweepResult run_threshold_sweep(const SweepConfig& config);

// Same pipeline over the sign-change-transposition graph; rejects reversal
// generator sets.
SweepResult run_transposition_analogue(const SweepConfig& config);

struct SubcriticalReport {
  int n = 0;
  double epsilon = 0.0;
  double c = 0.0;
  int trials = 0;
  std::uint64_t max_largest = 0;
  double max_fraction = 0.0;
  double mean_fraction = 0.0;
  // Reported, not asserted: the constants in the O(n log n) bound are unknown.
  double max_over_n_log_n = 0.0;
  double max_over_log_order = 0.0;
  bool fraction_ok = false;  // max_fraction <= 1e-3
  std::vector<std::uint64_t> largest_per_trial;
};

SubcriticalReport run_subcritical_suite(int n, double epsilon, int trials,
                                        std::uint64_t master_seed);

struct SubcriticalFamilyReport {
  std::vector<SubcriticalReport> per_n;
  bool fractions_strictly_decreasing = false;
};

SubcriticalFamilyReport run_subcritical_family(const std::vector<int>& ns,
                                               const std::vector<int>& trials,
                                               double epsilon,
                                               std::uint64_t master_seed);

struct UniquenessReport {
  int n = 0;
  double epsilon = 0.0;
  double c = 0.0;
  int trials = 0;
  std::vector<double> ratios;  // second/first per trial
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
};

UniquenessReport run_uniqueness_check(int n, double epsilon, int trials,
                                      std::uint64_t master_seed);

// Critical edge probability 2/((L+1) L) at real-valued block length L.
struct CriticalRateRow {
  double block_length = 0.0;
  double critical_probability = 0.0;
};

std::vector<CriticalRateRow> critical_rate_table(
    const std::vector<double>& block_lengths);

}  // namespace revgraph
