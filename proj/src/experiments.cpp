#include "revgraph/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "revgraph/branching.hpp"
#include "revgraph/errors.hpp"
#include "revgraph/rng.hpp"

namespace revgraph {

const char* sweep_method_name(SweepMethod m) {
  switch (m) {
    case SweepMethod::Explicit:
      return "explicit";
    case SweepMethod::Lazy:
      return "lazy";
    case SweepMethod::Both:
      return "both";
  }
  return "?";
}

std::uint64_t SweepConfig::cutoff_for(int n) const {
  if (fixed_cutoff) return *fixed_cutoff;
  const auto nn = static_cast<std::uint64_t>(n);
  return nn * nn * nn * nn;  // n^4: separates O(n log n) from polynomial cells
}

namespace {

struct CellAccumulator {
  std::vector<double> fractions;
  std::vector<double> second_over_first;

  double mean_fraction() const {
    double s = 0.0;
    for (double f : fractions) s += f;
    return fractions.empty() ? 0.0 : s / static_cast<double>(fractions.size());
  }

  double std_fraction() const {
    if (fractions.size() < 2) return 0.0;
    const double mu = mean_fraction();
    double s2 = 0.0;
    for (double f : fractions) s2 += (f - mu) * (f - mu);
    return std::sqrt(s2 / static_cast<double>(fractions.size() - 1));
  }

  double mean_ratio() const {
    if (second_over_first.empty()) return 0.0;
    double s = 0.0;
    for (double r : second_over_first) s += r;
    return s / static_cast<double>(second_over_first.size());
  }
};

// Per-trial seeds are keyed by (master, n, trial) and deliberately not by c:
// trials at the same n then share their per-edge uniforms across the c grid,
// so largest-component fractions are non-decreasing in c under the coupled
// sampler.
void run_cell(const SweepConfig& config, int n, double c, bool lazy,
              SweepResult& result) {
  const double degree =
      static_cast<double>(GeneratorSet{config.gens, n}.count());
  const double lambda = c / degree;
  const char* method = lazy ? "lazy" : "explicit";

  SweepRow row;
  row.n = n;
  row.c = c;
  row.lambda = lambda;
  row.method = method;
  row.predicted_wp = c > 1.0 ? predicted_giant_fraction(c - 1.0, n).value : 0.0;
  row.predicted_2eps = c > 1.0 ? 2.0 * (c - 1.0) : 0.0;

  const bool feasible =
      lambda >= 0.0 && lambda <= 1.0 && (lazy || n <= config.explicit_max_n);
  if (!feasible) {
    row.trials = 0;
    row.mean_largest_fraction = std::nan("");
    row.std_largest_fraction = std::nan("");
    row.mean_second_over_first = std::nan("");
    result.rows.push_back(std::move(row));
    return;
  }

  const std::uint64_t order = group_order(n);
  const std::uint64_t cutoff = config.cutoff_for(n);
  CellAccumulator acc;
  for (int t = 0; t < config.trials_per_cell; ++t) {
    const std::uint64_t seed =
        derive_seed(config.master_seed, static_cast<std::uint64_t>(n),
                    static_cast<std::uint64_t>(t));
    TrialRow trial;
    trial.n = n;
    trial.c = c;
    trial.lambda = lambda;
    trial.method = method;
    trial.trial = t;
    trial.vertex_count = order;
    trial.seed = seed;
    if (lazy) {
      const auto res = explore_component_lazy(
          n, lambda, SignedPerm::identity(n), cutoff, config.gens, seed);
      trial.largest = res.component_size;
      trial.second = 0;
      acc.fractions.push_back(res.hit_cutoff ? 1.0 : 0.0);
    } else {
      auto sample_config =
          SampleConfig::from_lambda(n, lambda, config.gens, seed);
      sample_config.sampler = config.sampler;
      sample_config.explicit_max_n = config.explicit_max_n;
      const auto stats = components(sample_subgraph_explicit(sample_config));
      trial.largest = stats.largest;
      trial.second = stats.second;
      acc.fractions.push_back(static_cast<double>(stats.largest) /
                              static_cast<double>(order));
      acc.second_over_first.push_back(static_cast<double>(stats.second) /
                                      static_cast<double>(stats.largest));
    }
    result.trials.push_back(std::move(trial));
  }
  row.trials = config.trials_per_cell;
  row.mean_largest_fraction = acc.mean_fraction();
  row.std_largest_fraction = acc.std_fraction();
  row.mean_second_over_first = acc.mean_ratio();
  result.rows.push_back(std::move(row));
}

}  // namespace

SweepResult run_threshold_sweep(const SweepConfig& config) {
  if (config.n_values.empty() || config.c_values.empty())
    throw std::invalid_argument("sweep needs at least one n and one c");
  if (config.trials_per_cell < 1)
    throw std::invalid_argument("trials_per_cell must be >= 1");
  for (double c : config.c_values)
    if (!(c >= 0.0)) throw std::invalid_argument("c must be >= 0");

  SweepResult result;
  for (int n : config.n_values) {
    std::vector<double> cs = config.c_values;
    // Row family probing the vanishing-epsilon window: c_n = 1 + n^{-1/8}.
    if (config.include_vanishing_eps_family)
      cs.push_back(1.0 + std::pow(static_cast<double>(n), -0.125));
    for (double c : cs) {
      if (config.method == SweepMethod::Explicit ||
          config.method == SweepMethod::Both)
        run_cell(config, n, c, /*lazy=*/false, result);
      if (config.method == SweepMethod::Lazy ||
          config.method == SweepMethod::Both)
        run_cell(config, n, c, /*lazy=*/true, result);
    }
  }
  return result;
}

SweepResult run_transposition_analogue(const SweepConfig& config) {
  if (config.gens == GeneratorKind::Reversals)
    throw std::invalid_argument(
        "transposition analogue requires a sign-change-transposition "
        "generator set");
  return run_threshold_sweep(config);
}

SubcriticalReport run_subcritical_suite(int n, double epsilon, int trials,
                                        std::uint64_t master_seed) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("subcritical suite needs 0 < epsilon < 1");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  SubcriticalReport rep;
  rep.n = n;
  rep.epsilon = epsilon;
  rep.c = 1.0 - epsilon;
  rep.trials = trials;
  const std::uint64_t order = group_order(n);
  double sum_fraction = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto config = SampleConfig::from_c(
        n, rep.c, GeneratorKind::Reversals,
        derive_seed(master_seed, static_cast<std::uint64_t>(n),
                    static_cast<std::uint64_t>(t)));
    const auto stats = components(sample_subgraph_explicit(config));
    rep.largest_per_trial.push_back(stats.largest);
    rep.max_largest = std::max(rep.max_largest, stats.largest);
    sum_fraction +=
        static_cast<double>(stats.largest) / static_cast<double>(order);
  }
  rep.mean_fraction = sum_fraction / trials;
  rep.max_fraction =
      static_cast<double>(rep.max_largest) / static_cast<double>(order);
  const double dn = static_cast<double>(n);
  rep.max_over_n_log_n =
      static_cast<double>(rep.max_largest) / (dn * std::log(dn));
  // ln(2^n n!) = n ln 2 + ln Gamma(n+1)
  const double log_order = dn * std::log(2.0) + std::lgamma(dn + 1.0);
  rep.max_over_log_order = static_cast<double>(rep.max_largest) / log_order;
  rep.fraction_ok = rep.max_fraction <= 1e-3;
  return rep;
}

SubcriticalFamilyReport run_subcritical_family(const std::vector<int>& ns,
                                               const std::vector<int>& trials,
                                               double epsilon,
                                               std::uint64_t master_seed) {
  if (ns.size() != trials.size())
    throw std::invalid_argument("one trial count per n");
  SubcriticalFamilyReport family;
  for (std::size_t i = 0; i < ns.size(); ++i)
    family.per_n.push_back(
        run_subcritical_suite(ns[i], epsilon, trials[i], master_seed));
  family.fractions_strictly_decreasing = true;
  for (std::size_t i = 1; i < family.per_n.size(); ++i)
    if (!(family.per_n[i].mean_fraction < family.per_n[i - 1].mean_fraction))
      family.fractions_strictly_decreasing = false;
  return family;
}

UniquenessReport run_uniqueness_check(int n, double epsilon, int trials,
                                      std::uint64_t master_seed) {
  if (!(epsilon > 0.0))
    throw std::invalid_argument("uniqueness check needs epsilon > 0");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  UniquenessReport rep;
  rep.n = n;
  rep.epsilon = epsilon;
  rep.c = 1.0 + epsilon;
  rep.trials = trials;
  const double degree = static_cast<double>(binom2(static_cast<std::uint64_t>(n) + 1));
  const double lambda = std::min(1.0, rep.c / degree);
  for (int t = 0; t < trials; ++t) {
    const auto config = SampleConfig::from_lambda(
        n, lambda, GeneratorKind::Reversals,
        derive_seed(master_seed, static_cast<std::uint64_t>(n),
                    static_cast<std::uint64_t>(t)));
    const auto stats = components(sample_subgraph_explicit(config));
    rep.ratios.push_back(static_cast<double>(stats.second) /
                         static_cast<double>(stats.largest));
  }
  rep.max_ratio = *std::max_element(rep.ratios.begin(), rep.ratios.end());
  double s = 0.0;
  for (double r : rep.ratios) s += r;
  rep.mean_ratio = s / static_cast<double>(rep.ratios.size());
  return rep;
}

std::vector<CriticalRateRow> critical_rate_table(
    const std::vector<double>& block_lengths) {
  std::vector<CriticalRateRow> rows;
  rows.reserve(block_lengths.size());
  for (double length : block_lengths) {
    if (!(length >= 1.0))
      throw std::invalid_argument("block lengths must be >= 1");
    rows.push_back({length, 2.0 / ((length + 1.0) * length)});
  }
  return rows;
}

}  // namespace revgraph
