#include "revgraph/branching.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "revgraph/errors.hpp"
#include "revgraph/rng.hpp"

namespace revgraph {

namespace {

inline double residual_at(double lambda, double x) {
  return x + std::exp(-lambda * x) - 1.0;
}

}  // namespace

SurvivalResult survival_fixed_point(double epsilon, double tol) {
  if (!std::isfinite(epsilon))
    throw std::invalid_argument("epsilon must be finite");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  SurvivalResult res;
  res.epsilon = epsilon;
  res.lambda = 1.0 + epsilon;
  if (epsilon <= 0.0) {
    res.root = 0.0;
    res.residual = 0.0;
    res.iterations = 0;
    return res;
  }
  const double lambda = res.lambda;
  // f < 0 just right of 0 and f(1) = e^{-lambda} > 0; bisect, then polish
  // with damped fixed-point steps x <- x + (1 - e^{-lambda x} - x).
  double a = 1e-18;
  double b = 1.0;
  int it = 0;
  while (b - a > 1e-15 && it < 200) {
    const double mid = 0.5 * (a + b);
    if (residual_at(lambda, mid) < 0.0)
      a = mid;
    else
      b = mid;
    ++it;
  }
  double x = 0.5 * (a + b);
  for (int k = 0; k < 64; ++k) {
    const double f = residual_at(lambda, x);
    ++it;
    if (std::abs(f) <= tol) break;
    double step = -f;  // fixed-point direction
    double damping = 1.0;
    while (damping > 1e-6) {
      const double cand = x + damping * step;
      if (cand > a && cand < b &&
          std::abs(residual_at(lambda, cand)) < std::abs(f))
        break;
      damping *= 0.5;
    }
    x += damping * step;
  }
  res.root = x;
  res.residual = residual_at(lambda, x);
  res.iterations = it;
  return res;
}

GiantPrediction predicted_giant_fraction(double epsilon_n, int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  GiantPrediction pred;
  pred.value = survival_fixed_point(epsilon_n, 1e-12).root;
  pred.small_eps_branch = epsilon_n > 0.0 ? 2.0 * epsilon_n : 0.0;
  const double regime_floor = std::pow(static_cast<double>(n), -0.25);
  pred.in_stated_regime = epsilon_n >= regime_floor && epsilon_n < 1.0;
  return pred;
}

namespace {

void validate_branching(const BranchingConfig& config) {
  switch (config.model) {
    case OffspringModel::BinomialRoot:
    case OffspringModel::Binomial:
      if (config.m < 1) throw std::invalid_argument("m must be >= 1");
      if (!(config.p >= 0.0 && config.p <= 1.0))
        throw std::invalid_argument("p must lie in [0,1]");
      break;
    case OffspringModel::Poisson:
      if (!(config.lambda >= 0.0))
        throw std::invalid_argument("lambda must be >= 0");
      break;
  }
  if (config.max_generations < 1)
    throw std::invalid_argument("max_generations must be >= 1");
  if (config.population_cap < 1)
    throw std::invalid_argument("population_cap must be >= 1");
}

bool run_branching_trial(const BranchingConfig& config, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // Sum of k iid Binomial(t,p) is Binomial(k*t,p); one draw per generation.
  std::uint64_t alive = 1;
  for (int gen = 1; gen <= config.max_generations; ++gen) {
    std::uint64_t next = 0;
    switch (config.model) {
      case OffspringModel::Poisson: {
        std::poisson_distribution<std::uint64_t> d(
            config.lambda * static_cast<double>(alive));
        next = d(rng);
        break;
      }
      case OffspringModel::Binomial: {
        std::binomial_distribution<std::uint64_t> d(
            alive * static_cast<std::uint64_t>(config.m), config.p);
        next = d(rng);
        break;
      }
      case OffspringModel::BinomialRoot: {
        const std::uint64_t per =
            gen == 1 ? static_cast<std::uint64_t>(config.m)
                     : static_cast<std::uint64_t>(config.m - 1);
        if (per == 0) return false;
        std::binomial_distribution<std::uint64_t> d(alive * per, config.p);
        next = d(rng);
        break;
      }
    }
    if (next == 0) return false;
    if (next >= config.population_cap) return true;
    alive = next;
  }
  return true;  // still positive after max_generations
}

SurvivalEstimate simulate_impl(const BranchingConfig& config,
                               std::uint64_t trials, std::uint64_t master_seed,
                               bool parallel) {
  validate_branching(config);
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  std::vector<std::uint8_t> survived(trials, 0);
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t)
      survived[static_cast<std::size_t>(t)] = run_branching_trial(
          config, derive_seed(master_seed, static_cast<std::uint64_t>(t)));
  } else {
    for (std::uint64_t t = 0; t < trials; ++t)
      survived[t] = run_branching_trial(config, derive_seed(master_seed, t));
  }
  SurvivalEstimate est;
  est.trials = trials;
  for (auto s : survived) est.survived += s;
  est.mean = static_cast<double>(est.survived) / static_cast<double>(trials);
  const double half =
      1.96 * std::sqrt(est.mean * (1.0 - est.mean) / static_cast<double>(trials));
  est.ci_low = std::max(0.0, est.mean - half);
  est.ci_high = std::min(1.0, est.mean + half);
  return est;
}

}  // namespace

SurvivalEstimate simulate_branching(const BranchingConfig& config,
                                    std::uint64_t trials,
                                    std::uint64_t master_seed) {
  return simulate_impl(config, trials, master_seed, true);
}

SurvivalEstimate simulate_branching_serial(const BranchingConfig& config,
                                           std::uint64_t trials,
                                           std::uint64_t master_seed) {
  return simulate_impl(config, trials, master_seed, false);
}

RestrictedTreeParams restricted_tree_params(int n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  // floor(n^{3/4}) with a half-ulp guard so exact powers are not lost to
  // floating-point rounding (e.g. n = 16 -> 8).
  double x = std::pow(static_cast<double>(n), 0.75);
  const double xr = std::round(x);
  if (std::abs(x - xr) < 1e-9 * std::max(1.0, xr)) x = xr;
  RestrictedTreeParams params;
  params.n = n;
  params.reserved_prefix = static_cast<int>(std::floor(x / 2.0));
  params.target_size = static_cast<int>(std::floor(x / 4.0));
  const long long tail = n - params.reserved_prefix;
  params.m_offspring =
      tail * (tail + 1) / 2 - tail * static_cast<long long>(params.target_size);
  if (params.target_size < 2 || params.m_offspring < 1)
    throw infeasible_error(
        "restricted tree needs n >= 16: at n = " + std::to_string(n) +
        " target_size = " + std::to_string(params.target_size) +
        ", m_offspring = " + std::to_string(params.m_offspring));
  return params;
}

RestrictedTreeRun grow_restricted_tree(int n, double lambda,
                                       std::uint64_t seed) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("lambda must lie in [0,1]");
  const RestrictedTreeParams params = restricted_tree_params(n);
  RestrictedTreeRun run;
  run.n = n;
  run.lambda = lambda;
  run.seed = seed;
  run.params = params;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const int q = params.reserved_prefix;
  const int target = params.target_size;
  const long long m = params.m_offspring;

  run.vertices.push_back(SignedPerm::identity(n));
  std::vector<int> frontier{0};  // indexes into run.vertices

  // Bookkeeping mirrors the exploration: a reversal is probed at most once
  // per run and a left endpoint is consumed by the first success using it.
  std::vector<char> used_left(static_cast<std::size_t>(n) + 1, 0);
  std::vector<char> used_rev(static_cast<std::size_t>(n + 1) * (n + 1), 0);
  const auto rev_id = [n](int l, int r) {
    return static_cast<std::size_t>(l) * (n + 1) + static_cast<std::size_t>(r);
  };

  while (!frontier.empty() &&
         static_cast<int>(run.vertices.size()) < target) {
    // Lex-smallest frontier vertex.
    std::size_t best = 0;
    for (std::size_t k = 1; k < frontier.size(); ++k)
      if (lex_less(run.vertices[frontier[k]], run.vertices[frontier[best]]))
        best = k;
    const int wi = frontier[best];
    frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(best));
    const SignedPerm& w = run.vertices[wi];

    // Admissible candidates at step start, ordered by the resulting vertex.
    struct Candidate {
      SignedPerm result;
      int l, r;
    };
    std::vector<Candidate> candidates;
    for (int l = q + 1; l <= n; ++l) {
      if (used_left[l]) continue;
      for (int r = l; r <= n; ++r) {
        if (used_rev[rev_id(l, r)]) continue;
        candidates.push_back({apply_reversal(w, {l, r}), l, r});
      }
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) {
                return lex_less(a.result, b.result);
              });

    long long probed = 0;
    for (auto& cand : candidates) {
      if (probed >= m) break;
      if (static_cast<int>(run.vertices.size()) >= target) break;
      // Admissibility may have changed within this step.
      if (used_left[cand.l] || used_rev[rev_id(cand.l, cand.r)]) continue;
      ++probed;
      if (unit(rng) >= lambda) continue;
      used_rev[rev_id(cand.l, cand.r)] = 1;
      used_left[cand.l] = 1;
      run.vertices.push_back(std::move(cand.result));
      const int child = static_cast<int>(run.vertices.size()) - 1;
      run.parent_edges.push_back({wi, child, Reversal{cand.l, cand.r}});
      frontier.push_back(child);
    }
  }

  run.succeeded = static_cast<int>(run.vertices.size()) == target;
  return run;
}

std::vector<RestrictedTreeRun> grow_restricted_trees(int n, double lambda,
                                                     std::uint64_t runs,
                                                     std::uint64_t master_seed) {
  if (runs < 1) throw std::invalid_argument("runs must be >= 1");
  restricted_tree_params(n);  // fail fast before the parallel region
  std::vector<RestrictedTreeRun> out(runs);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(runs); ++i)
    out[static_cast<std::size_t>(i)] = grow_restricted_tree(
        n, lambda, derive_seed(master_seed, static_cast<std::uint64_t>(i)));
  return out;
}

}  // namespace revgraph
