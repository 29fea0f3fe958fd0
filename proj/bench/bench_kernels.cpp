// Times the OpenMP kernels against their serial reference implementations
// and verifies on the way that both produce identical results.

#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#include "revgraph/branching.hpp"
#include "revgraph/random_graph.hpp"
#include "revgraph/signed_perm.hpp"

using namespace revgraph;

namespace {

struct Timing {
  double serial = 0.0;
  double parallel = 0.0;
  bool identical = false;
};

void report(const char* name, const Timing& t) {
  std::printf("%-34s serial %8.3fs  parallel %8.3fs  speedup %5.2fx  %s\n",
              name, t.serial, t.parallel,
              t.parallel > 0 ? t.serial / t.parallel : 0.0,
              t.identical ? "identical" : "MISMATCH");
}

Timing bench_explicit_sampler(int n, double c, std::uint64_t seed) {
  const auto cfg = SampleConfig::from_c(n, c, GeneratorKind::Reversals, seed);
  Timing t;
  double t0 = omp_get_wtime();
  const auto serial = sample_subgraph_explicit_serial(cfg);
  t.serial = omp_get_wtime() - t0;
  t0 = omp_get_wtime();
  const auto parallel = sample_subgraph_explicit(cfg);
  t.parallel = omp_get_wtime() - t0;
  t.identical = serial.edges == parallel.edges;
  return t;
}

Timing bench_lazy_estimates(int n, double c, std::uint64_t trials) {
  const double lambda =
      c / static_cast<double>(
              GeneratorSet{GeneratorKind::Reversals, n}.count());
  const std::uint64_t cutoff = 10000;
  Timing t;
  double t0 = omp_get_wtime();
  const auto serial = estimate_giant_fraction_serial(
      n, lambda, cutoff, trials, GeneratorKind::Reversals, 99);
  t.serial = omp_get_wtime() - t0;
  t0 = omp_get_wtime();
  const auto parallel = estimate_giant_fraction(n, lambda, cutoff, trials,
                                                GeneratorKind::Reversals, 99);
  t.parallel = omp_get_wtime() - t0;
  t.identical = serial.hits == parallel.hits;
  return t;
}

Timing bench_branching(std::uint64_t trials) {
  BranchingConfig cfg;
  cfg.model = OffspringModel::Poisson;
  cfg.lambda = 2.0;
  Timing t;
  double t0 = omp_get_wtime();
  const auto serial = simulate_branching_serial(cfg, trials, 7);
  t.serial = omp_get_wtime() - t0;
  t0 = omp_get_wtime();
  const auto parallel = simulate_branching(cfg, trials, 7);
  t.parallel = omp_get_wtime() - t0;
  t.identical = serial.survived == parallel.survived;
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  // small | default | large working sets
  std::string size = argc > 1 ? argv[1] : "default";
  int sampler_n = 7;
  std::uint64_t lazy_trials = 200;
  std::uint64_t branching_trials = 200000;
  if (size == "small") {
    sampler_n = 6;
    lazy_trials = 50;
    branching_trials = 20000;
  } else if (size == "large") {
    sampler_n = 8;
    lazy_trials = 500;
    branching_trials = 1000000;
  } else if (size != "default") {
    std::fprintf(stderr, "usage: %s [small|default|large]\n", argv[0]);
    return 2;
  }

  std::printf("threads: %d\n", omp_get_max_threads());
  report(("explicit sampler (n=" + std::to_string(sampler_n) + ", c=1.5)")
             .c_str(),
         bench_explicit_sampler(sampler_n, 1.5, 4242));
  report("lazy giant estimate (n=8, c=1.5)",
         bench_lazy_estimates(8, 1.5, lazy_trials));
  report("branching survival (poisson 2)", bench_branching(branching_trials));
  return 0;
}
