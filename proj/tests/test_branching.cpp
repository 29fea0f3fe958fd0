#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "revgraph/branching.hpp"
#include "revgraph/errors.hpp"

using namespace revgraph;

namespace {

// independent oracle: plain bisection on x + e^{-lambda x} - 1 over (0, 1],
// driven to a 1e-12 residual
double bisect_root(double lambda) {
  double a = 1e-300, b = 1.0;
  for (int k = 0; k < 2000; ++k) {
    const double mid = 0.5 * (a + b);
    const double f = mid + std::exp(-lambda * mid) - 1.0;
    if (std::abs(f) <= 1e-12) return mid;
    if (f < 0.0)
      a = mid;
    else
      b = mid;
  }
  return 0.5 * (a + b);
}

bool ordered_or_overlapping(const SurvivalEstimate& lo,
                            const SurvivalEstimate& hi) {
  return lo.mean <= hi.mean || lo.ci_low <= hi.ci_high;
}

}  // namespace

TEST_SUITE("branching") {

TEST_CASE("fixed point at and below criticality") {
  for (double eps : {0.0, -0.3, -1.0}) {
    const auto res = survival_fixed_point(eps);
    CHECK(res.root == 0.0);
    CHECK(res.residual == 0.0);
  }
  CHECK_THROWS_AS(survival_fixed_point(std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(survival_fixed_point(0.5, 0.0), std::invalid_argument);
}

TEST_CASE("fixed point agrees with the bisection oracle") {
  // frozen oracle values
  CHECK(survival_fixed_point(1.0).root ==
        doctest::Approx(0.79681213002002005).epsilon(1e-9));
  CHECK(survival_fixed_point(0.5).root ==
        doctest::Approx(0.58281164386581139).epsilon(1e-9));
  CHECK(survival_fixed_point(0.01).root ==
        doctest::Approx(0.019736410439591756).epsilon(1e-7));

  for (double eps : {0.01, 0.05, 0.1, 0.5, 1.0, 2.0, 5.0}) {
    const auto res = survival_fixed_point(eps, 1e-10);
    CHECK(std::abs(res.root - bisect_root(1.0 + eps)) <= 1e-6);
    CHECK(std::abs(res.residual) <= 1e-10);
    CHECK(res.lambda == 1.0 + eps);
  }
}

TEST_CASE("small-excess root is close to 2 epsilon") {
  const auto res = survival_fixed_point(0.01);
  CHECK(std::abs(res.root / 0.02 - 1.0) < 0.05);
}

TEST_CASE("root is increasing in epsilon and continuous at zero") {
  double prev = 0.0;
  for (double eps = 0.001; eps <= 2.0; eps += 0.013) {
    const double root = survival_fixed_point(eps).root;
    CHECK(root > prev);
    prev = root;
  }
  CHECK(survival_fixed_point(1e-9).root < 1e-6);
}

TEST_CASE("predicted giant fraction carries both branches") {
  const auto pred = predicted_giant_fraction(0.5, 7);
  CHECK(pred.value == survival_fixed_point(0.5, 1e-12).root);  // bit-identical
  CHECK(pred.small_eps_branch == 1.0);
  // 0.5 < 7^{-1/4} ~ 0.615: below the stated window at this small n
  CHECK(!pred.in_stated_regime);
  CHECK(predicted_giant_fraction(0.5, 100).in_stated_regime);
  // epsilon >= 1 is flagged but still computed
  const auto wide = predicted_giant_fraction(1.0, 100);
  CHECK(!wide.in_stated_regime);
  CHECK(wide.value == doctest::Approx(0.79681213002002005).epsilon(1e-9));
}

TEST_CASE("branching simulator survival estimates") {
  BranchingConfig dead;
  dead.model = OffspringModel::Binomial;
  dead.m = 50;
  dead.p = 0.0;
  CHECK(simulate_branching(dead, 200, 1).mean == 0.0);

  BranchingConfig poisson2;
  poisson2.model = OffspringModel::Poisson;
  poisson2.lambda = 2.0;
  const auto est = simulate_branching(poisson2, 10000, 2);
  CHECK(est.ci_low <= 0.7968);
  CHECK(est.ci_high >= 0.7968);
  CHECK(std::abs(est.mean - 0.7968) < 0.015);

  const auto serial = simulate_branching_serial(poisson2, 10000, 2);
  CHECK(serial.survived == est.survived);
}

TEST_CASE("survival bounds between the binomial variants") {
  // pi_{m-1} <= pi_0 <= pi_m at m = 50, p = 1.5/50
  BranchingConfig below;
  below.model = OffspringModel::Binomial;
  below.m = 49;
  below.p = 0.03;
  BranchingConfig mixed;
  mixed.model = OffspringModel::BinomialRoot;
  mixed.m = 50;
  mixed.p = 0.03;
  BranchingConfig above;
  above.model = OffspringModel::Binomial;
  above.m = 50;
  above.p = 0.03;

  const auto e_below = simulate_branching(below, 10000, 11);
  const auto e_mixed = simulate_branching(mixed, 10000, 12);
  const auto e_above = simulate_branching(above, 10000, 13);
  CHECK(ordered_or_overlapping(e_below, e_mixed));
  CHECK(ordered_or_overlapping(e_mixed, e_above));
}

TEST_CASE("binomial offspring converge to the poisson limit") {
  const double target = 0.79681213002002005;
  double prev_gap = 1.0;
  SurvivalEstimate last;
  for (int m : {10, 100, 1000}) {
    BranchingConfig cfg;
    cfg.model = OffspringModel::Binomial;
    cfg.m = m;
    cfg.p = 2.0 / m;
    last = simulate_branching(cfg, 10000, 777);
    const double gap = std::abs(last.mean - target);
    CHECK(gap <= prev_gap + 0.01);
    prev_gap = gap;
  }
  CHECK(last.ci_low - 0.01 <= target);
  CHECK(last.ci_high + 0.01 >= target);
}

TEST_CASE("restricted tree parameters") {
  CHECK_THROWS_AS(restricted_tree_params(15), infeasible_error);
  CHECK_THROWS_AS(restricted_tree_params(0), std::invalid_argument);

  const auto p16 = restricted_tree_params(16);
  CHECK(p16.reserved_prefix == 4);
  CHECK(p16.target_size == 2);
  CHECK(p16.m_offspring == 54);

  const auto p32 = restricted_tree_params(32);
  CHECK(p32.reserved_prefix == 6);
  CHECK(p32.target_size == 3);
  CHECK(p32.m_offspring == 273);

  const auto p64 = restricted_tree_params(64);
  CHECK(p64.reserved_prefix == 11);
  CHECK(p64.target_size == 5);
  CHECK(p64.m_offspring == 1166);
}

TEST_CASE("restricted tree runs") {
  const auto dead = grow_restricted_tree(32, 0.0, 5);
  CHECK(dead.vertices.size() == 1);
  CHECK(!dead.succeeded);

  const auto sat = grow_restricted_tree(32, 1.0, 5);
  CHECK(sat.succeeded);
  CHECK(sat.vertices.size() == 3);
  std::set<std::vector<int>> distinct;
  for (const auto& v : sat.vertices) distinct.insert(v.entries());
  CHECK(distinct.size() == sat.vertices.size());

  CHECK_THROWS_AS(grow_restricted_tree(32, 1.5, 5), std::invalid_argument);
}

TEST_CASE("restricted tree bookkeeping invariants over many runs") {
  const double lambda = 1.5 / 2080.0;  // c = 1.5 at n = 64
  const auto runs = grow_restricted_trees(64, lambda, 300, 909090);
  const auto params = restricted_tree_params(64);
  int successes = 0;
  for (const auto& run : runs) {
    successes += run.succeeded ? 1 : 0;
    CHECK(run.succeeded ==
          (static_cast<int>(run.vertices.size()) == params.target_size));

    // acyclicity: all vertices pairwise distinct
    std::set<std::vector<int>> distinct;
    for (const auto& v : run.vertices) distinct.insert(v.entries());
    CHECK(distinct.size() == run.vertices.size());

    // every reversal used once, from the admissible window, with fresh left
    // endpoints
    std::set<std::pair<int, int>> revs;
    std::set<int> lefts;
    for (const auto& e : run.parent_edges) {
      CHECK(e.rev.i >= params.reserved_prefix + 1);
      CHECK(e.rev.i <= e.rev.j);
      CHECK(e.rev.j <= 64);
      CHECK(revs.insert({e.rev.i, e.rev.j}).second);
      CHECK(lefts.insert(e.rev.i).second);
      CHECK(e.parent >= 0);
      CHECK(e.parent < e.child);
      // the recorded edge really is the recorded reversal applied to the parent
      CHECK(apply_reversal(run.vertices[e.parent], e.rev) ==
            run.vertices[e.child]);
    }
  }
  CHECK(successes > 0);

  // determinism
  const auto rerun = grow_restricted_trees(64, lambda, 300, 909090);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    CHECK(rerun[i].succeeded == runs[i].succeeded);
    CHECK(rerun[i].vertices.size() == runs[i].vertices.size());
  }
}

}  // TEST_SUITE
