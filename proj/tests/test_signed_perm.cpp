#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "revgraph/errors.hpp"
#include "revgraph/signed_perm.hpp"

using namespace revgraph;

namespace {

SignedPerm sp(std::vector<int> e) { return SignedPerm(std::move(e)); }

std::vector<SignedPerm> all_of_bn(int n) {
  std::vector<SignedPerm> out;
  const auto order = group_order(n);
  out.reserve(order);
  for (std::uint64_t r = 0; r < order; ++r) out.push_back(unrank(n, r));
  return out;
}

SignedPerm random_perm(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> d(0, group_order(n) - 1);
  return unrank(n, d(rng));
}

}  // namespace

TEST_SUITE("signed_perm") {

TEST_CASE("identity and neutrality") {
  CHECK(SignedPerm::identity(3) == sp({1, 2, 3}));
  CHECK_THROWS_AS(SignedPerm::identity(0), std::invalid_argument);

  std::mt19937_64 rng(7);
  for (int k = 0; k < 50; ++k) {
    const auto v = random_perm(5, rng);
    CHECK(compose(SignedPerm::identity(5), v) == v);
    CHECK(compose(v, SignedPerm::identity(5)) == v);
  }
  CHECK(rank_of(SignedPerm::identity(4)) == 0);
}

TEST_CASE("construction rejects non-permutations") {
  CHECK_THROWS_AS(sp({}), std::invalid_argument);
  CHECK_THROWS_AS(sp({1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(sp({1, -1}), std::invalid_argument);
  CHECK_THROWS_AS(sp({1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(sp({0, 1}), std::invalid_argument);
}

TEST_CASE("composition matches the worked reversal action") {
  const auto v = sp({5, 2, -1, 3, -4});
  const auto rho23 = reversal_as_perm(5, {2, 3});
  CHECK(rho23 == sp({1, -3, -2, 4, 5}));
  CHECK(compose(v, rho23) == sp({5, 1, -2, 3, -4}));
  CHECK_THROWS_AS(compose(v, SignedPerm::identity(4)), std::invalid_argument);
}

TEST_CASE("composition is associative") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 1000; ++k) {
    const auto u = random_perm(6, rng);
    const auto v = random_perm(6, rng);
    const auto w = random_perm(6, rng);
    CHECK(compose(compose(u, v), w) == compose(u, compose(v, w)));
  }
}

TEST_CASE("group axioms on B_2 exhaustively and B_8 by sampling") {
  const auto b2 = all_of_bn(2);
  REQUIRE(b2.size() == 8);
  const auto id2 = SignedPerm::identity(2);
  for (const auto& u : b2) {
    CHECK(compose(u, inverse(u)) == id2);
    CHECK(compose(inverse(u), u) == id2);
    for (const auto& v : b2)
      for (const auto& w : b2)
        CHECK(compose(compose(u, v), w) == compose(u, compose(v, w)));
  }

  std::mt19937_64 rng(13);
  const auto id8 = SignedPerm::identity(8);
  for (int k = 0; k < 10000; ++k) {
    const auto u = random_perm(8, rng);
    const auto v = random_perm(8, rng);
    const auto w = random_perm(8, rng);
    CHECK(compose(compose(u, v), w) == compose(u, compose(v, w)));
    if (k < 1000) {
      CHECK(compose(u, inverse(u)) == id8);
      CHECK(compose(inverse(u), u) == id8);
    }
  }
}

TEST_CASE("inverse against brute force on B_2") {
  const auto b2 = all_of_bn(2);
  const auto id2 = SignedPerm::identity(2);
  for (const auto& v : b2) {
    // independent oracle: scan for the (unique) right inverse
    int found = 0;
    SignedPerm inv = id2;
    for (const auto& w : b2)
      if (compose(v, w) == id2) {
        inv = w;
        ++found;
      }
    REQUIRE(found == 1);
    CHECK(inverse(v) == inv);
  }
  CHECK(inverse(sp({-2, 1})) == sp({2, -1}));
  CHECK(inverse(SignedPerm::identity(4)) == SignedPerm::identity(4));
}

TEST_CASE("reversals are involutions, exhaustively at n = 5") {
  const auto id5 = SignedPerm::identity(5);
  for (int i = 1; i <= 5; ++i)
    for (int j = i; j <= 5; ++j) {
      const auto rho = reversal_as_perm(5, {i, j});
      CHECK(compose(rho, rho) == id5);
      CHECK(inverse(rho) == rho);
    }
}

TEST_CASE("reversal action on segments") {
  CHECK(apply_reversal(sp({1, 4, 2, 5, 3}), {3, 5}) == sp({1, 4, -3, -5, -2}));
  CHECK(apply_reversal(sp({5, 2, -1, 3, -4}), {2, 2}) == sp({5, -2, -1, 3, -4}));
  CHECK(apply_reversal(sp({5, 2, -1, 3, -4}), {2, 3}) == sp({5, 1, -2, 3, -4}));
  CHECK_THROWS_AS(apply_reversal(sp({1, 2}), {1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(apply_reversal(sp({1, 2}), {2, 1}), std::invalid_argument);
}

TEST_CASE("reversal action equals right multiplication, all of B_4") {
  for (const auto& v : all_of_bn(4))
    for (int i = 1; i <= 4; ++i)
      for (int j = i; j <= 4; ++j)
        CHECK(apply_reversal(v, {i, j}) ==
              compose(v, reversal_as_perm(4, {i, j})));
}

TEST_CASE("sign-change transpositions") {
  CHECK(apply_transposition(sp({1, 2, 3}), {1, 3}) == sp({-3, 2, -1}));
  CHECK(apply_transposition(sp({1, 2}), {1, 1}) == sp({-1, 2}));
  // involution over all of B_3, all pairs
  for (const auto& v : all_of_bn(3))
    for (int i = 1; i <= 3; ++i)
      for (int j = i; j <= 3; ++j) {
        const auto once = apply_transposition(v, {i, j});
        CHECK(apply_transposition(once, {i, j}) == v);
        CHECK(once == compose(v, transposition_as_perm(3, {i, j})));
      }
}

TEST_CASE("generator sets have degree C(n+1,2)") {
  for (int n = 1; n <= 12; ++n) {
    const auto expected = binom2(static_cast<std::uint64_t>(n) + 1);
    CHECK(GeneratorSet{GeneratorKind::Reversals, n}.count() == expected);
    CHECK(GeneratorSet{GeneratorKind::SignChangeTranspositions, n}.count() ==
          expected);
    CHECK(GeneratorSet{GeneratorKind::SignChangeTranspositionsNoFlip, n}
              .count() == binom2(static_cast<std::uint64_t>(n)));
  }

  const auto revs5 = generators({GeneratorKind::Reversals, 5});
  CHECK(revs5.size() == 15);
  const auto tr4 = generators({GeneratorKind::SignChangeTranspositions, 4});
  CHECK(tr4.size() == 10);
  const auto id1 = generators({GeneratorKind::Reversals, 1});
  REQUIRE(id1.size() == 1);
  CHECK(id1[0] == sp({-1}));

  for (const auto& gens : {revs5, tr4}) {
    std::set<std::vector<int>> distinct;
    for (const auto& g : gens) {
      CHECK(!(g == SignedPerm::identity(g.n())));
      CHECK(compose(g, g) == SignedPerm::identity(g.n()));
      distinct.insert(g.entries());
    }
    CHECK(distinct.size() == gens.size());
  }
}

TEST_CASE("rank and unrank are mutually inverse") {
  CHECK(rank_of(SignedPerm::identity(6)) == 0);
  for (std::uint64_t r = 0; r < group_order(3); ++r)
    CHECK(rank_of(unrank(3, r)) == r);

  std::set<std::uint64_t> seen;
  for (const auto& v : all_of_bn(2)) seen.insert(rank_of(v));
  CHECK(seen.size() == 8);
  CHECK(*seen.begin() == 0);
  CHECK(*seen.rbegin() == 7);

  // round trip on B_4 exhaustively
  for (std::uint64_t r = 0; r < group_order(4); ++r)
    CHECK(rank_of(unrank(4, r)) == r);

  CHECK_THROWS_AS(unrank(3, group_order(3)), std::invalid_argument);
  CHECK_THROWS_AS(group_order(17), infeasible_error);
}

TEST_CASE("lexicographic order is a strict total order") {
  const auto v = sp({2, -1, 3});
  CHECK(lex_compare(v, v) == 0);
  CHECK_THROWS_AS(lex_compare(v, SignedPerm::identity(2)),
                  std::invalid_argument);

  auto b2 = all_of_bn(2);
  std::sort(b2.begin(), b2.end(), lex_less);
  for (std::size_t k = 1; k < b2.size(); ++k)
    CHECK(lex_compare(b2[k - 1], b2[k]) < 0);

  // -1 < +1 < -2 < +2 entrywise
  CHECK(lex_less(sp({-1, 2}), sp({1, 2})));
  CHECK(lex_less(sp({1, 2}), sp({-2, 1})));
  CHECK(lex_less(sp({-2, 1}), sp({2, 1})));

  // the minimum over B_3 is the same whichever way we enumerate
  const auto b3 = all_of_bn(3);
  auto min_fwd = b3.front();
  for (const auto& x : b3)
    if (lex_less(x, min_fwd)) min_fwd = x;
  auto min_bwd = b3.back();
  for (auto it = b3.rbegin(); it != b3.rend(); ++it)
    if (lex_less(*it, min_bwd)) min_bwd = *it;
  CHECK(min_fwd == min_bwd);
  CHECK(min_fwd == sp({-1, -2, -3}));
}

TEST_CASE("text round trip") {
  CHECK(to_string(sp({1, -3, 2})) == "(+1,-3,+2)");
  CHECK(parse_signed_perm("(+1,-3,+2)") == sp({1, -3, 2}));
  CHECK(parse_signed_perm(" ( +1 , -3 , +2 ) ") == sp({1, -3, 2}));
  CHECK(parse_signed_perm("(1,2)") == sp({1, 2}));
  for (const auto& v : all_of_bn(3))
    CHECK(parse_signed_perm(to_string(v)) == v);

  CHECK_THROWS_AS(parse_signed_perm("(+1,+1)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_signed_perm("(+1,+3)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_signed_perm("+1,+2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_signed_perm("(+1,+2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_signed_perm("(+1,+2)x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_signed_perm("()"), std::invalid_argument);
}

}  // TEST_SUITE
