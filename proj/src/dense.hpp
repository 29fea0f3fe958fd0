#pragma once

// Internal allocation-free rank/unrank and generator application over int8
// buffers. Used by the sampling/BFS kernels; the public API stays on
// SignedPerm.

#include <cstdint>
#include <cstring>
#include <vector>

#include "revgraph/errors.hpp"
#include "revgraph/signed_perm.hpp"

namespace revgraph::detail {

inline constexpr int kBufCap = 16;  // == kMaxRankN

struct PermCodec {
  int n = 0;
  std::uint64_t fact[kBufCap + 1];
  std::uint64_t order = 0;

  explicit PermCodec(int n_) : n(n_) {
    fact[0] = 1;
    for (int i = 1; i <= kBufCap; ++i) fact[i] = fact[i - 1] * i;
    order = group_order(n);
  }

  void unrank(std::uint64_t r, std::int8_t* out) const {
    const std::uint32_t signbits =
        static_cast<std::uint32_t>(r & ((1ULL << n) - 1));
    std::uint64_t lehmer = r >> n;
    std::int8_t avail[kBufCap];
    for (int i = 0; i < n; ++i) avail[i] = static_cast<std::int8_t>(i + 1);
    int len = n;
    for (int i = 0; i < n; ++i) {
      const std::uint64_t f = fact[n - 1 - i];
      const int idx = static_cast<int>(lehmer / f);
      lehmer %= f;
      out[i] = avail[idx];
      std::memmove(avail + idx, avail + idx + 1,
                   static_cast<std::size_t>(len - idx - 1));
      --len;
    }
    for (int i = 0; i < n; ++i)
      if (signbits & (1u << i)) out[i] = static_cast<std::int8_t>(-out[i]);
  }

  std::uint64_t rank(const std::int8_t* v) const {
    std::uint64_t lehmer = 0;
    std::uint32_t signbits = 0;
    for (int i = 0; i < n; ++i) {
      const int ai = v[i] < 0 ? -v[i] : v[i];
      int smaller_after = 0;
      for (int j = i + 1; j < n; ++j) {
        const int aj = v[j] < 0 ? -v[j] : v[j];
        smaller_after += aj < ai;
      }
      lehmer += static_cast<std::uint64_t>(smaller_after) * fact[n - 1 - i];
      if (v[i] < 0) signbits |= 1u << i;
    }
    return (lehmer << n) | signbits;
  }
};

// Generator as a direct buffer action; i, j are 1-based.
struct GenOp {
  std::uint8_t is_transposition = 0;
  std::int8_t i = 1;
  std::int8_t j = 1;

  void apply(std::int8_t* v) const {
    if (is_transposition) {
      const std::int8_t a = v[i - 1];
      v[i - 1] = static_cast<std::int8_t>(-v[j - 1]);
      v[j - 1] = static_cast<std::int8_t>(-a);
      return;
    }
    int lo = i - 1, hi = j - 1;
    while (lo < hi) {
      const std::int8_t a = v[lo];
      v[lo] = static_cast<std::int8_t>(-v[hi]);
      v[hi] = static_cast<std::int8_t>(-a);
      ++lo;
      --hi;
    }
    if (lo == hi) v[lo] = static_cast<std::int8_t>(-v[lo]);
  }
};

inline std::vector<GenOp> generator_ops(const GeneratorSet& gs) {
  std::vector<GenOp> ops;
  ops.reserve(gs.count());
  const bool transp = gs.kind != GeneratorKind::Reversals;
  const bool skip_diagonal =
      gs.kind == GeneratorKind::SignChangeTranspositionsNoFlip;
  for (int i = 1; i <= gs.n; ++i)
    for (int j = i; j <= gs.n; ++j) {
      if (skip_diagonal && i == j) continue;
      ops.push_back({static_cast<std::uint8_t>(transp ? 1 : 0),
                     static_cast<std::int8_t>(i), static_cast<std::int8_t>(j)});
    }
  return ops;
}

inline void to_buf(const SignedPerm& v, std::int8_t* out) {
  for (int i = 0; i < v.n(); ++i)
    out[i] = static_cast<std::int8_t>(v.entries()[i]);
}

inline SignedPerm from_buf(const std::int8_t* v, int n) {
  std::vector<int> e(n);
  for (int i = 0; i < n; ++i) e[i] = v[i];
  return SignedPerm(std::move(e));
}

}  // namespace revgraph::detail
