#pragma once

#include <cstdint>

namespace revgraph {

// SplitMix64 finalizer. All randomness that must be reproducible across
// worker counts and across the explicit/lazy samplers is derived from this
// one avalanche function, never from shared-state generators.
inline uint64_t mix64(uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Per-trial / per-cell seed derivation: mixing is position-dependent, so
// parallel schedules cannot change which stream a trial sees.
inline uint64_t derive_seed(uint64_t master, uint64_t a, uint64_t b = 0) {
  uint64_t h = mix64(master ^ 0xa0761d6478bd642fULL);
  h = mix64(h ^ (a * 0x9e3779b97f4a7c15ULL));
  h = mix64(h ^ (b * 0xd1b54a32d192ed03ULL));
  return h;
}

// Hash of one undirected edge, keyed by the canonical identifier
// (lo, hi) = (min rank, max rank).
inline uint64_t edge_hash(uint64_t seed, uint64_t lo, uint64_t hi) {
  uint64_t h = mix64(seed ^ 0x8cb92ba72f3d8dd7ULL);
  h = mix64(h ^ (lo * 0x9e3779b97f4a7c15ULL));
  h = mix64(h ^ (hi * 0xd1b54a32d192ed03ULL));
  return h;
}

// Top 53 bits -> [0,1). Strictly below 1, so lambda = 1 keeps every edge.
inline double to_unit(uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// The shared edge law: one uniform per edge slot. Monotone in lambda for a
// fixed seed, which is what gives the subset-coupling property.
inline bool edge_present(uint64_t seed, uint64_t lo, uint64_t hi, double lambda) {
  return to_unit(edge_hash(seed, lo, hi)) < lambda;
}

}  // namespace revgraph
