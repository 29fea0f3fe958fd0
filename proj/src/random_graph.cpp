#include "revgraph/random_graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <deque>
#include <fstream>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "dense.hpp"
#include "revgraph/errors.hpp"
#include "revgraph/rng.hpp"

namespace revgraph {

namespace {

void validate_config(const SampleConfig& config) {
  if (config.n < 1) throw std::invalid_argument("n must be >= 1");
  if (!(config.lambda >= 0.0 && config.lambda <= 1.0))
    throw std::invalid_argument("lambda must lie in [0,1]");
  if (config.n > config.explicit_max_n)
    throw infeasible_error(
        "explicit sampling refused for n = " + std::to_string(config.n) +
        " (limit " + std::to_string(config.explicit_max_n) +
        "; raise explicit_max_n only with the memory to match)");
}

using EdgeVec = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

// Enumerates the slots of one rank block and keeps present edges. Each
// undirected edge has exactly one valid slot: the one seen from its smaller
// endpoint (generators are involutions, so it appears from both ends).
void sample_block(const detail::PermCodec& codec,
                  const std::vector<detail::GenOp>& ops, std::uint64_t lo_rank,
                  std::uint64_t hi_rank, std::uint64_t seed, double lambda,
                  EdgeVec& out) {
  std::int8_t buf[detail::kBufCap];
  std::int8_t nb[detail::kBufCap];
  const auto n = static_cast<std::size_t>(codec.n);
  for (std::uint64_t r = lo_rank; r < hi_rank; ++r) {
    codec.unrank(r, buf);
    for (const auto& op : ops) {
      std::memcpy(nb, buf, n);
      op.apply(nb);
      const std::uint64_t s = codec.rank(nb);
      if (s > r && edge_present(seed, r, s, lambda)) out.emplace_back(r, s);
    }
  }
}

SampledSubgraph sample_hash_parallel(const SampleConfig& config) {
  const detail::PermCodec codec(config.n);
  const auto ops = detail::generator_ops({config.gens, config.n});
  const std::uint64_t order = codec.order;
  // Fixed block partition: output is a function of the config alone, never
  // of the worker count.
  const std::uint64_t nblocks = std::min<std::uint64_t>(order, 512);
  std::vector<EdgeVec> per_block(nblocks);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b) {
    const std::uint64_t lo = order * static_cast<std::uint64_t>(b) / nblocks;
    const std::uint64_t hi =
        order * (static_cast<std::uint64_t>(b) + 1) / nblocks;
    sample_block(codec, ops, lo, hi, config.seed, config.lambda,
                 per_block[static_cast<std::size_t>(b)]);
  }
  SampledSubgraph g{config, {}};
  std::size_t total = 0;
  for (const auto& v : per_block) total += v.size();
  g.edges.reserve(total);
  for (auto& v : per_block) {
    g.edges.insert(g.edges.end(), v.begin(), v.end());
    EdgeVec().swap(v);
  }
  return g;
}

SampledSubgraph sample_hash_serial(const SampleConfig& config) {
  const detail::PermCodec codec(config.n);
  const auto ops = detail::generator_ops({config.gens, config.n});
  SampledSubgraph g{config, {}};
  sample_block(codec, ops, 0, codec.order, config.seed, config.lambda,
               g.edges);
  return g;
}

// Geometric gap skipping over the flat slot index r * degree + gen. Slots
// whose neighbor rank is below r are discarded after selection, which leaves
// every valid slot Bernoulli(lambda) as required.
SampledSubgraph sample_geometric_skip(const SampleConfig& config) {
  const detail::PermCodec codec(config.n);
  const auto ops = detail::generator_ops({config.gens, config.n});
  const std::uint64_t degree = ops.size();
  const std::uint64_t total = codec.order * degree;
  SampledSubgraph g{config, {}};
  if (config.lambda == 0.0) return g;

  std::int8_t buf[detail::kBufCap];
  std::int8_t nb[detail::kBufCap];
  const auto n = static_cast<std::size_t>(codec.n);
  const auto probe = [&](std::uint64_t slot) {
    const std::uint64_t r = slot / degree;
    const auto gi = static_cast<std::size_t>(slot % degree);
    codec.unrank(r, buf);
    std::memcpy(nb, buf, n);
    ops[gi].apply(nb);
    const std::uint64_t s = codec.rank(nb);
    if (s > r) g.edges.emplace_back(r, s);
  };

  if (config.lambda == 1.0) {
    for (std::uint64_t slot = 0; slot < total; ++slot) probe(slot);
    return g;
  }

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double denom = std::log1p(-config.lambda);
  std::uint64_t slot = 0;
  bool first = true;
  while (true) {
    const double u = 1.0 - unit(rng);  // (0,1]
    const double gap = std::floor(std::log(u) / denom);
    if (gap >= static_cast<double>(total)) break;
    slot += static_cast<std::uint64_t>(gap) + (first ? 0 : 1);
    first = false;
    if (slot >= total) break;
    probe(slot);
  }
  return g;
}

struct DisjointSets {
  std::vector<std::uint32_t> parent;
  std::vector<std::uint32_t> size;

  explicit DisjointSets(std::uint64_t count)
      : parent(count), size(count, 1) {
    for (std::uint64_t i = 0; i < count; ++i)
      parent[i] = static_cast<std::uint32_t>(i);
  }

  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];  // path halving
      x = parent[x];
    }
    return x;
  }

  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
  }
};

}  // namespace

SampleConfig SampleConfig::from_lambda(int n, double lambda,
                                       GeneratorKind gens,
                                       std::uint64_t seed) {
  SampleConfig c;
  c.n = n;
  c.lambda = lambda;
  c.gens = gens;
  c.seed = seed;
  c.c = lambda * static_cast<double>(GeneratorSet{gens, n}.count());
  return c;
}

SampleConfig SampleConfig::from_c(int n, double cval, GeneratorKind gens,
                                  std::uint64_t seed) {
  SampleConfig c;
  c.n = n;
  c.c = cval;
  c.gens = gens;
  c.seed = seed;
  c.lambda = cval / static_cast<double>(GeneratorSet{gens, n}.count());
  return c;
}

SampledSubgraph sample_subgraph_explicit(const SampleConfig& config) {
  validate_config(config);
  if (config.sampler == SamplerKind::GeometricSkip)
    return sample_geometric_skip(config);
  return sample_hash_parallel(config);
}

SampledSubgraph sample_subgraph_explicit_serial(const SampleConfig& config) {
  validate_config(config);
  if (config.sampler == SamplerKind::GeometricSkip)
    return sample_geometric_skip(config);
  return sample_hash_serial(config);
}

ComponentStats components(const SampledSubgraph& g) {
  const std::uint64_t order = group_order(g.config.n);
  if (order > UINT32_MAX)
    throw infeasible_error("component pass needs ranks below 2^32");
  DisjointSets ds(order);
  for (const auto& [a, b] : g.edges) {
    if (a >= order || b >= order)
      throw std::invalid_argument("edge endpoint outside rank space");
    ds.unite(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
  }
  ComponentStats stats;
  stats.vertex_count = order;
  for (std::uint64_t i = 0; i < order; ++i)
    if (ds.parent[i] == i) stats.sizes.push_back(ds.size[i]);
  std::sort(stats.sizes.begin(), stats.sizes.end(),
            std::greater<std::uint64_t>());
  stats.component_count = stats.sizes.size();
  stats.largest = stats.sizes.empty() ? 0 : stats.sizes.front();
  stats.second = stats.sizes.size() > 1 ? stats.sizes[1] : 0;
  return stats;
}

ExplorationResult explore_component_lazy(int n, double lambda,
                                         const SignedPerm& start,
                                         std::uint64_t cutoff,
                                         GeneratorKind gens,
                                         std::uint64_t seed,
                                         std::uint64_t max_probes) {
  if (cutoff < 1) throw std::invalid_argument("cutoff must be >= 1");
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("lambda must lie in [0,1]");
  if (start.n() != n) throw std::invalid_argument("start vertex length mismatch");
  const detail::PermCodec codec(n);
  const auto ops = detail::generator_ops({gens, n});

  ExplorationResult res;
  std::unordered_set<std::uint64_t> visited;
  std::deque<std::uint64_t> queue;
  const std::uint64_t start_rank = rank_of(start);
  visited.insert(start_rank);
  queue.push_back(start_rank);
  if (visited.size() >= cutoff) {
    res.component_size = visited.size();
    res.hit_cutoff = true;
    return res;
  }

  std::int8_t buf[detail::kBufCap];
  std::int8_t nb[detail::kBufCap];
  while (!queue.empty()) {
    const std::uint64_t r = queue.front();
    queue.pop_front();
    codec.unrank(r, buf);
    for (const auto& op : ops) {
      std::memcpy(nb, buf, static_cast<std::size_t>(n));
      op.apply(nb);
      const std::uint64_t s = codec.rank(nb);
      if (++res.edges_examined > max_probes)
        throw infeasible_error("lazy exploration exceeded its probe budget");
      const std::uint64_t lo = std::min(r, s);
      const std::uint64_t hi = std::max(r, s);
      if (!edge_present(seed, lo, hi, lambda)) continue;
      if (visited.insert(s).second) {
        queue.push_back(s);
        if (visited.size() >= cutoff) {
          res.component_size = visited.size();
          res.hit_cutoff = true;
          return res;
        }
      }
    }
  }
  res.component_size = visited.size();
  res.hit_cutoff = false;
  return res;
}

namespace {

GiantFractionEstimate estimate_impl(int n, double lambda, std::uint64_t cutoff,
                                    std::uint64_t trials, GeneratorKind gens,
                                    std::uint64_t master_seed, bool parallel) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const SignedPerm id = SignedPerm::identity(n);
  std::vector<std::uint8_t> hit(trials, 0);
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t) {
      const auto res = explore_component_lazy(
          n, lambda, id, cutoff, gens,
          derive_seed(master_seed, static_cast<std::uint64_t>(t)));
      hit[static_cast<std::size_t>(t)] = res.hit_cutoff ? 1 : 0;
    }
  } else {
    for (std::uint64_t t = 0; t < trials; ++t) {
      const auto res = explore_component_lazy(n, lambda, id, cutoff, gens,
                                              derive_seed(master_seed, t));
      hit[t] = res.hit_cutoff ? 1 : 0;
    }
  }
  GiantFractionEstimate est;
  est.trials = trials;
  for (auto h : hit) est.hits += h;
  est.mean = static_cast<double>(est.hits) / static_cast<double>(trials);
  est.std_error =
      std::sqrt(est.mean * (1.0 - est.mean) / static_cast<double>(trials));
  return est;
}

}  // namespace

GiantFractionEstimate estimate_giant_fraction(int n, double lambda,
                                              std::uint64_t cutoff,
                                              std::uint64_t trials,
                                              GeneratorKind gens,
                                              std::uint64_t master_seed) {
  return estimate_impl(n, lambda, cutoff, trials, gens, master_seed, true);
}

GiantFractionEstimate estimate_giant_fraction_serial(int n, double lambda,
                                                     std::uint64_t cutoff,
                                                     std::uint64_t trials,
                                                     GeneratorKind gens,
                                                     std::uint64_t master_seed) {
  return estimate_impl(n, lambda, cutoff, trials, gens, master_seed, false);
}

namespace {

constexpr char kSubgraphMagic[4] = {'R', 'R', 'G', 'S'};
constexpr std::uint32_t kSubgraphVersion = 1;

template <typename T>
void put(std::ofstream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void get(std::ifstream& is, T& v) {
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
}

}  // namespace

void save_subgraph(const SampledSubgraph& g, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw io_error("cannot open for writing: " + path);
  os.write(kSubgraphMagic, 4);
  put(os, kSubgraphVersion);
  put(os, static_cast<std::uint32_t>(g.config.n));
  put(os, static_cast<std::uint32_t>(g.config.gens));
  put(os, g.config.lambda);
  put(os, g.config.seed);
  put(os, static_cast<std::uint64_t>(g.edges.size()));
  for (const auto& [a, b] : g.edges) {
    put(os, a);
    put(os, b);
  }
  if (!os) throw io_error("write failed: " + path);
}

SampledSubgraph load_subgraph(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error("cannot open for reading: " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kSubgraphMagic, 4) != 0)
    throw io_error("not a subgraph file: " + path);
  std::uint32_t version = 0, n = 0, gens = 0;
  get(is, version);
  if (version != kSubgraphVersion)
    throw io_error("unsupported subgraph file version");
  get(is, n);
  get(is, gens);
  double lambda = 0.0;
  std::uint64_t seed = 0, count = 0;
  get(is, lambda);
  get(is, seed);
  get(is, count);
  SampledSubgraph g;
  g.config = SampleConfig::from_lambda(static_cast<int>(n), lambda,
                                       static_cast<GeneratorKind>(gens), seed);
  g.edges.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint64_t a = 0, b = 0;
    get(is, a);
    get(is, b);
    g.edges.emplace_back(a, b);
  }
  if (!is) throw io_error("truncated subgraph file: " + path);
  return g;
}

}  // namespace revgraph
