#include "revgraph/cayley.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <unordered_set>

#include "dense.hpp"
#include "revgraph/errors.hpp"

namespace revgraph {

namespace {

void require_full_graph(int n, int limit) {
  if (n > limit)
    throw infeasible_error("full-graph operation refused for n = " +
                           std::to_string(n) + " (limit " +
                           std::to_string(limit) + ")");
}

}  // namespace

VertexSet VertexSet::of_perms(const std::vector<SignedPerm>& perms) {
  if (perms.empty()) throw std::invalid_argument("empty vertex list");
  VertexSet vs;
  vs.n = perms.front().n();
  vs.members.reserve(perms.size());
  for (const auto& p : perms) {
    if (p.n() != vs.n) throw std::invalid_argument("mixed lengths in vertex set");
    vs.members.push_back(rank_of(p));
  }
  std::sort(vs.members.begin(), vs.members.end());
  vs.members.erase(std::unique(vs.members.begin(), vs.members.end()),
                   vs.members.end());
  return vs;
}

bool VertexSet::contains(std::uint64_t r) const {
  return std::binary_search(members.begin(), members.end(), r);
}

std::vector<SignedPerm> neighbors(const SignedPerm& v, const GeneratorSet& gens) {
  if (gens.n != v.n())
    throw std::invalid_argument("generator set length mismatch");
  std::vector<SignedPerm> out;
  out.reserve(gens.count());
  const auto ops = detail::generator_ops(gens);
  std::int8_t buf[detail::kBufCap];
  std::int8_t nb[detail::kBufCap];
  if (v.n() <= detail::kBufCap) {
    detail::to_buf(v, buf);
    for (const auto& op : ops) {
      std::memcpy(nb, buf, static_cast<std::size_t>(v.n()));
      op.apply(nb);
      out.push_back(detail::from_buf(nb, v.n()));
    }
  } else {
    for (const auto& op : ops) {
      out.push_back(op.is_transposition
                        ? apply_transposition(v, {op.i, op.j})
                        : apply_reversal(v, {op.i, op.j}));
    }
  }
  return out;
}

std::optional<int> bfs_distance(const SignedPerm& v, const SignedPerm& w,
                                const GeneratorSet& gens, int max_depth,
                                const CayleyLimits& limits) {
  if (v.n() != w.n())
    throw std::invalid_argument("bfs_distance: mismatched lengths");
  if (max_depth < 0) throw std::invalid_argument("max_depth must be >= 0");
  require_full_graph(v.n(), limits.distance_max_n);
  const std::uint64_t target = rank_of(w);
  std::uint64_t source = rank_of(v);
  if (source == target) return 0;

  const detail::PermCodec codec(v.n());
  const auto ops = detail::generator_ops(gens);
  std::unordered_set<std::uint64_t> visited{source};
  std::vector<std::uint64_t> frontier{source};
  std::int8_t buf[detail::kBufCap];
  std::int8_t nb[detail::kBufCap];
  for (int depth = 1; depth <= max_depth; ++depth) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t r : frontier) {
      codec.unrank(r, buf);
      for (const auto& op : ops) {
        std::memcpy(nb, buf, static_cast<std::size_t>(v.n()));
        op.apply(nb);
        const std::uint64_t s = codec.rank(nb);
        if (s == target) return depth;
        if (visited.insert(s).second) next.push_back(s);
      }
    }
    if (next.empty()) break;
    frontier = std::move(next);
  }
  return std::nullopt;
}

std::vector<int> bfs_all_distances(const GraphSpec& spec,
                                   const CayleyLimits& limits) {
  require_full_graph(spec.n, limits.full_graph_max_n);
  const detail::PermCodec codec(spec.n);
  const auto ops = detail::generator_ops({spec.gens.kind, spec.n});
  const auto order = codec.order;
  std::vector<int> dist(order, -1);
  std::vector<std::uint64_t> frontier;
  const std::uint64_t source = 0;  // identity
  dist[source] = 0;
  frontier.push_back(source);
  std::int8_t buf[detail::kBufCap];
  std::int8_t nb[detail::kBufCap];
  int depth = 0;
  while (!frontier.empty()) {
    ++depth;
    std::vector<std::uint64_t> next;
    for (std::uint64_t r : frontier) {
      codec.unrank(r, buf);
      for (const auto& op : ops) {
        std::memcpy(nb, buf, static_cast<std::size_t>(spec.n));
        op.apply(nb);
        const std::uint64_t s = codec.rank(nb);
        if (dist[s] < 0) {
          dist[s] = depth;
          next.push_back(s);
        }
      }
    }
    frontier = std::move(next);
  }
  return dist;
}

int diameter(const GraphSpec& spec, const CayleyLimits& limits) {
  const auto dist = bfs_all_distances(spec, limits);
  int ecc = 0;
  for (int d : dist) {
    if (d < 0)
      throw std::runtime_error("graph unexpectedly disconnected at n = " +
                               std::to_string(spec.n));
    ecc = std::max(ecc, d);
  }
  return ecc;
}

VertexSet ball(const VertexSet& a, int radius, const GeneratorSet& gens) {
  if (radius < 0) throw std::invalid_argument("radius must be >= 0");
  if (gens.n != a.n) throw std::invalid_argument("generator set length mismatch");
  const detail::PermCodec codec(a.n);
  const auto ops = detail::generator_ops(gens);
  std::unordered_set<std::uint64_t> seen(a.members.begin(), a.members.end());
  std::vector<std::uint64_t> frontier(a.members.begin(), a.members.end());
  std::int8_t buf[detail::kBufCap];
  std::int8_t nb[detail::kBufCap];
  for (int step = 0; step < radius && !frontier.empty(); ++step) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t r : frontier) {
      codec.unrank(r, buf);
      for (const auto& op : ops) {
        std::memcpy(nb, buf, static_cast<std::size_t>(a.n));
        op.apply(nb);
        const std::uint64_t s = codec.rank(nb);
        if (seen.insert(s).second) next.push_back(s);
      }
    }
    frontier = std::move(next);
  }
  VertexSet out;
  out.n = a.n;
  out.members.assign(seen.begin(), seen.end());
  std::sort(out.members.begin(), out.members.end());
  return out;
}

VertexSet vertex_boundary(const VertexSet& a, const GeneratorSet& gens) {
  if (a.members.empty()) throw std::invalid_argument("boundary of empty set");
  if (gens.n != a.n) throw std::invalid_argument("generator set length mismatch");
  const detail::PermCodec codec(a.n);
  const auto ops = detail::generator_ops(gens);
  std::unordered_set<std::uint64_t> inside(a.members.begin(), a.members.end());
  std::unordered_set<std::uint64_t> boundary;
  std::int8_t buf[detail::kBufCap];
  std::int8_t nb[detail::kBufCap];
  for (std::uint64_t r : a.members) {
    codec.unrank(r, buf);
    for (const auto& op : ops) {
      std::memcpy(nb, buf, static_cast<std::size_t>(a.n));
      op.apply(nb);
      const std::uint64_t s = codec.rank(nb);
      if (!inside.count(s)) boundary.insert(s);
    }
  }
  VertexSet out;
  out.n = a.n;
  out.members.assign(boundary.begin(), boundary.end());
  std::sort(out.members.begin(), out.members.end());
  return out;
}

bool is_dense(const VertexSet& e, const GeneratorSet& gens,
              const CayleyLimits& limits) {
  if (gens.n != e.n) throw std::invalid_argument("generator set length mismatch");
  require_full_graph(e.n, limits.full_graph_max_n);
  const detail::PermCodec codec(e.n);
  const auto order = codec.order;
  if (e.members.empty()) return false;
  const auto ops = detail::generator_ops(gens);
  std::vector<char> covered(order, 0);
  std::int8_t buf[detail::kBufCap];
  std::int8_t nb[detail::kBufCap];
  for (std::uint64_t r : e.members) {
    covered[r] = 1;
    codec.unrank(r, buf);
    for (const auto& op : ops) {
      std::memcpy(nb, buf, static_cast<std::size_t>(e.n));
      op.apply(nb);
      covered[codec.rank(nb)] = 1;
    }
  }
  for (std::uint64_t r = 0; r < order; ++r)
    if (!covered[r]) return false;
  return true;
}

BoundaryBoundReport check_boundary_bound(const VertexSet& a,
                                         const GeneratorSet& gens) {
  const std::uint64_t order = group_order(a.n);
  BoundaryBoundReport rep;
  if (a.members.size() == order) {
    // Full set: boundary empty, bound zero.
    rep.boundary_size = 0;
    rep.lhs = 0.0;
    rep.rhs = 0.0;
    rep.holds = true;
    return rep;
  }
  const VertexSet b = vertex_boundary(a, gens);
  rep.boundary_size = b.size();
  rep.lhs = static_cast<double>(rep.boundary_size);
  const double sz = static_cast<double>(a.size());
  rep.rhs = sz * (1.0 - sz / static_cast<double>(order)) /
            static_cast<double>(a.n + 1);
  rep.holds = rep.lhs >= rep.rhs;
  return rep;
}

}  // namespace revgraph
