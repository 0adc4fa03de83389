#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gfg/digraph.hpp"
#include "gfg/errors.hpp"
#include "gfg/primes.hpp"

namespace gfg {

struct Adjacent {
  Vertex vertex = 0;
  unsigned weight = 0;
};

struct WeightedArc {
  std::uint64_t source = 0;
  std::uint64_t target = 0;
  unsigned weight = 0;

  friend bool operator==(const WeightedArc&, const WeightedArc&) = default;
};

/// Goldbach factorization graph F_n, or a vertex-induced subgraph of one.
///
/// Vertices are primes p in [2, n-2] addressed by dense indices in ascending
/// prime order. There is an arc s -> t exactly when s divides n - t, weighted
/// by the largest e with s^e | n - t. Loops (s | n) are ordinary arcs.
class FactorizationGraph {
 public:
  std::uint64_t n() const { return n_; }
  std::size_t size() const { return primes_.size(); }
  // Arcs between distinct vertices; loops are counted by loop_count().
  std::size_t arc_count() const { return arc_count_ - loop_count_; }
  std::size_t loop_count() const { return loop_count_; }
  // False for subgraphs produced by induced().
  bool is_complete() const { return complete_; }

  std::uint64_t prime(Vertex v) const { return primes_[v]; }
  const std::vector<std::uint64_t>& primes() const { return primes_; }

  std::optional<Vertex> index_of(std::uint64_t p) const {
    auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
    if (it == primes_.end() || *it != p) return std::nullopt;
    return static_cast<Vertex>(it - primes_.begin());
  }

  Vertex require_index(std::uint64_t p) const {
    auto v = index_of(p);
    if (!v) {
      throw DomainError(std::to_string(p) + " is not a vertex of F_" + std::to_string(n_));
    }
    return *v;
  }

  std::span<const Adjacent> successors(Vertex v) const { return succs_[v]; }
  std::span<const Adjacent> predecessors(Vertex v) const { return preds_[v]; }

  std::optional<unsigned> weight(std::uint64_t s, std::uint64_t t) const {
    auto a = index_of(s), b = index_of(t);
    if (!a || !b) return std::nullopt;
    for (const auto& adj : preds_[*b]) {
      if (adj.vertex == *a) return adj.weight;
    }
    return std::nullopt;
  }

  bool has_arc(std::uint64_t s, std::uint64_t t) const { return weight(s, t).has_value(); }

  /// All arcs, loops included, as prime pairs ordered by (source, target).
  std::vector<WeightedArc> arcs() const {
    std::vector<WeightedArc> out;
    out.reserve(arc_count_);
    for (Vertex s = 0; s < size(); ++s) {
      for (const auto& adj : succs_[s]) out.push_back({primes_[s], primes_[adj.vertex], adj.weight});
    }
    return out;
  }

  Digraph digraph() const {
    Digraph g(primes_);
    for (Vertex s = 0; s < size(); ++s) {
      for (const auto& adj : succs_[s]) g.add_arc(s, adj.vertex);
    }
    return g;
  }

  FactorizationGraph induced(std::span<const Vertex> keep) const {
    std::vector<Vertex> sorted(keep.begin(), keep.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<Vertex> remap(size(), static_cast<Vertex>(-1));
    FactorizationGraph g;
    g.n_ = n_;
    g.complete_ = false;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      remap[sorted[i]] = static_cast<Vertex>(i);
      g.primes_.push_back(primes_[sorted[i]]);
    }
    g.preds_.resize(sorted.size());
    g.succs_.resize(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      for (const auto& adj : preds_[sorted[i]]) {
        const Vertex s = remap[adj.vertex];
        if (s == static_cast<Vertex>(-1)) continue;
        g.preds_[i].push_back({s, adj.weight});
        g.succs_[s].push_back({static_cast<Vertex>(i), adj.weight});
        ++g.arc_count_;
        if (s == i) ++g.loop_count_;
      }
    }
    for (auto& list : g.succs_) sort_adjacent(list);
    return g;
  }

  friend FactorizationGraph build_gfg(std::uint64_t n, const SpfTable& table);

 private:
  static void sort_adjacent(std::vector<Adjacent>& list) {
    std::sort(list.begin(), list.end(),
              [](const Adjacent& a, const Adjacent& b) { return a.vertex < b.vertex; });
  }

  std::uint64_t n_ = 0;
  bool complete_ = true;
  std::vector<std::uint64_t> primes_;
  std::vector<std::vector<Adjacent>> preds_;
  std::vector<std::vector<Adjacent>> succs_;
  std::size_t arc_count_ = 0;  // loops included
  std::size_t loop_count_ = 0;
};

inline void require_goldbach_n(std::uint64_t n) {
  if (n < 4 || n % 2 != 0) {
    throw DomainError("n must be an even integer >= 4, got " + std::to_string(n));
  }
}

/// Builds F_n. Predecessor lists come straight from factorizing n - t;
/// successor lists are derived from them.
inline FactorizationGraph build_gfg(std::uint64_t n, const SpfTable& table) {
  require_goldbach_n(n);
  if (table.limit() < n - 2) {
    throw RangeError("SPF table limit " + std::to_string(table.limit()) +
                     " does not cover n - 2 = " + std::to_string(n - 2));
  }
  FactorizationGraph g;
  g.n_ = n;
  for (std::uint64_t p = 2; p <= n - 2; ++p) {
    if (table.spf_unchecked(p) == p) g.primes_.push_back(p);
  }
  g.preds_.resize(g.size());
  g.succs_.resize(g.size());
  for (Vertex t = 0; t < g.size(); ++t) {
    const Factorization f = factorize(n - g.primes_[t], table);
    for (const auto& [base, exponent] : f.factors) {
      const Vertex s = *g.index_of(base);
      g.preds_[t].push_back({s, exponent});
      g.succs_[s].push_back({t, exponent});
      ++g.arc_count_;
      if (s == t) ++g.loop_count_;
    }
  }
  for (auto& list : g.preds_) FactorizationGraph::sort_adjacent(list);
  return g;
}

/// Unordered prime pairs {p, q}, p <= q, with p + q = n and both vertices.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> goldbach_partitions(
    const FactorizationGraph& g) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t p : g.primes()) {
    const std::uint64_t q = g.n() - p;
    if (q < p) break;
    if (g.index_of(q)) out.emplace_back(p, q);
  }
  return out;
}

inline bool has_loop(const FactorizationGraph& g, std::uint64_t v) {
  g.require_index(v);
  return g.n() % v == 0;
}

/// Subgraph induced by every vertex that reaches p (p included).
inline FactorizationGraph reverse_reachable_subgraph(const FactorizationGraph& g,
                                                     std::uint64_t p) {
  const Vertex start = g.require_index(p);
  std::vector<char> seen(g.size(), 0);
  std::vector<Vertex> stack{start}, found;
  seen[start] = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    found.push_back(v);
    for (const auto& adj : g.predecessors(v)) {
      if (!seen[adj.vertex]) {
        seen[adj.vertex] = 1;
        stack.push_back(adj.vertex);
      }
    }
  }
  return g.induced(found);
}

/// Number of weakly connected components.
inline std::size_t weak_component_count(const FactorizationGraph& g) {
  std::vector<Vertex> parent(g.size());
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto find = [&](Vertex x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::size_t count = g.size();
  for (Vertex s = 0; s < g.size(); ++s) {
    for (const auto& adj : g.successors(s)) {
      const Vertex a = find(s), b = find(adj.vertex);
      if (a != b) {
        parent[a] = b;
        --count;
      }
    }
  }
  return count;
}

}  // namespace gfg
