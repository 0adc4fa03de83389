#pragma once

// Exact Hamiltonian path/cycle enumeration and longest simple paths.
//
// All searches run on graphs of at most 64 vertices represented as bit
// masks; loops are ignored. Vertices are visited in ascending label order,
// so the first longest path found is the lexicographically smallest one.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gfg/components.hpp"
#include "gfg/digraph.hpp"
#include "gfg/errors.hpp"
#include "gfg/graph.hpp"

namespace gfg {

inline constexpr std::size_t kDefaultPathCap = 40;
inline constexpr std::size_t kMaxPathCap = 64;

enum class PathMode { HamiltonianPath, HamiltonianCycle, Longest };

struct PathProblem {
  Digraph graph;
  std::vector<std::uint64_t> weights;  // per vertex, empty means all 1
  PathMode mode = PathMode::Longest;
  std::optional<std::uint64_t> first;  // label of a pinned first vertex (Longest only)
  std::size_t cap = kDefaultPathCap;
  std::size_t witness_limit = 100;
};

struct PathResult {
  std::uint64_t length = 0;  // vertices on the path, or total weight when weighted
  std::vector<std::vector<std::uint64_t>> witnesses;  // vertex labels
  std::uint64_t count = 0;   // Hamiltonian modes: number of solutions
  bool optimality_proved = false;
};

namespace detail {

using Mask = std::uint64_t;

inline Mask bit(unsigned i) { return Mask{1} << i; }

template <typename F>
inline void for_each_bit(Mask m, F&& f) {
  while (m) {
    const unsigned i = static_cast<unsigned>(std::countr_zero(m));
    f(i);
    m &= m - 1;
  }
}

// Loop-free graph on <= 64 vertices, indices in ascending label order.
struct MaskGraph {
  std::vector<std::uint64_t> labels;
  std::vector<Mask> out, in;
  std::vector<std::uint64_t> weight;
  Mask all = 0;
  bool unit = true;

  std::size_t size() const { return labels.size(); }

  std::uint64_t weight_of(Mask m) const {
    if (unit) return static_cast<std::uint64_t>(std::popcount(m));
    std::uint64_t w = 0;
    for_each_bit(m, [&](unsigned i) { w += weight[i]; });
    return w;
  }

  // Vertices of `avail` reachable from v by paths inside `avail`.
  Mask reach(unsigned v, Mask avail) const {
    Mask seen = out[v] & avail, frontier = seen;
    while (frontier) {
      Mask next = 0;
      for_each_bit(frontier, [&](unsigned i) { next |= out[i]; });
      frontier = next & avail & ~seen;
      seen |= frontier;
    }
    return seen;
  }
};

inline MaskGraph to_mask_graph(const Digraph& g, const std::vector<std::uint64_t>& weights,
                               std::size_t cap) {
  const std::size_t limit = std::min(cap, kMaxPathCap);
  if (g.size() > limit) {
    throw ResourceError("path search on " + std::to_string(g.size()) +
                        " vertices exceeds the vertex cap of " + std::to_string(limit));
  }
  if (!weights.empty() && weights.size() != g.size()) {
    throw DomainError("vertex weight count does not match the vertex count");
  }
  std::vector<Vertex> order(g.size());
  std::iota(order.begin(), order.end(), Vertex{0});
  std::sort(order.begin(), order.end(),
            [&](Vertex a, Vertex b) { return g.label(a) < g.label(b); });
  std::vector<unsigned> pos(g.size());
  for (unsigned i = 0; i < order.size(); ++i) pos[order[i]] = i;

  MaskGraph m;
  m.labels.resize(g.size());
  m.out.assign(g.size(), 0);
  m.in.assign(g.size(), 0);
  m.weight.assign(g.size(), 1);
  for (unsigned i = 0; i < order.size(); ++i) {
    m.labels[i] = g.label(order[i]);
    if (!weights.empty()) {
      if (weights[order[i]] < 1) throw DomainError("vertex weights must be at least 1");
      m.weight[i] = weights[order[i]];
      if (m.weight[i] != 1) m.unit = false;
    }
    m.all |= bit(i);
  }
  for (Vertex s = 0; s < g.size(); ++s) {
    for (Vertex t : g.out(s)) {
      if (s == t) continue;
      m.out[pos[s]] |= bit(pos[t]);
      m.in[pos[t]] |= bit(pos[s]);
    }
  }
  return m;
}

class HamiltonianSearch {
 public:
  HamiltonianSearch(const MaskGraph& g, bool cycle, std::size_t witness_limit)
      : g_(g), cycle_(cycle), limit_(witness_limit) {}

  PathResult run() {
    PathResult r;
    r.optimality_proved = true;
    if (g_.size() == 0) return r;
    if (cycle_) {
      // Rotations identified by pinning the smallest vertex first.
      start_ = 0;
      path_.assign(1, 0);
      dfs(0, bit(0));
    } else {
      for (unsigned s = 0; s < g_.size(); ++s) {
        start_ = s;
        path_.assign(1, s);
        dfs(s, bit(s));
      }
    }
    r.count = count_;
    r.witnesses = std::move(witnesses_);
    r.length = r.count > 0 ? g_.size() : 0;
    return r;
  }

 private:
  void dfs(unsigned v, Mask visited) {
    const Mask rest = g_.all & ~visited;
    if (!rest) {
      if (!cycle_ || (g_.out[v] & bit(start_))) record();
      return;
    }
    const Mask next = g_.out[v] & rest;
    if (!next || !feasible(v, rest)) return;
    for_each_bit(next, [&](unsigned u) {
      path_.push_back(u);
      dfs(u, visited | bit(u));
      path_.pop_back();
    });
  }

  // Necessary conditions for completing the path from v through `rest`.
  bool feasible(unsigned v, Mask rest) const {
    unsigned dead_ends = 0;
    bool ok = true;
    const Mask closers = cycle_ ? bit(start_) : 0;
    for_each_bit(rest, [&](unsigned u) {
      if (!ok) return;
      if (!(g_.in[u] & (rest | bit(v)))) ok = false;
      if (!(g_.out[u] & (rest | closers))) {
        if (cycle_ || ++dead_ends > 1) ok = false;
      }
    });
    return ok && g_.reach(v, rest) == rest;
  }

  void record() {
    ++count_;
    if (witnesses_.size() < limit_) {
      std::vector<std::uint64_t> w;
      w.reserve(path_.size());
      for (unsigned i : path_) w.push_back(g_.labels[i]);
      witnesses_.push_back(std::move(w));
    }
  }

  const MaskGraph& g_;
  bool cycle_;
  std::size_t limit_;
  unsigned start_ = 0;
  std::vector<unsigned> path_;
  std::uint64_t count_ = 0;
  std::vector<std::vector<std::uint64_t>> witnesses_;
};

// Branch and bound: a branch is cut when its weight plus everything still
// reachable from its tip cannot beat the incumbent.
class LongestSearch {
 public:
  explicit LongestSearch(const MaskGraph& g) : g_(g), total_(g.weight_of(g.all)) {}

  PathResult run(std::optional<unsigned> pinned) {
    PathResult r;
    r.optimality_proved = true;
    if (g_.size() == 0) return r;
    for (unsigned s = 0; s < g_.size() && !done_; ++s) {
      if (pinned && s != *pinned) continue;
      if (g_.weight[s] + g_.weight_of(g_.reach(s, g_.all & ~bit(s))) <= best_) continue;
      path_.assign(1, s);
      dfs(s, bit(s), g_.weight[s]);
    }
    r.length = best_;
    std::vector<std::uint64_t> w;
    for (unsigned i : best_path_) w.push_back(g_.labels[i]);
    r.witnesses.push_back(std::move(w));
    return r;
  }

 private:
  void dfs(unsigned v, Mask visited, std::uint64_t weight) {
    if (weight > best_) {
      best_ = weight;
      best_path_ = path_;
      if (best_ == total_) done_ = true;
    }
    if (done_) return;
    const Mask avail = g_.all & ~visited;
    const Mask ahead = g_.reach(v, avail);
    if (weight + g_.weight_of(ahead) <= best_) return;
    for_each_bit(g_.out[v] & avail, [&](unsigned u) {
      if (done_) return;
      path_.push_back(u);
      dfs(u, visited | bit(u), weight + g_.weight[u]);
      path_.pop_back();
    });
  }

  const MaskGraph& g_;
  std::uint64_t total_;
  std::uint64_t best_ = 0;
  bool done_ = false;
  std::vector<unsigned> path_, best_path_;
};

}  // namespace detail

/// Counts directed Hamiltonian paths: distinct vertex sequences covering
/// every vertex with each consecutive pair an arc. A lone vertex counts once.
inline PathResult hamiltonian_paths(const PathProblem& problem) {
  if (problem.mode != PathMode::HamiltonianPath) {
    throw DomainError("hamiltonian_paths needs a HamiltonianPath problem");
  }
  const auto g = detail::to_mask_graph(problem.graph, {}, problem.cap);
  return detail::HamiltonianSearch(g, false, problem.witness_limit).run();
}

/// Counts directed Hamiltonian cycles up to rotation; each witness starts at
/// the smallest vertex. A cycle and its reverse are distinct.
inline PathResult hamiltonian_cycles(const PathProblem& problem) {
  if (problem.mode != PathMode::HamiltonianCycle) {
    throw DomainError("hamiltonian_cycles needs a HamiltonianCycle problem");
  }
  const auto g = detail::to_mask_graph(problem.graph, {}, problem.cap);
  return detail::HamiltonianSearch(g, true, problem.witness_limit).run();
}

/// Longest simple directed path, by total vertex weight, found exactly by
/// exhaustive branch and bound. Optionally pins the first vertex.
inline PathResult longest_path_general(const PathProblem& problem) {
  if (problem.mode != PathMode::Longest) {
    throw DomainError("longest_path_general needs a Longest problem");
  }
  const auto g = detail::to_mask_graph(problem.graph, problem.weights, problem.cap);
  std::optional<unsigned> pinned;
  if (problem.first) {
    auto it = std::find(g.labels.begin(), g.labels.end(), *problem.first);
    if (it == g.labels.end()) {
      throw DomainError("pinned vertex " + std::to_string(*problem.first) + " is not in the graph");
    }
    pinned = static_cast<unsigned>(it - g.labels.begin());
  }
  return detail::LongestSearch(g).run(pinned);
}

namespace detail {

// Kahn order; throws on a cycle. Loops count as cycles.
inline std::vector<Vertex> topological_order(const Digraph& dag) {
  std::vector<std::size_t> indegree(dag.size(), 0);
  for (Vertex v = 0; v < dag.size(); ++v) {
    for (Vertex t : dag.out(v)) ++indegree[t];
  }
  std::vector<Vertex> order;
  for (Vertex v = 0; v < dag.size(); ++v) {
    if (indegree[v] == 0) order.push_back(v);
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (Vertex t : dag.out(order[head])) {
      if (--indegree[t] == 0) order.push_back(t);
    }
  }
  if (order.size() != dag.size()) throw DomainError("graph has a cycle; expected a DAG");
  return order;
}

struct DagBest {
  static constexpr Vertex kNone = static_cast<Vertex>(-1);
  std::vector<std::uint64_t> best;  // 0: no admissible path ends here
  std::vector<Vertex> parent;

  std::vector<Vertex> path_to(Vertex v) const {
    std::vector<Vertex> p;
    for (Vertex x = v; x != kNone; x = parent[x]) p.push_back(x);
    std::reverse(p.begin(), p.end());
    return p;
  }
};

// Heaviest path ending at each vertex whose first vertex is in `starts`
// (any vertex when `starts` is empty).
inline DagBest dag_best_ending(const Digraph& dag, const std::vector<Vertex>& order,
                               const std::vector<std::uint64_t>& weight,
                               const std::vector<char>& starts = {}) {
  DagBest r;
  r.best.assign(dag.size(), 0);
  r.parent.assign(dag.size(), DagBest::kNone);
  for (Vertex v : order) {
    if (starts.empty() || starts[v]) r.best[v] = std::max(r.best[v], weight[v]);
    if (r.best[v] == 0) continue;
    for (Vertex t : dag.out(v)) {
      if (r.best[v] + weight[t] > r.best[t]) {
        r.best[t] = r.best[v] + weight[t];
        r.parent[t] = v;
      }
    }
  }
  return r;
}

}  // namespace detail

/// Heaviest path in a vertex-weighted DAG by dynamic programming over a
/// topological order. Empty weights mean unit weights.
inline PathResult longest_path_dag(const Digraph& dag, const std::vector<std::uint64_t>& weights = {}) {
  std::vector<std::uint64_t> w = weights.empty() ? std::vector<std::uint64_t>(dag.size(), 1) : weights;
  if (w.size() != dag.size()) throw DomainError("vertex weight count does not match the vertex count");
  const auto order = detail::topological_order(dag);
  const auto best = detail::dag_best_ending(dag, order, w);
  PathResult r;
  r.optimality_proved = true;
  if (dag.size() == 0) return r;
  Vertex end = 0;
  for (Vertex v = 0; v < dag.size(); ++v) {
    if (best.best[v] > best.best[end]) end = v;
  }
  r.length = best.best[end];
  std::vector<std::uint64_t> labels;
  for (Vertex v : best.path_to(end)) labels.push_back(dag.label(v));
  r.witnesses.push_back(std::move(labels));
  return r;
}

/// Longest path in the condensation DAG, one unit per SCC.
inline PathResult longest_path_condensation(const SccDecomposition& d) {
  return longest_path_dag(d.condensation());
}

namespace detail {

// A node of the reduced graphs: either an original vertex or a contracted
// path, carrying the vertices it stands for.
struct ReducedNode {
  std::uint64_t weight = 1;
  std::vector<std::uint64_t> expansion;
};

inline std::vector<std::uint64_t> expand(const std::vector<ReducedNode>& nodes,
                                         const std::vector<Vertex>& path) {
  std::vector<std::uint64_t> out;
  for (Vertex v : path) out.insert(out.end(), nodes[v].expansion.begin(), nodes[v].expansion.end());
  return out;
}

}  // namespace detail

/// Longest simple path (in vertices) of a whole GFG, exploiting that most
/// SCCs are single vertices.
///
///  T1: each multi-vertex source SCC S becomes one weighted node per vertex
///      u of S, weighted by the longest path inside S ending at u (solved on
///      the reversed SCC with u pinned first).
///  T2: dropping inner multi-vertex SCC vertices leaves a DAG; its heaviest
///      path is L_C.
///  T3: the inner multi-vertex SCC vertices plus contracted heaviest DAG
///      paths into, out of, and between them form a small cyclic weighted
///      graph; its heaviest path is L_D.
/// The answer is max(L_C, L_D).
inline PathResult longest_path_gfg(const FactorizationGraph& gfg, std::size_t cap = kDefaultPathCap) {
  const Digraph g = gfg.digraph().without_loops();
  const SccDecomposition d = strongly_connected_components(g);
  PathResult result;
  result.optimality_proved = true;
  if (g.size() == 0) return result;

  auto scc_name = [&](SccId c) {
    return "SCC of " + std::to_string(d.members[c].size()) + " vertices containing " +
           std::to_string(g.label(d.members[c].front()));
  };

  // G_B: one node per vertex; source MVSCC vertices carry T1 weights.
  std::vector<detail::ReducedNode> nodes(g.size());
  std::vector<char> inner(g.size(), 0);
  for (SccId c = 0; c < d.count(); ++c) {
    const auto& members = d.members[c];
    if (members.size() == 1) {
      nodes[members[0]] = {1, {g.label(members[0])}};
      continue;
    }
    if (!d.is_source(c)) {
      for (Vertex v : members) {
        inner[v] = 1;
        nodes[v] = {1, {g.label(v)}};
      }
      continue;
    }
    PathProblem sub;
    sub.graph = g.induced(members).reversed();
    sub.cap = cap;
    for (Vertex u : members) {
      sub.first = g.label(u);
      PathResult r;
      try {
        r = longest_path_general(sub);
      } catch (const ResourceError& e) {
        throw ResourceError(std::string(e.what()) + " (" + scc_name(c) + ")");
      }
      auto path = r.witnesses.front();
      std::reverse(path.begin(), path.end());
      nodes[u] = {r.length, std::move(path)};
    }
  }
  auto same_source_mv = [&](Vertex a, Vertex b) {
    const SccId c = d.scc_of[a];
    return c == d.scc_of[b] && d.is_source(c) && d.members[c].size() > 1;
  };

  // G_C: G_B without inner MVSCC vertices, arcs inside source MVSCCs removed.
  std::vector<Vertex> keep;
  std::vector<Vertex> to_c(g.size(), static_cast<Vertex>(-1));
  for (Vertex v = 0; v < g.size(); ++v) {
    if (!inner[v]) {
      to_c[v] = static_cast<Vertex>(keep.size());
      keep.push_back(v);
    }
  }
  Digraph gc(std::vector<std::uint64_t>(keep.begin(), keep.end()));
  std::vector<std::uint64_t> wc(keep.size());
  std::vector<detail::ReducedNode> nodes_c(keep.size());
  for (Vertex i = 0; i < keep.size(); ++i) {
    wc[i] = nodes[keep[i]].weight;
    nodes_c[i] = nodes[keep[i]];
    for (Vertex t : g.out(keep[i])) {
      if (inner[t] || same_source_mv(keep[i], t)) continue;
      gc.add_arc(i, to_c[t]);
    }
  }
  const auto order_c = detail::topological_order(gc);
  const auto end_c = detail::dag_best_ending(gc, order_c, wc);
  std::uint64_t lc = 0;
  std::vector<Vertex> lc_path;
  for (Vertex v = 0; v < gc.size(); ++v) {
    if (end_c.best[v] > lc) {
      lc = end_c.best[v];
      lc_path = end_c.path_to(v);
    }
  }
  result.length = lc;
  result.witnesses.push_back(detail::expand(nodes_c, lc_path));

  std::vector<Vertex> mv;
  for (Vertex v = 0; v < g.size(); ++v) {
    if (inner[v]) mv.push_back(v);
  }
  if (mv.empty()) return result;

  // Heaviest G_C paths starting anywhere: reversed DAG view.
  const Digraph gc_rev = gc.reversed();
  std::vector<Vertex> order_rev(order_c.rbegin(), order_c.rend());
  const auto start_c = detail::dag_best_ending(gc_rev, order_rev, wc);

  // G_D.
  std::vector<detail::ReducedNode> dnodes;
  std::vector<std::pair<Vertex, Vertex>> darcs;
  std::vector<Vertex> mv_node(g.size(), static_cast<Vertex>(-1));
  for (Vertex v : mv) {
    mv_node[v] = static_cast<Vertex>(dnodes.size());
    dnodes.push_back(nodes[v]);
  }
  auto add_node = [&](std::uint64_t weight, std::vector<std::uint64_t> expansion) {
    dnodes.push_back({weight, std::move(expansion)});
    return static_cast<Vertex>(dnodes.size() - 1);
  };
  for (Vertex m : mv) {
    for (Vertex t : g.out(m)) {
      if (inner[t]) darcs.emplace_back(mv_node[m], mv_node[t]);
    }
    // Into m.
    Vertex best_pred = static_cast<Vertex>(-1);
    for (Vertex p : g.in(m)) {
      if (inner[p]) continue;
      const Vertex pc = to_c[p];
      if (best_pred == static_cast<Vertex>(-1) || end_c.best[pc] > end_c.best[best_pred]) best_pred = pc;
    }
    if (best_pred != static_cast<Vertex>(-1)) {
      const Vertex node = add_node(end_c.best[best_pred], detail::expand(nodes_c, end_c.path_to(best_pred)));
      darcs.emplace_back(node, mv_node[m]);
    }
    // Out of m, and between m and later MVSCC vertices.
    std::vector<char> starts(gc.size(), 0);
    Vertex best_succ = static_cast<Vertex>(-1);
    for (Vertex s : g.out(m)) {
      if (inner[s]) continue;
      const Vertex sc = to_c[s];
      starts[sc] = 1;
      if (best_succ == static_cast<Vertex>(-1) || start_c.best[sc] > start_c.best[best_succ]) best_succ = sc;
    }
    if (best_succ == static_cast<Vertex>(-1)) continue;
    {
      auto path = start_c.path_to(best_succ);
      std::reverse(path.begin(), path.end());
      const Vertex node = add_node(start_c.best[best_succ], detail::expand(nodes_c, path));
      darcs.emplace_back(mv_node[m], node);
    }
    const auto from_m = detail::dag_best_ending(gc, order_c, wc, starts);
    for (Vertex m2 : mv) {
      if (d.scc_of[m2] == d.scc_of[m]) continue;
      Vertex best_mid = static_cast<Vertex>(-1);
      for (Vertex p : g.in(m2)) {
        if (inner[p]) continue;
        const Vertex pc = to_c[p];
        if (from_m.best[pc] == 0) continue;
        if (best_mid == static_cast<Vertex>(-1) || from_m.best[pc] > from_m.best[best_mid]) best_mid = pc;
      }
      if (best_mid == static_cast<Vertex>(-1)) continue;
      const Vertex node = add_node(from_m.best[best_mid], detail::expand(nodes_c, from_m.path_to(best_mid)));
      darcs.emplace_back(mv_node[m], node);
      darcs.emplace_back(node, mv_node[m2]);
    }
  }

  std::vector<std::uint64_t> dlabels(dnodes.size());
  std::iota(dlabels.begin(), dlabels.end(), std::uint64_t{0});
  PathProblem gd;
  gd.graph = Digraph(dlabels);
  for (const auto& [s, t] : darcs) gd.graph.add_arc(s, t);
  gd.weights.resize(dnodes.size());
  for (std::size_t i = 0; i < dnodes.size(); ++i) gd.weights[i] = dnodes[i].weight;
  gd.cap = std::max(cap, kMaxPathCap);
  if (dnodes.size() > kMaxPathCap) {
    throw ResourceError("contracted graph around inner multi-vertex SCCs has " +
                        std::to_string(dnodes.size()) + " nodes, over the vertex cap of " +
                        std::to_string(kMaxPathCap) + " (" + scc_name(d.scc_of[mv.front()]) + ")");
  }
  const PathResult ld = longest_path_general(gd);
  if (ld.length > result.length) {
    std::vector<Vertex> seq;
    for (std::uint64_t label : ld.witnesses.front()) seq.push_back(static_cast<Vertex>(label));
    result.length = ld.length;
    result.witnesses.front() = detail::expand(dnodes, seq);
  }
  return result;
}

}  // namespace gfg
