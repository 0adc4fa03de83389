#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gfg/digraph.hpp"
#include "gfg/graph.hpp"

namespace gfg {

using SccId = std::uint32_t;

/// Strongly connected components with ids numbered in topological order of
/// the condensation (every condensation arc goes from a lower to a higher id).
struct SccDecomposition {
  std::vector<SccId> scc_of;
  std::vector<std::vector<Vertex>> members;  // ascending vertex indices
  std::vector<std::vector<SccId>> cond_out;  // deduplicated, sorted
  std::vector<std::vector<SccId>> cond_in;

  std::size_t count() const { return members.size(); }

  std::size_t condensation_arc_count() const {
    std::size_t a = 0;
    for (const auto& out : cond_out) a += out.size();
    return a;
  }

  bool is_source(SccId c) const { return cond_in[c].empty(); }
  bool is_sink(SccId c) const { return cond_out[c].empty(); }
  bool is_disconnected(SccId c) const { return is_source(c) && is_sink(c); }

  std::vector<SccId> topo_order() const {
    std::vector<SccId> order(count());
    for (SccId c = 0; c < count(); ++c) order[c] = c;
    return order;
  }

  /// The condensation as a digraph whose vertex labels are SCC ids.
  Digraph condensation() const {
    std::vector<std::uint64_t> labels(count());
    for (SccId c = 0; c < count(); ++c) labels[c] = c;
    Digraph d(std::move(labels));
    for (SccId c = 0; c < count(); ++c) {
      for (SccId t : cond_out[c]) d.add_arc(c, t);
    }
    return d;
  }
};

/// Tarjan's algorithm, iterative.
inline SccDecomposition strongly_connected_components(const Digraph& g) {
  const std::size_t n = g.size();
  constexpr Vertex kUnvisited = static_cast<Vertex>(-1);
  std::vector<Vertex> index(n, kUnvisited), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<Vertex> stack;
  std::vector<std::pair<Vertex, std::size_t>> frames;  // (vertex, next out index)
  std::vector<std::vector<Vertex>> emitted;            // reverse topological
  Vertex counter = 0;

  for (Vertex root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      auto& [v, next] = frames.back();
      const auto out = g.out(v);
      if (next < out.size()) {
        const Vertex w = out[next++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const Vertex done = v;
      frames.pop_back();
      if (!frames.empty()) {
        const Vertex parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        std::vector<Vertex> comp;
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != done);
        std::sort(comp.begin(), comp.end());
        emitted.push_back(std::move(comp));
      }
    }
  }

  SccDecomposition d;
  const std::size_t k = emitted.size();
  d.scc_of.assign(n, 0);
  d.members.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    const SccId id = static_cast<SccId>(k - 1 - i);
    for (Vertex v : emitted[i]) d.scc_of[v] = id;
    d.members[id] = std::move(emitted[i]);
  }
  d.cond_out.resize(k);
  d.cond_in.resize(k);
  for (Vertex s = 0; s < n; ++s) {
    for (Vertex t : g.out(s)) {
      const SccId a = d.scc_of[s], b = d.scc_of[t];
      if (a != b) d.cond_out[a].push_back(b);
    }
  }
  for (SccId c = 0; c < k; ++c) {
    auto& out = d.cond_out[c];
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (SccId t : out) d.cond_in[t].push_back(c);
  }
  return d;
}

inline SccDecomposition strongly_connected_components(const FactorizationGraph& g) {
  return strongly_connected_components(g.digraph());
}

inline std::size_t condensation_arcs_count(const SccDecomposition& d) {
  return d.condensation_arc_count();
}

enum class ComponentKind { Tac, Gac, Eac, Ordinary };

inline std::string_view to_string(ComponentKind k) {
  switch (k) {
    case ComponentKind::Tac: return "TAC";
    case ComponentKind::Gac: return "GAC";
    case ComponentKind::Eac: return "EAC";
    case ComponentKind::Ordinary: return "ORDINARY";
  }
  return "?";
}

struct ComponentClass {
  ComponentKind kind = ComponentKind::Ordinary;
  // No condensation arcs in or out. Meaningful for autonomous components.
  bool disconnected = false;
};

/// Classifies every SCC. Source SCCs are the autonomous components: a
/// single vertex 2v = n or a pair p + q = n is a GAC, any other single
/// vertex is a TAC, anything larger is an EAC.
inline std::vector<ComponentClass> classify_components(const FactorizationGraph& g,
                                                       const SccDecomposition& d) {
  std::vector<ComponentClass> out(d.count());
  for (SccId c = 0; c < d.count(); ++c) {
    if (!d.is_source(c)) continue;
    const auto& m = d.members[c];
    ComponentClass cls;
    cls.disconnected = d.is_disconnected(c);
    if (m.size() == 1) {
      cls.kind = 2 * g.prime(m[0]) == g.n() ? ComponentKind::Gac : ComponentKind::Tac;
    } else if (m.size() == 2 && g.prime(m[0]) + g.prime(m[1]) == g.n()) {
      cls.kind = ComponentKind::Gac;
    } else {
      cls.kind = ComponentKind::Eac;
    }
    out[c] = cls;
  }
  return out;
}

/// SCC ids of all components of the given kind.
inline std::vector<SccId> components_of_kind(const std::vector<ComponentClass>& classes,
                                             ComponentKind kind) {
  std::vector<SccId> ids;
  for (SccId c = 0; c < classes.size(); ++c) {
    if (classes[c].kind == kind) ids.push_back(c);
  }
  return ids;
}

/// Union of EAC vertex sets as primes, ascending.
inline std::vector<std::uint64_t> eac_vertices(const FactorizationGraph& g,
                                               const SccDecomposition& d,
                                               const std::vector<ComponentClass>& classes) {
  std::vector<std::uint64_t> out;
  for (SccId c : components_of_kind(classes, ComponentKind::Eac)) {
    for (Vertex v : d.members[c]) out.push_back(g.prime(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

enum class MapRow { Source = 0, Inner = 1, Sink = 2 };
enum class MapColumn { Goldbach = 0, Hybrid = 1, Exceptional = 2 };

inline std::string_view to_string(MapRow r) {
  switch (r) {
    case MapRow::Source: return "SOURCE";
    case MapRow::Inner: return "INNER";
    case MapRow::Sink: return "SINK";
  }
  return "?";
}

inline std::string_view to_string(MapColumn c) {
  switch (c) {
    case MapColumn::Goldbach: return "GOLDBACH";
    case MapColumn::Hybrid: return "HYBRID";
    case MapColumn::Exceptional: return "EXCEPTIONAL";
  }
  return "?";
}

struct MapCell {
  MapRow row = MapRow::Source;
  MapColumn column = MapColumn::Goldbach;

  friend bool operator==(const MapCell&, const MapCell&) = default;
};

struct CondensationMap {
  std::vector<MapCell> cell_of;  // per vertex index
  std::vector<MapCell> scc_cell;  // per SCC id; all members share a cell
};

namespace detail {

// Forward closure over the condensation from `seeds`, seeds included.
inline std::vector<char> reach_from(const SccDecomposition& d, const std::vector<SccId>& seeds) {
  std::vector<char> mark(d.count(), 0);
  for (SccId s : seeds) mark[s] = 1;
  // Ids are topologically ordered, so one ascending sweep suffices.
  for (SccId c = 0; c < d.count(); ++c) {
    if (!mark[c]) continue;
    for (SccId t : d.cond_out[c]) mark[t] = 1;
  }
  return mark;
}

}  // namespace detail

/// Assigns each vertex its (row, column) cell. Disconnected SCCs count as
/// SOURCE; TAC vertices land in HYBRID.
inline CondensationMap condensation_map(const FactorizationGraph& g, const SccDecomposition& d,
                                        const std::vector<ComponentClass>& classes) {
  const auto from_eac = detail::reach_from(d, components_of_kind(classes, ComponentKind::Eac));
  const auto from_gac = detail::reach_from(d, components_of_kind(classes, ComponentKind::Gac));
  CondensationMap map;
  map.scc_cell.resize(d.count());
  for (SccId c = 0; c < d.count(); ++c) {
    MapCell cell;
    if (d.is_source(c)) {
      cell.row = MapRow::Source;
    } else if (d.is_sink(c)) {
      cell.row = MapRow::Sink;
    } else {
      cell.row = MapRow::Inner;
    }
    const bool tac = classes[c].kind == ComponentKind::Tac;
    if (!tac && !from_eac[c]) {
      cell.column = MapColumn::Goldbach;
    } else if (!tac && !from_gac[c]) {
      cell.column = MapColumn::Exceptional;
    } else {
      cell.column = MapColumn::Hybrid;
    }
    map.scc_cell[c] = cell;
  }
  map.cell_of.resize(g.size());
  for (Vertex v = 0; v < g.size(); ++v) map.cell_of[v] = map.scc_cell[d.scc_of[v]];
  return map;
}

/// One "count x size" annotation: `count` SCCs of `size` vertices each.
struct CensusEntry {
  std::size_t count = 0;
  std::size_t size = 0;

  friend bool operator==(const CensusEntry&, const CensusEntry&) = default;
};

/// census[row][column], entries ordered by descending SCC size.
using Census = std::array<std::array<std::vector<CensusEntry>, 3>, 3>;

inline Census census(const CondensationMap& map, const SccDecomposition& d) {
  std::array<std::array<std::map<std::size_t, std::size_t, std::greater<>>, 3>, 3> grouped;
  for (SccId c = 0; c < d.count(); ++c) {
    const auto cell = map.scc_cell[c];
    ++grouped[static_cast<int>(cell.row)][static_cast<int>(cell.column)][d.members[c].size()];
  }
  Census out;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      for (const auto& [size, count] : grouped[r][c]) out[r][c].push_back({count, size});
    }
  }
  return out;
}

inline std::string render_census(const Census& cs) {
  constexpr int kWidth = 18;
  auto pad = [](std::string s) {
    if (s.size() < kWidth) s.append(kWidth - s.size(), ' ');
    return s;
  };
  std::ostringstream os;
  os << pad("");
  for (int c = 0; c < 3; ++c) os << pad(std::string(to_string(static_cast<MapColumn>(c))));
  os << '\n';
  for (int r = 0; r < 3; ++r) {
    std::size_t lines = 1;
    for (int c = 0; c < 3; ++c) lines = std::max(lines, cs[r][c].size());
    for (std::size_t i = 0; i < lines; ++i) {
      os << pad(i == 0 ? std::string(to_string(static_cast<MapRow>(r))) : "");
      for (int c = 0; c < 3; ++c) {
        std::string cell = i < cs[r][c].size() ? std::to_string(cs[r][c][i].count) + " x " +
                                                     std::to_string(cs[r][c][i].size)
                                               : (i == 0 ? "-" : "");
        os << pad(cell);
      }
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace gfg
