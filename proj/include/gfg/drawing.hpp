#pragma once

// Planarity, straight-line grid drawings with few crossings, DOT export.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "gfg/components.hpp"
#include "gfg/digraph.hpp"
#include "gfg/errors.hpp"
#include "gfg/graph.hpp"

namespace gfg {

struct GridPoint {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

struct GridLayout {
  std::int64_t grid_width = 0;
  std::int64_t grid_height = 0;
  std::vector<GridPoint> position;  // per vertex index
  std::size_t crossings = 0;
};

/// Underlying simple undirected graph: loops dropped, antiparallel arcs
/// merged. Edges (u, v) with u < v, sorted.
inline std::vector<std::pair<Vertex, Vertex>> simple_edges(const Digraph& g) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex s = 0; s < g.size(); ++s) {
    for (Vertex t : g.out(s)) {
      if (s != t) edges.emplace_back(std::min(s, t), std::max(s, t));
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

inline bool is_planar(const Digraph& g) {
  const auto edges = simple_edges(g);
  if (g.size() >= 3 && edges.size() > 3 * g.size() - 6) return false;
  using Undirected = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  Undirected u(g.size());
  for (const auto& [a, b] : edges) boost::add_edge(a, b, u);
  return boost::boyer_myrvold_planarity_test(u);
}

namespace detail {

inline std::int64_t orient(const GridPoint& a, const GridPoint& b, const GridPoint& c) {
  const std::int64_t v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return (v > 0) - (v < 0);
}

// Proper crossing: interiors meet in exactly one point, no endpoint involved.
inline bool properly_cross(const GridPoint& a, const GridPoint& b, const GridPoint& c,
                           const GridPoint& d) {
  const auto o1 = orient(a, b, c), o2 = orient(a, b, d);
  const auto o3 = orient(c, d, a), o4 = orient(c, d, b);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

// p strictly inside segment ab.
inline bool on_open_segment(const GridPoint& a, const GridPoint& b, const GridPoint& p) {
  if (orient(a, b, p) != 0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y) && !(p == a) && !(p == b);
}

inline void require_distinct(const std::vector<GridPoint>& pos) {
  std::vector<std::pair<std::int64_t, std::int64_t>> pts;
  for (const auto& p : pos) pts.emplace_back(p.x, p.y);
  std::sort(pts.begin(), pts.end());
  if (std::adjacent_find(pts.begin(), pts.end()) != pts.end()) {
    throw DomainError("layout places two vertices on the same grid node");
  }
}

}  // namespace detail

/// Pairs of edges of the underlying simple graph that properly cross in
/// the straight-line drawing. Edges sharing an endpoint never count.
inline std::size_t count_segment_crossings(const GridLayout& layout, const Digraph& g) {
  if (layout.position.size() != g.size()) throw DomainError("layout does not cover every vertex");
  detail::require_distinct(layout.position);
  const auto edges = simple_edges(g);
  const auto& p = layout.position;
  std::size_t count = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const auto [a, b] = edges[i];
      const auto [c, d] = edges[j];
      if (a == c || a == d || b == c || b == d) continue;
      if (detail::properly_cross(p[a], p[b], p[c], p[d])) ++count;
    }
  }
  return count;
}

/// True when some vertex sits in the interior of an edge it is not an
/// endpoint of.
inline bool has_vertex_on_edge(const GridLayout& layout, const Digraph& g) {
  const auto& p = layout.position;
  for (const auto& [a, b] : simple_edges(g)) {
    for (Vertex v = 0; v < g.size(); ++v) {
      if (v != a && v != b && detail::on_open_segment(p[a], p[b], p[v])) return true;
    }
  }
  return false;
}

struct AnnealOptions {
  std::uint64_t budget = 1200000;  // move attempts
  std::uint64_t seed = 1;
  double initial_temperature = 2.0;
  double final_temperature = 0.1;
  std::uint64_t run_length = 300000;  // attempts per cooling run
  double grid_factor = 4.0;          // grid side = ceil(grid_factor * sqrt(|V|))
  double local_fraction = 0.5;       // share of moves that stay within 2 nodes of the old spot
};

namespace detail {

class Annealer {
 public:
  Annealer(const Digraph& g, const AnnealOptions& opt)
      : n_(g.size()), edges_(simple_edges(g)), incident_(g.size()), rng_(opt.seed), opt_(opt) {
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      incident_[edges_[e].first].push_back(e);
      incident_[edges_[e].second].push_back(e);
    }
    side_ = std::max<std::int64_t>(
        2, static_cast<std::int64_t>(std::ceil(opt.grid_factor * std::sqrt(static_cast<double>(n_)))));
    while (side_ * side_ < static_cast<std::int64_t>(n_)) ++side_;
    mark_.assign(edges_.size(), 0);
  }

  GridLayout run() {
    GridLayout best;
    best.grid_width = best.grid_height = side_;
    if (n_ == 0) return best;
    random_layout();
    std::size_t cost = total();
    best.position = pos_;
    best.crossings = cost;
    const std::uint64_t run_length = std::max<std::uint64_t>(opt_.run_length, 1);
    bool improved = false;
    for (std::uint64_t it = 0; it < opt_.budget && best.crossings > 0; ++it) {
      const std::uint64_t phase = it % run_length;
      if (it > 0 && phase == 0) {
        // Reheat from the best drawing, or start over once a run stagnates.
        if (improved) {
          load(best.position);
        } else {
          random_layout();
        }
        cost = total();
        improved = false;
      }
      const double frac = static_cast<double>(phase) / static_cast<double>(run_length);
      const double temp =
          opt_.initial_temperature * std::pow(opt_.final_temperature / opt_.initial_temperature, frac);
      std::ptrdiff_t delta = 0;
      if (!propose(delta)) continue;
      if (delta <= 0 || std::uniform_real_distribution<double>(0, 1)(rng_) <
                            std::exp(-static_cast<double>(delta) / temp)) {
        commit();
        cost = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(cost) + delta);
        if (cost < best.crossings) {
          best.crossings = cost;
          best.position = pos_;
          improved = true;
        }
      } else {
        rollback();
      }
    }
    return best;
  }

 private:
  using Cell = std::int64_t;

  Cell cell(const GridPoint& p) const { return p.y * side_ + p.x; }

  GridPoint random_point() {
    std::uniform_int_distribution<std::int64_t> d(0, side_ - 1);
    const auto x = d(rng_);
    return {x, d(rng_)};
  }

  // Position v may take: no vertex inside its edges, v inside no other edge.
  bool admissible(Vertex v) const {
    for (std::size_t e : incident_[v]) {
      const auto [a, b] = edges_[e];
      for (Vertex w = 0; w < n_; ++w) {
        if (w != a && w != b && placed_[w] && placed_[a] && placed_[b] &&
            on_open_segment(pos_[a], pos_[b], pos_[w])) {
          return false;
        }
      }
    }
    for (const auto& [a, b] : edges_) {
      if (a == v || b == v || !placed_[a] || !placed_[b]) continue;
      if (on_open_segment(pos_[a], pos_[b], pos_[v])) return false;
    }
    return true;
  }

  void load(const std::vector<GridPoint>& positions) {
    pos_ = positions;
    placed_.assign(n_, 1);
    occupied_.assign(static_cast<std::size_t>(side_ * side_), -1);
    for (Vertex v = 0; v < n_; ++v) occupied_[cell(pos_[v])] = static_cast<std::int64_t>(v);
  }

  void random_layout() {
    pos_.assign(n_, {});
    placed_.assign(n_, 0);
    occupied_.assign(static_cast<std::size_t>(side_ * side_), -1);
    for (Vertex v = 0; v < n_; ++v) {
      for (int attempt = 0;; ++attempt) {
        const GridPoint p = random_point();
        if (occupied_[cell(p)] >= 0) continue;
        pos_[v] = p;
        placed_[v] = 1;
        if (admissible(v) || attempt > 10000) break;
        placed_[v] = 0;
      }
      occupied_[cell(pos_[v])] = static_cast<std::int64_t>(v);
    }
    // The fallback above cannot leave a collinear triple in practice, but
    // redo the whole placement if it ever did.
    for (Vertex v = 0; v < n_; ++v) {
      if (!admissible(v)) {
        random_layout();
        return;
      }
    }
  }

  std::size_t total() const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      for (std::size_t j = i + 1; j < edges_.size(); ++j) c += crosses(i, j);
    }
    return c;
  }

  bool crosses(std::size_t i, std::size_t j) const {
    const auto [a, b] = edges_[i];
    const auto [c, d] = edges_[j];
    if (a == c || a == d || b == c || b == d) return false;
    return properly_cross(pos_[a], pos_[b], pos_[c], pos_[d]);
  }

  // Crossings involving at least one edge incident to a moved vertex.
  std::size_t local(const std::vector<Vertex>& moved) {
    std::vector<std::size_t> set;
    for (Vertex v : moved) {
      for (std::size_t e : incident_[v]) {
        if (!mark_[e]) {
          mark_[e] = 1;
          set.push_back(e);
        }
      }
    }
    std::size_t c = 0;
    for (std::size_t e : set) {
      for (std::size_t f = 0; f < edges_.size(); ++f) {
        if (mark_[f] && f <= e) continue;
        c += crosses(e, f);
      }
    }
    for (std::size_t e : set) mark_[e] = 0;
    return c;
  }

  bool propose(std::ptrdiff_t& delta) {
    const Vertex u = std::uniform_int_distribution<Vertex>(0, static_cast<Vertex>(n_ - 1))(rng_);
    moved_.assign(1, u);
    saved_.assign(1, pos_[u]);
    GridPoint target;
    if (std::uniform_real_distribution<double>(0, 1)(rng_) < opt_.local_fraction) {
      std::uniform_int_distribution<std::int64_t> step(-2, 2);
      target = {std::clamp<std::int64_t>(pos_[u].x + step(rng_), 0, side_ - 1),
                std::clamp<std::int64_t>(pos_[u].y + step(rng_), 0, side_ - 1)};
    } else {
      target = random_point();
    }
    const std::int64_t other = occupied_[cell(target)];
    if (other == static_cast<std::int64_t>(u)) return false;
    if (other >= 0) {
      moved_.push_back(static_cast<Vertex>(other));
      saved_.push_back(target);
    }
    const std::size_t before = local(moved_);
    if (other >= 0) pos_[other] = pos_[u];
    pos_[u] = target;
    for (Vertex v : moved_) {
      if (!admissible(v)) {
        rollback();
        return false;
      }
    }
    delta = static_cast<std::ptrdiff_t>(local(moved_)) - static_cast<std::ptrdiff_t>(before);
    return true;
  }

  void commit() {
    for (std::size_t i = 0; i < moved_.size(); ++i) occupied_[cell(saved_[i])] = -1;
    for (Vertex v : moved_) occupied_[cell(pos_[v])] = static_cast<std::int64_t>(v);
  }

  void rollback() {
    for (std::size_t i = 0; i < moved_.size(); ++i) pos_[moved_[i]] = saved_[i];
  }

  std::size_t n_;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<std::vector<std::size_t>> incident_;
  std::mt19937_64 rng_;
  AnnealOptions opt_;
  std::int64_t side_ = 0;
  std::vector<GridPoint> pos_;
  std::vector<char> placed_;
  std::vector<std::int64_t> occupied_;
  std::vector<char> mark_;
  std::vector<Vertex> moved_;
  std::vector<GridPoint> saved_;
};

}  // namespace detail

/// Upper bound on the crossing number from the best straight-line grid
/// drawing found by seeded simulated annealing. Moves relocate one vertex
/// to a random grid node, swapping when the node is taken.
inline GridLayout crossing_upper_bound(const Digraph& g, const AnnealOptions& options = {}) {
  if (g.size() > 64) {
    throw DomainError("crossing search supports at most 64 vertices, got " + std::to_string(g.size()));
  }
  return detail::Annealer(g, options).run();
}

/// `vertex x y` per line, then `crossings=k`.
inline std::string format_layout(const GridLayout& layout, const Digraph& g) {
  std::ostringstream os;
  for (Vertex v = 0; v < g.size(); ++v) {
    os << g.label(v) << ' ' << layout.position[v].x << ' ' << layout.position[v].y << '\n';
  }
  os << "crossings=" << layout.crossings << '\n';
  return os.str();
}

struct DotOptions {
  std::string name = "gfg";
  // When set (one cell per vertex), vertices are grouped into one cluster
  // per condensation-map cell.
  std::vector<MapCell> clusters;
};

inline std::string export_dot(const FactorizationGraph& g, const DotOptions& options = {}) {
  if (!options.clusters.empty() && options.clusters.size() != g.size()) {
    throw DomainError("cluster assignment does not match the vertex count");
  }
  std::ostringstream os;
  os << "digraph \"" << options.name << "\" {\n";
  if (options.clusters.empty()) {
    for (Vertex v = 0; v < g.size(); ++v) os << "  " << g.prime(v) << ";\n";
  } else {
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        const MapCell cell{static_cast<MapRow>(r), static_cast<MapColumn>(c)};
        std::vector<Vertex> in_cell;
        for (Vertex v = 0; v < g.size(); ++v) {
          if (options.clusters[v] == cell) in_cell.push_back(v);
        }
        if (in_cell.empty()) continue;
        os << "  subgraph cluster_" << to_string(cell.row) << '_' << to_string(cell.column) << " {\n";
        os << "    label=\"" << to_string(cell.row) << ' ' << to_string(cell.column) << "\";\n";
        for (Vertex v : in_cell) os << "    " << g.prime(v) << ";\n";
        os << "  }\n";
      }
    }
  }
  for (const auto& a : g.arcs()) {
    os << "  " << a.source << " -> " << a.target;
    if (a.weight > 1) os << " [label=\"" << a.weight << "\"]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace gfg
