#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gfg/errors.hpp"

namespace gfg {

using Vertex = std::uint32_t;

/// Unweighted directed graph over dense vertex indices, each carrying an
/// integer label (a prime value for graphs derived from a GFG). Adjacency
/// lists are kept sorted and duplicate-free.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(std::vector<std::uint64_t> labels)
      : labels_(std::move(labels)), out_(labels_.size()), in_(labels_.size()) {}

  std::size_t size() const { return labels_.size(); }
  std::uint64_t label(Vertex v) const { return labels_[v]; }
  const std::vector<std::uint64_t>& labels() const { return labels_; }

  std::span<const Vertex> out(Vertex v) const { return out_[v]; }
  std::span<const Vertex> in(Vertex v) const { return in_[v]; }

  bool has_arc(Vertex s, Vertex t) const {
    return std::binary_search(out_[s].begin(), out_[s].end(), t);
  }

  // Insert s -> t, ignoring duplicates.
  void add_arc(Vertex s, Vertex t) {
    if (s >= size() || t >= size()) throw DomainError("arc endpoint out of range");
    auto it = std::lower_bound(out_[s].begin(), out_[s].end(), t);
    if (it != out_[s].end() && *it == t) return;
    out_[s].insert(it, t);
    in_[t].insert(std::lower_bound(in_[t].begin(), in_[t].end(), s), s);
    ++arcs_;
  }

  std::size_t arc_count() const { return arcs_; }

  /// Index of the vertex carrying `label`, or size() when absent.
  Vertex find(std::uint64_t label) const {
    for (Vertex v = 0; v < size(); ++v) {
      if (labels_[v] == label) return v;
    }
    return static_cast<Vertex>(size());
  }

  Digraph without_loops() const {
    Digraph g(labels_);
    for (Vertex s = 0; s < size(); ++s) {
      for (Vertex t : out_[s]) {
        if (s != t) g.add_arc(s, t);
      }
    }
    return g;
  }

  Digraph reversed() const {
    Digraph g(labels_);
    for (Vertex s = 0; s < size(); ++s) {
      for (Vertex t : out_[s]) g.add_arc(t, s);
    }
    return g;
  }

  /// Subgraph induced by `keep` (indices into this graph), vertices
  /// renumbered in the given order.
  Digraph induced(std::span<const Vertex> keep) const {
    std::vector<std::uint64_t> labels;
    labels.reserve(keep.size());
    std::vector<Vertex> remap(size(), static_cast<Vertex>(-1));
    for (std::size_t i = 0; i < keep.size(); ++i) {
      remap[keep[i]] = static_cast<Vertex>(i);
      labels.push_back(labels_[keep[i]]);
    }
    Digraph g(std::move(labels));
    for (std::size_t i = 0; i < keep.size(); ++i) {
      for (Vertex t : out_[keep[i]]) {
        if (remap[t] != static_cast<Vertex>(-1)) g.add_arc(static_cast<Vertex>(i), remap[t]);
      }
    }
    return g;
  }

  /// Graph from labels and label pairs; unknown labels are a domain error.
  static Digraph from_label_arcs(std::vector<std::uint64_t> labels,
                                 const std::vector<std::pair<std::uint64_t, std::uint64_t>>& arcs) {
    Digraph g(std::move(labels));
    for (const auto& [s, t] : arcs) {
      const Vertex a = g.find(s), b = g.find(t);
      if (a == g.size() || b == g.size()) {
        throw DomainError("arc (" + std::to_string(s) + ", " + std::to_string(t) +
                          ") references an unknown vertex");
      }
      g.add_arc(a, b);
    }
    return g;
  }

 private:
  std::vector<std::uint64_t> labels_;
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
  std::size_t arcs_ = 0;
};

}  // namespace gfg
