#pragma once

// One row of the EAC parameter table for a given n, plus the artifacts
// written by `analyze`.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gfg/components.hpp"
#include "gfg/drawing.hpp"
#include "gfg/errors.hpp"
#include "gfg/graph.hpp"
#include "gfg/paths.hpp"
#include "gfg/primes.hpp"

namespace gfg {

struct GfgMetrics {
  std::size_t v = 0, a = 0, c = 0;
  std::size_t g_connected = 0;     // GACs with condensation arcs
  std::size_t g_disconnected = 0;  // GACs that are whole weak components
  std::uint64_t l = 0;

  friend bool operator==(const GfgMetrics&, const GfgMetrics&) = default;
};

struct CondensationMetrics {
  std::size_t v = 0, a = 0;
  std::uint64_t l = 0;

  friend bool operator==(const CondensationMetrics&, const CondensationMetrics&) = default;
};

struct EacMetrics {
  std::size_t v = 0, a = 0;
  std::uint64_t h_paths = 0, h_cycles = 0;
  std::size_t x_bound = 0;
  // The bound is the crossing number: 0 for planar graphs, or 1 for a
  // non-planar graph.
  bool x_exact = false;
  bool planar = false;

  friend bool operator==(const EacMetrics&, const EacMetrics&) = default;
};

struct EacReport {
  std::uint64_t n = 0;
  GfgMetrics gfg;
  CondensationMetrics cg;
  std::optional<EacMetrics> eac;  // absent when F_n has no EAC
  std::vector<std::uint64_t> eac_vertices;
  std::vector<std::uint64_t> longest_path;
  std::vector<std::vector<std::uint64_t>> hamiltonian_cycles;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;

  friend bool operator==(const EacReport&, const EacReport&) = default;
};

inline void to_json(nlohmann::json& j, const GfgMetrics& m) {
  j = {{"v", m.v}, {"a", m.a}, {"c", m.c}, {"g_connected", m.g_connected},
       {"g_disconnected", m.g_disconnected}, {"l", m.l}};
}
inline void from_json(const nlohmann::json& j, GfgMetrics& m) {
  j.at("v").get_to(m.v);
  j.at("a").get_to(m.a);
  j.at("c").get_to(m.c);
  j.at("g_connected").get_to(m.g_connected);
  j.at("g_disconnected").get_to(m.g_disconnected);
  j.at("l").get_to(m.l);
}
inline void to_json(nlohmann::json& j, const CondensationMetrics& m) {
  j = {{"v", m.v}, {"a", m.a}, {"l", m.l}};
}
inline void from_json(const nlohmann::json& j, CondensationMetrics& m) {
  j.at("v").get_to(m.v);
  j.at("a").get_to(m.a);
  j.at("l").get_to(m.l);
}
inline void to_json(nlohmann::json& j, const EacMetrics& m) {
  j = {{"v", m.v}, {"a", m.a}, {"h_paths", m.h_paths}, {"h_cycles", m.h_cycles},
       {"x_bound", m.x_bound}, {"x_exact", m.x_exact}, {"planar", m.planar}};
}
inline void from_json(const nlohmann::json& j, EacMetrics& m) {
  j.at("v").get_to(m.v);
  j.at("a").get_to(m.a);
  j.at("h_paths").get_to(m.h_paths);
  j.at("h_cycles").get_to(m.h_cycles);
  j.at("x_bound").get_to(m.x_bound);
  j.at("x_exact").get_to(m.x_exact);
  j.at("planar").get_to(m.planar);
}
inline void to_json(nlohmann::json& j, const EacReport& r) {
  j = {{"n", r.n},
       {"gfg", r.gfg},
       {"cg", r.cg},
       {"eac", r.eac ? nlohmann::json(*r.eac) : nlohmann::json(nullptr)},
       {"eac_vertices", r.eac_vertices},
       {"longest_path", r.longest_path},
       {"hamiltonian_cycles", r.hamiltonian_cycles},
       {"seed", r.seed},
       {"budget", r.budget}};
}
inline void from_json(const nlohmann::json& j, EacReport& r) {
  j.at("n").get_to(r.n);
  j.at("gfg").get_to(r.gfg);
  j.at("cg").get_to(r.cg);
  if (j.at("eac").is_null()) {
    r.eac.reset();
  } else {
    r.eac = j.at("eac").get<EacMetrics>();
  }
  j.at("eac_vertices").get_to(r.eac_vertices);
  j.at("longest_path").get_to(r.longest_path);
  j.at("hamiltonian_cycles").get_to(r.hamiltonian_cycles);
  j.at("seed").get_to(r.seed);
  j.at("budget").get_to(r.budget);
}

inline std::string report_to_json(const EacReport& r) { return nlohmann::json(r).dump(2) + "\n"; }

inline EacReport report_from_json(const std::string& text) {
  try {
    return nlohmann::json::parse(text).get<EacReport>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed report: ") + e.what());
  }
}

/// The subgraph induced by all EAC vertices (one EAC in every known case).
inline FactorizationGraph eac_subgraph(const FactorizationGraph& g, const SccDecomposition& d,
                                       const std::vector<ComponentClass>& classes) {
  std::vector<Vertex> keep;
  for (SccId c : components_of_kind(classes, ComponentKind::Eac)) {
    keep.insert(keep.end(), d.members[c].begin(), d.members[c].end());
  }
  return g.induced(keep);
}

inline EacReport build_report(std::uint64_t n, const SpfTable& table, const AnnealOptions& anneal = {}) {
  const auto g = build_gfg(n, table);
  const auto d = strongly_connected_components(g);
  const auto classes = classify_components(g, d);

  EacReport r;
  r.n = n;
  r.seed = anneal.seed;
  r.budget = anneal.budget;
  r.gfg.v = g.size();
  r.gfg.a = g.arc_count();
  r.gfg.c = weak_component_count(g);
  for (SccId c : components_of_kind(classes, ComponentKind::Gac)) {
    ++(classes[c].disconnected ? r.gfg.g_disconnected : r.gfg.g_connected);
  }
  const auto longest = longest_path_gfg(g);
  r.gfg.l = longest.length;
  r.longest_path = longest.witnesses.front();
  r.cg.v = d.count();
  r.cg.a = d.condensation_arc_count();
  r.cg.l = longest_path_condensation(d).length;

  r.eac_vertices = eac_vertices(g, d, classes);
  if (r.eac_vertices.empty()) return r;
  const auto sub = eac_subgraph(g, d, classes);
  const Digraph e = sub.digraph().without_loops();
  EacMetrics m;
  m.v = sub.size();
  m.a = sub.arc_count();
  PathProblem problem;
  problem.graph = e;
  problem.mode = PathMode::HamiltonianPath;
  m.h_paths = hamiltonian_paths(problem).count;
  problem.mode = PathMode::HamiltonianCycle;
  const auto cycles = hamiltonian_cycles(problem);
  m.h_cycles = cycles.count;
  r.hamiltonian_cycles = cycles.witnesses;
  m.planar = is_planar(e);
  m.x_bound = crossing_upper_bound(e, anneal).crossings;
  m.x_exact = (m.planar && m.x_bound == 0) || (!m.planar && m.x_bound == 1);
  r.eac = m;
  return r;
}

namespace detail {

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text) || !out.flush()) throw IoError("cannot write " + path.string());
}

}  // namespace detail

/// Writes `<out>/n=<n>/{report.json, gfg.dot, eac.dot, census.txt}` and
/// returns the report directory.
inline std::filesystem::path write_analysis(std::uint64_t n, const SpfTable& table,
                                            const std::filesystem::path& out,
                                            const AnnealOptions& anneal = {}) {
  const auto report = build_report(n, table, anneal);
  const auto g = build_gfg(n, table);
  const auto d = strongly_connected_components(g);
  const auto classes = classify_components(g, d);
  const auto map = condensation_map(g, d, classes);

  const auto dir = out / ("n=" + std::to_string(n));
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  detail::write_text(dir / "report.json", report_to_json(report));
  DotOptions full;
  full.name = "F_" + std::to_string(n);
  full.clusters = map.cell_of;
  detail::write_text(dir / "gfg.dot", export_dot(g, full));
  DotOptions eac;
  eac.name = "eac(F_" + std::to_string(n) + ")";
  detail::write_text(dir / "eac.dot", export_dot(eac_subgraph(g, d, classes), eac));
  detail::write_text(dir / "census.txt", render_census(census(map, d)));
  return dir;
}

}  // namespace gfg
