#include <gtest/gtest.h>

#include <set>

#include "gfg/components.hpp"
#include "gfg/search.hpp"
#include "oracles.hpp"

using namespace gfg;

namespace {

const SpfTable& table() {
  static const SpfTable t(10000, kDefaultSpfBudgetBytes);
  return t;
}

struct Analysis {
  FactorizationGraph g;
  SccDecomposition d;
  std::vector<ComponentClass> classes;
  CondensationMap map;
};

Analysis analyse(std::uint64_t n) {
  Analysis a{build_gfg(n, table()), {}, {}, {}};
  a.d = strongly_connected_components(a.g);
  a.classes = classify_components(a.g, a.d);
  a.map = condensation_map(a.g, a.d, a.classes);
  return a;
}

std::set<std::uint64_t> members(const Analysis& a, SccId c) {
  std::set<std::uint64_t> s;
  for (Vertex v : a.d.members[c]) s.insert(a.g.prime(v));
  return s;
}

std::size_t count_kind(const Analysis& a, ComponentKind k) { return components_of_kind(a.classes, k).size(); }

MapCell cell(const Analysis& a, std::uint64_t p) { return a.map.cell_of[a.g.require_index(p)]; }

}  // namespace

TEST(Scc, F10) {
  const auto a = analyse(10);
  std::set<std::set<std::uint64_t>> got;
  for (SccId c = 0; c < a.d.count(); ++c) got.insert(members(a, c));
  EXPECT_EQ(got, (std::set<std::set<std::uint64_t>>{{2}, {5}, {3, 7}}));
  EXPECT_EQ(condensation_arcs_count(a.d), 0u);
}

TEST(Scc, CondensationSizesOfKnownRows) {
  const std::vector<std::tuple<std::uint64_t, std::size_t, std::size_t>> rows{
      {128, 20, 19}, {1718, 220, 308}, {1862, 224, 312}, {1928, 248, 373}, {2200, 276, 471}, {6142, 716, 1258}};
  for (const auto& [n, v, arcs] : rows) {
    const auto a = analyse(n);
    EXPECT_EQ(a.d.count(), v) << n;
    EXPECT_EQ(condensation_arcs_count(a.d), arcs) << n;
  }
}

TEST(Scc, MatchesMutualReachabilityOracle) {
  for (std::uint64_t n = 4; n <= 700; n += 2) {
    const auto a = analyse(n);
    const auto o = oracle::sccs(oracle::gfg(n));
    std::set<std::set<std::uint64_t>> got, want(o.comps.begin(), o.comps.end());
    for (SccId c = 0; c < a.d.count(); ++c) got.insert(members(a, c));
    ASSERT_EQ(got, want) << n;
    ASSERT_EQ(a.d.condensation_arc_count(), o.cond_arcs.size()) << n;
  }
}

TEST(Scc, IdsAreTopological) {
  for (std::uint64_t n : {128, 1928, 6142}) {
    const auto a = analyse(n);
    for (SccId c = 0; c < a.d.count(); ++c) {
      for (SccId t : a.d.cond_out[c]) ASSERT_LT(c, t);
    }
  }
}

TEST(Scc, SourceSccsAreMinimalClosedSets) {
  // Brute force over all vertex subsets while |V| <= 12.
  for (std::uint64_t n = 4; n <= 42; n += 2) {
    const auto a = analyse(n);
    const std::size_t k = a.g.size();
    ASSERT_LE(k, 12u);
    std::vector<std::uint32_t> closed;
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      bool ok = true;
      for (Vertex t = 0; t < k && ok; ++t) {
        if (!(mask >> t & 1)) continue;
        for (const auto& p : a.g.predecessors(t)) {
          if (!(mask >> p.vertex & 1)) ok = false;
        }
      }
      if (ok) closed.push_back(mask);
    }
    std::set<std::uint32_t> minimal;
    for (auto m : closed) {
      bool min = true;
      for (auto o : closed) {
        if (o != m && (o & m) == o) min = false;
      }
      if (min) minimal.insert(m);
    }
    std::set<std::uint32_t> sources;
    for (SccId c = 0; c < a.d.count(); ++c) {
      if (!a.d.is_source(c)) continue;
      std::uint32_t m = 0;
      for (Vertex v : a.d.members[c]) m |= 1u << v;
      sources.insert(m);
    }
    ASSERT_EQ(minimal, sources) << n;
  }
}

TEST(Classify, F128) {
  const auto a = analyse(128);
  EXPECT_EQ(count_kind(a, ComponentKind::Eac), 1u);
  EXPECT_EQ(count_kind(a, ComponentKind::Gac), 3u);
  EXPECT_EQ(count_kind(a, ComponentKind::Ordinary), 16u);
  EXPECT_EQ(count_kind(a, ComponentKind::Tac), 0u);
  std::size_t disconnected = 0;
  for (SccId c : components_of_kind(a.classes, ComponentKind::Gac)) disconnected += a.classes[c].disconnected;
  EXPECT_EQ(disconnected, 2u);
  EXPECT_EQ(eac_vertices(a.g, a.d, a.classes), (std::vector<std::uint64_t>{3, 5, 7, 11, 13, 23, 29, 41}));
}

TEST(Classify, F10) {
  const auto a = analyse(10);
  for (SccId c = 0; c < a.d.count(); ++c) {
    const auto m = members(a, c);
    const auto k = a.classes[c].kind;
    if (m == std::set<std::uint64_t>{2}) EXPECT_EQ(k, ComponentKind::Tac);
    if (m == std::set<std::uint64_t>{5}) EXPECT_EQ(k, ComponentKind::Gac);
    if (m == std::set<std::uint64_t>{3, 7}) EXPECT_EQ(k, ComponentKind::Gac);
    EXPECT_TRUE(a.classes[c].disconnected);
  }
}

TEST(Classify, F2200TwinEac) {
  const auto a = analyse(2200);
  EXPECT_EQ(eac_vertices(a.g, a.d, a.classes), (std::vector<std::uint64_t>{3, 13}));
}

TEST(Classify, KindsAgreeWithDefinitions) {
  for (std::uint64_t n = 4; n <= 3000; n += 2) {
    const auto a = analyse(n);
    for (SccId c = 0; c < a.d.count(); ++c) {
      const auto& m = a.d.members[c];
      const auto k = a.classes[c].kind;
      if (!a.d.is_source(c)) {
        ASSERT_EQ(k, ComponentKind::Ordinary);
        continue;
      }
      if (m.size() == 1) {
        const auto p = a.g.prime(m[0]);
        const auto e = prime_power_exponent(n - p, p);
        ASSERT_TRUE(e.has_value()) << n << " " << p;
        ASSERT_EQ(k, *e >= 2 ? ComponentKind::Tac : ComponentKind::Gac);
      } else if (m.size() == 2 && a.g.prime(m[0]) + a.g.prime(m[1]) == n) {
        ASSERT_EQ(k, ComponentKind::Gac);
      } else {
        ASSERT_EQ(k, ComponentKind::Eac);
      }
    }
  }
}

TEST(Classify, NoEacMeansAGoldbachPartition) {
  for (std::uint64_t n = 4; n <= 10000; n += 2) {
    const auto a = analyse(n);
    if (count_kind(a, ComponentKind::Eac) == 0) ASSERT_GT(count_kind(a, ComponentKind::Gac), 0u) << n;
  }
}

TEST(CondensationMap, Examples) {
  const auto a = analyse(128);
  EXPECT_EQ(cell(a, 3), (MapCell{MapRow::Source, MapColumn::Exceptional}));
  for (SccId c : components_of_kind(a.classes, ComponentKind::Tac)) {
    EXPECT_EQ(a.map.scc_cell[c], (MapCell{MapRow::Source, MapColumn::Hybrid}));
  }
  EXPECT_EQ(cell(analyse(10), 5), (MapCell{MapRow::Source, MapColumn::Goldbach}));
  // 2^3 = 8 = 10 - 2 makes {2} a TAC of F_10.
  EXPECT_EQ(cell(analyse(10), 2), (MapCell{MapRow::Source, MapColumn::Hybrid}));
}

TEST(CondensationMap, ColumnsMatchReachabilityOracle) {
  for (std::uint64_t n : {128, 1718, 1928, 2200}) {
    const auto a = analyse(n);
    const auto o = oracle::gfg(n);
    std::map<std::uint64_t, std::vector<std::uint64_t>> out;
    for (const auto& [st, w] : o.arcs) out[st.first].push_back(st.second);
    auto reach_from = [&](ComponentKind k) {
      std::set<std::uint64_t> seen;
      std::vector<std::uint64_t> stack;
      for (SccId c : components_of_kind(a.classes, k)) {
        for (auto p : members(a, c)) {
          seen.insert(p);
          stack.push_back(p);
        }
      }
      while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (auto t : out[v]) {
          if (seen.insert(t).second) stack.push_back(t);
        }
      }
      return seen;
    };
    const auto from_eac = reach_from(ComponentKind::Eac), from_gac = reach_from(ComponentKind::Gac);
    for (Vertex v = 0; v < a.g.size(); ++v) {
      const auto p = a.g.prime(v);
      const bool tac = a.classes[a.d.scc_of[v]].kind == ComponentKind::Tac;
      MapColumn want = MapColumn::Hybrid;
      if (!tac && !from_eac.count(p)) want = MapColumn::Goldbach;
      else if (!tac && !from_gac.count(p)) want = MapColumn::Exceptional;
      ASSERT_EQ(a.map.cell_of[v].column, want) << n << " " << p;
    }
  }
}

TEST(Census, Examples) {
  const auto a = analyse(128);
  const auto cs = census(a.map, a.d);
  const auto src = static_cast<int>(MapRow::Source);
  EXPECT_EQ(cs[src][static_cast<int>(MapColumn::Exceptional)], (std::vector<CensusEntry>{{1, 8}}));
  EXPECT_TRUE(cs[src][static_cast<int>(MapColumn::Hybrid)].empty());
  const auto b = analyse(10);
  EXPECT_EQ(census(b.map, b.d)[src][static_cast<int>(MapColumn::Goldbach)],
            (std::vector<CensusEntry>{{1, 2}, {1, 1}}));
}

TEST(Census, CoversEveryVertex) {
  for (std::uint64_t n : {10, 128, 752, 1862, 6142}) {
    const auto a = analyse(n);
    std::size_t total = 0;
    for (const auto& row : census(a.map, a.d)) {
      for (const auto& entries : row) {
        for (const auto& e : entries) total += e.count * e.size;
      }
    }
    EXPECT_EQ(total, a.g.size()) << n;
  }
}

TEST(Census, InnerMultiVertexSccs) {
  // Sizes of the non-source SCCs with more than one vertex.
  const std::vector<std::pair<std::uint64_t, std::multiset<std::size_t>>> rows{
      {128, {}}, {1718, {}}, {1862, {6}}, {1928, {3}}, {2200, {5}}, {6142, {6, 2}}};
  for (const auto& [n, sizes] : rows) {
    const auto a = analyse(n);
    std::multiset<std::size_t> got;
    for (SccId c = 0; c < a.d.count(); ++c) {
      if (!a.d.is_source(c) && a.d.members[c].size() > 1) got.insert(a.d.members[c].size());
    }
    EXPECT_EQ(got, sizes) << n;
  }
}

TEST(Census, RenderHasAllLabels) {
  const auto a = analyse(128);
  const auto text = render_census(census(a.map, a.d));
  for (const char* s : {"SOURCE", "INNER", "SINK", "GOLDBACH", "HYBRID", "EXCEPTIONAL", "1 x 8"}) {
    EXPECT_NE(text.find(s), std::string::npos) << s;
  }
}
