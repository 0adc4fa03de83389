#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <set>

#include "gfg/components.hpp"
#include "gfg/paths.hpp"
#include "oracles.hpp"

using namespace gfg;

namespace {

const SpfTable& table() {
  static const SpfTable t(7000, kDefaultSpfBudgetBytes);
  return t;
}

Digraph eac_of(std::uint64_t n) {
  const auto g = build_gfg(n, table());
  const auto d = strongly_connected_components(g);
  const auto cls = classify_components(g, d);
  std::vector<Vertex> keep;
  for (auto p : eac_vertices(g, d, cls)) keep.push_back(g.require_index(p));
  return g.digraph().induced(keep);
}

PathProblem problem(const Digraph& g, PathMode mode) {
  PathProblem p;
  p.graph = g;
  p.mode = mode;
  return p;
}

oracle::Adj adjacency(const Digraph& g) {
  oracle::Adj a;
  for (Vertex v = 0; v < g.size(); ++v) {
    auto& out = a[g.label(v)];
    for (Vertex t : g.out(v)) {
      if (t != v) out.insert(g.label(t));
    }
  }
  return a;
}

// Independent witness check: distinct vertices, consecutive arcs present.
bool is_path(const Digraph& g, const std::vector<std::uint64_t>& w) {
  if (std::set<std::uint64_t>(w.begin(), w.end()).size() != w.size()) return false;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    const Vertex a = g.find(w[i]), b = g.find(w[i + 1]);
    if (a == g.size() || b == g.size() || !g.has_arc(a, b)) return false;
  }
  return true;
}

Digraph random_digraph(std::mt19937_64& rng, std::size_t n, double p) {
  std::vector<std::uint64_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = 10 + 3 * i;
  Digraph g(labels);
  std::bernoulli_distribution arc(p);
  for (Vertex s = 0; s < n; ++s) {
    for (Vertex t = 0; t < n; ++t) {
      if (s != t && arc(rng)) g.add_arc(s, t);
    }
  }
  return g;
}

const std::vector<std::uint64_t> kRows{128, 1718, 1862, 1928, 2200, 6142};

}  // namespace

TEST(HamiltonianPaths, KnownCounts) {
  const std::vector<std::uint64_t> want{5, 30, 6, 89, 2, 12};
  for (std::size_t i = 0; i < kRows.size(); ++i) {
    const auto e = eac_of(kRows[i]);
    const auto r = hamiltonian_paths(problem(e, PathMode::HamiltonianPath));
    EXPECT_EQ(r.count, want[i]) << kRows[i];
    for (const auto& w : r.witnesses) {
      EXPECT_EQ(w.size(), e.size());
      EXPECT_TRUE(is_path(e, w));
    }
  }
}

TEST(HamiltonianPaths, Trivial) {
  Digraph one(std::vector<std::uint64_t>{7});
  EXPECT_EQ(hamiltonian_paths(problem(one, PathMode::HamiltonianPath)).count, 1u);
  Digraph empty;
  EXPECT_EQ(hamiltonian_paths(problem(empty, PathMode::HamiltonianPath)).count, 0u);
}

TEST(HamiltonianPaths, MatchesPermutationOracle) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_digraph(rng, 2 + i % 7, 0.45);
    ASSERT_EQ(hamiltonian_paths(problem(g, PathMode::HamiltonianPath)).count,
              oracle::hamiltonian_sequences(adjacency(g)));
  }
}

TEST(HamiltonianCycles, KnownCounts) {
  const std::vector<std::uint64_t> want{0, 0, 0, 3, 1, 0};
  for (std::size_t i = 0; i < kRows.size(); ++i) {
    EXPECT_EQ(hamiltonian_cycles(problem(eac_of(kRows[i]), PathMode::HamiltonianCycle)).count, want[i])
        << kRows[i];
  }
}

TEST(HamiltonianCycles, F2200TrivialCycle) {
  const auto r = hamiltonian_cycles(problem(eac_of(2200), PathMode::HamiltonianCycle));
  ASSERT_EQ(r.witnesses.size(), 1u);
  EXPECT_EQ(r.witnesses[0], (std::vector<std::uint64_t>{3, 13}));
}

TEST(HamiltonianCycles, F1928Witnesses) {
  const auto r = hamiltonian_cycles(problem(eac_of(1928), PathMode::HamiltonianCycle));
  std::set<std::vector<std::uint64_t>> got(r.witnesses.begin(), r.witnesses.end());
  // Listed cycles rotated to start at the smallest vertex, 3.
  auto canon = [](std::vector<std::uint64_t> c) {
    std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
    return c;
  };
  const std::set<std::vector<std::uint64_t>> want{
      canon({641, 5, 113, 7, 3, 53, 73, 103, 383, 13, 17, 619, 71, 11}),
      canon({641, 5, 113, 7, 17, 619, 71, 11, 3, 53, 73, 103, 383, 13}),
      canon({641, 5, 53, 73, 103, 383, 13, 17, 619, 71, 11, 113, 7, 3})};
  EXPECT_EQ(got, want);
}

TEST(HamiltonianCycles, RotationsRecoverRootedCircuits) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_digraph(rng, 2 + i % 7, 0.5);
    ASSERT_EQ(hamiltonian_cycles(problem(g, PathMode::HamiltonianCycle)).count * g.size(),
              oracle::rooted_circuits(adjacency(g)));
  }
}

TEST(PathCaps, ResourceErrorNamesCap) {
  std::vector<std::uint64_t> labels(41);
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = i;
  auto p = problem(Digraph(labels), PathMode::HamiltonianPath);
  try {
    hamiltonian_paths(p);
    FAIL();
  } catch (const ResourceError& e) {
    EXPECT_NE(std::string(e.what()).find("40"), std::string::npos);
  }
  p.cap = 64;
  EXPECT_NO_THROW(hamiltonian_paths(p));
}

TEST(LongestPathGeneral, Examples) {
  EXPECT_EQ(longest_path_general(problem(eac_of(128), PathMode::Longest)).length, 8u);
  EXPECT_EQ(longest_path_general(problem(eac_of(1862), PathMode::Longest)).length, 21u);
  const auto two = Digraph::from_label_arcs({1, 2}, {{1, 2}});
  const auto r = longest_path_general(problem(two, PathMode::Longest));
  EXPECT_EQ(r.length, 2u);
  EXPECT_EQ(r.witnesses[0], (std::vector<std::uint64_t>{1, 2}));
}

TEST(LongestPathGeneral, HamiltonianImpliesFullLength) {
  for (auto n : kRows) {
    const auto e = eac_of(n);
    if (hamiltonian_paths(problem(e, PathMode::HamiltonianPath)).count > 0) {
      EXPECT_EQ(longest_path_general(problem(e, PathMode::Longest)).length, e.size()) << n;
    }
  }
}

TEST(LongestPathGeneral, LexicographicallySmallestWitness) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_digraph(rng, 2 + i % 6, 0.4);
    const auto r = longest_path_general(problem(g, PathMode::Longest));
    ASSERT_EQ(r.length, oracle::longest_simple_path(adjacency(g)));
    ASSERT_TRUE(is_path(g, r.witnesses[0]));
    // Smallest witness by brute force over all simple paths of that length.
    std::vector<std::uint64_t> labels = g.labels();
    std::sort(labels.begin(), labels.end());
    std::vector<std::uint64_t> best;
    std::function<void(std::vector<std::uint64_t>&)> go = [&](std::vector<std::uint64_t>& cur) {
      if (cur.size() == r.length) {
        if (best.empty() || cur < best) best = cur;
        return;
      }
      for (auto l : labels) {
        if (std::find(cur.begin(), cur.end(), l) != cur.end()) continue;
        cur.push_back(l);
        if (is_path(g, cur)) go(cur);
        cur.pop_back();
      }
    };
    std::vector<std::uint64_t> cur;
    go(cur);
    ASSERT_EQ(r.witnesses[0], best);
  }
}

TEST(LongestPathGeneral, PinnedStartAndWeights) {
  const auto g = Digraph::from_label_arcs({1, 2, 3}, {{1, 2}, {2, 3}, {3, 1}});
  auto p = problem(g, PathMode::Longest);
  p.first = 3;
  auto r = longest_path_general(p);
  EXPECT_EQ(r.witnesses[0], (std::vector<std::uint64_t>{3, 1, 2}));
  p.first.reset();
  p.weights = {1, 10, 1};
  r = longest_path_general(p);
  EXPECT_EQ(r.length, 12u);
  p.first = 99;
  EXPECT_THROW(longest_path_general(p), DomainError);
}

TEST(LongestPathDag, Examples) {
  const auto chain = Digraph::from_label_arcs({1, 2, 3, 4, 5}, {{1, 2}, {2, 3}, {3, 4}, {4, 5}});
  EXPECT_EQ(longest_path_dag(chain).length, 5u);
  const auto d10 = strongly_connected_components(build_gfg(10, table()));
  EXPECT_EQ(longest_path_dag(d10.condensation()).length, 1u);
  const auto cyclic = Digraph::from_label_arcs({1, 2}, {{1, 2}, {2, 1}});
  EXPECT_THROW(longest_path_dag(cyclic), DomainError);
}

TEST(LongestPathDag, WeightedMatchesBruteForce) {
  // A contracted chain stands for the path it replaces: weights add up.
  const auto dag = Digraph::from_label_arcs({1, 2, 3, 4}, {{1, 2}, {1, 3}, {2, 4}, {3, 4}});
  const auto r = longest_path_dag(dag, {1, 2, 5, 1});
  EXPECT_EQ(r.length, 7u);
  EXPECT_EQ(r.witnesses[0], (std::vector<std::uint64_t>{1, 3, 4}));
  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 2 + i % 8;
    std::vector<std::uint64_t> labels(n), w(n);
    for (std::size_t k = 0; k < n; ++k) labels[k] = k, w[k] = 1 + rng() % 5;
    Digraph g(labels);
    for (Vertex s = 0; s < n; ++s) {
      for (Vertex t = s + 1; t < n; ++t) {
        if (rng() % 3 == 0) g.add_arc(s, t);
      }
    }
    PathProblem p = problem(g, PathMode::Longest);
    p.weights = w;
    ASSERT_EQ(longest_path_dag(g, w).length, longest_path_general(p).length);
  }
}

TEST(LongestPathCondensation, KnownValues) {
  const std::vector<std::uint64_t> want{4, 8, 7, 11, 12, 10};
  for (std::size_t i = 0; i < kRows.size(); ++i) {
    const auto d = strongly_connected_components(build_gfg(kRows[i], table()));
    EXPECT_EQ(longest_path_condensation(d).length, want[i]) << kRows[i];
  }
  EXPECT_EQ(longest_path_condensation(strongly_connected_components(build_gfg(10, table()))).length, 1u);
}

TEST(LongestPathGfg, KnownValues) {
  const std::vector<std::uint64_t> want{11, 34, 28, 24, 17, 18};
  for (std::size_t i = 0; i < kRows.size(); ++i) {
    const auto g = build_gfg(kRows[i], table());
    const auto r = longest_path_gfg(g);
    EXPECT_EQ(r.length, want[i]) << kRows[i];
    ASSERT_EQ(r.witnesses[0].size(), r.length);
    EXPECT_TRUE(is_path(g.digraph(), r.witnesses[0])) << kRows[i];
  }
}

TEST(LongestPathGfg, F128Witness) {
  const auto r = longest_path_gfg(build_gfg(128, table()));
  EXPECT_EQ(r.witnesses[0], (std::vector<std::uint64_t>{29, 41, 5, 3, 23, 13, 11, 7, 37, 17, 43}));
}

TEST(LongestPathGfg, EqualsExhaustiveSearchUpTo100) {
  for (std::uint64_t n = 4; n <= 100; n += 2) {
    const auto g = build_gfg(n, table());
    ASSERT_LE(g.size(), 25u);
    const auto pipeline = longest_path_gfg(g);
    const auto exhaustive = longest_path_general(problem(g.digraph(), PathMode::Longest));
    ASSERT_EQ(pipeline.length, exhaustive.length) << n;
    ASSERT_EQ(pipeline.length, oracle::longest_simple_path(adjacency(g.digraph()))) << n;
    ASSERT_TRUE(is_path(g.digraph(), pipeline.witnesses[0])) << n;
  }
}

TEST(LongestPathGfg, EqualsExhaustiveSearchOnInducedSubgraphs) {
  // Larger pipelines (inner multi-vertex SCCs present) against the exact
  // general solver on reverse-reachable pieces small enough for it.
  std::size_t checked = 0;
  for (std::uint64_t n = 102; n <= 3000 && checked < 40; n += 2) {
    const auto g = build_gfg(n, table());
    for (Vertex v = 0; v < g.size() && checked < 40; v += 7) {
      const auto sub = reverse_reachable_subgraph(g, g.prime(v));
      if (sub.size() < 12 || sub.size() > 26) continue;
      const auto d = strongly_connected_components(sub);
      bool inner_mv = false;
      for (SccId c = 0; c < d.count(); ++c) inner_mv |= !d.is_source(c) && d.members[c].size() > 1;
      if (!inner_mv) continue;
      ++checked;
      ASSERT_EQ(longest_path_gfg(sub).length,
                longest_path_general(problem(sub.digraph(), PathMode::Longest)).length)
          << n << " " << g.prime(v);
    }
  }
  EXPECT_GT(checked, 0u);
}
