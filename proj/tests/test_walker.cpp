#include <gtest/gtest.h>

#include <map>

#include "rst/errors.hpp"
#include "rst/generators.hpp"
#include "rst/oracle.hpp"
#include "rst/walker.hpp"
#include "support.hpp"

namespace rst {
namespace {

const TableOptions kOptions{};

// K4 with S = {0, 1} and one component {2, 3}: both shortcut modes fire.
Decomposition k4_split(const Graph& g) { return Decomposition::from_components(g, {{2, 3}}, 0.5, true); }

// 3x3 grid, S = middle column, components = left and right columns.
Decomposition grid_columns(const Graph& g) {
  return Decomposition::from_components(g, {{0, 3, 6}, {2, 5, 8}}, 0.5, true);
}

TEST(AldousBroder, PathHasOneTree) {
  const Graph g = gen::path(6);
  Rng rng(3);
  const auto expected = std::vector<Edge>(g.edges().begin(), g.edges().end());
  for (int i = 0; i < 50; ++i) EXPECT_EQ(to_tree(aldous_broder(g, rng)), expected);
}

TEST(Wilson, PathHasOneTree) {
  const Graph g = gen::path(6);
  Rng rng(3);
  const auto expected = std::vector<Edge>(g.edges().begin(), g.edges().end());
  for (Vertex root = 0; root < 6; ++root) EXPECT_EQ(to_tree(wilson(g, root, rng)), expected);
}

template <typename Draw>
void expect_uniform_frequencies(const Graph& g, int runs, Draw draw) {
  const TreeIndex index(g);
  std::vector<int> counts(index.size(), 0);
  Rng rng(2024);
  for (int i = 0; i < runs; ++i) ++counts[index.index_of(to_tree(draw(rng)))];
  const double p = 1.0 / static_cast<double>(index.size());
  for (std::size_t t = 0; t < counts.size(); ++t) {
    EXPECT_NEAR(counts[t] / double(runs), p, testing::four_sigma(p, runs)) << "tree " << t;
  }
}

TEST(AldousBroder, TriangleUniform) {
  const Graph g = gen::cycle(3);
  expect_uniform_frequencies(g, 30000, [&](Rng& rng) { return aldous_broder(g, rng); });
}

TEST(AldousBroder, K4Uniform) {
  const Graph g = gen::complete(4);
  expect_uniform_frequencies(g, 100000, [&](Rng& rng) { return aldous_broder(g, rng); });
}

TEST(Wilson, TriangleUniform) {
  const Graph g = gen::cycle(3);
  expect_uniform_frequencies(g, 30000, [&](Rng& rng) { return wilson(g, stationary_sample(g, rng), rng); });
}

TEST(Wilson, K4Uniform) {
  const Graph g = gen::complete(4);
  expect_uniform_frequencies(g, 100000, [&](Rng& rng) { return wilson(g, 0, rng); });
}

TEST(Wilson, RejectsBadRoot) {
  const Graph g = gen::path(3);
  Rng rng(1);
  EXPECT_THROW(wilson(g, 3, rng), std::invalid_argument);
}

TEST(SimulateShortcut, EmptyDecompositionMatchesAldousBroder) {
  const Graph g = gen::erdos_renyi_connected(30, 0.15, 4);
  const Decomposition d = Decomposition::all_cut(g, 0.5);
  const TransitionTable edge_tables = build_tables(g, d, ExitMode::Edge, kOptions);
  const TransitionTable vertex_tables = build_tables(g, d, ExitMode::Vertex, kOptions);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng ab_rng(seed);
    StepStats ab_stats;
    const Arborescence ab = aldous_broder(g, ab_rng, &ab_stats);
    for (WalkMode mode : {WalkMode::Plain, WalkMode::EdgeShortcut, WalkMode::VertexShortcut}) {
      Rng rng(seed);
      WalkOptions options;
      options.mode = mode;
      const TransitionTable* tables = mode == WalkMode::VertexShortcut ? &vertex_tables : &edge_tables;
      const WalkResult walk = simulate_shortcut(g, d, mode == WalkMode::Plain ? nullptr : tables, options, rng);
      EXPECT_EQ(walk.forest.root, ab.root());
      EXPECT_EQ(walk.forest.parent, ab.parents());
      EXPECT_EQ(walk.stats.verbatim_steps, ab_stats.verbatim_steps);
      EXPECT_EQ(walk.stats.shortcut_jumps, 0u);
      EXPECT_EQ(walk.stats.gap_count, 0u);
      // Both generators must be in the same state afterwards.
      EXPECT_EQ(rng.next(), Rng(ab_rng).next());
    }
  }
}

// Checks the transcript against the shortcut rules and returns the number of
// jumps seen.
std::size_t check_transcript(const Graph& g, const Decomposition& d, const WalkResult& walk, WalkMode mode) {
  const auto& tr = walk.transcript;
  EXPECT_EQ(tr.size(), walk.stats.transcript_length() + 1);
  std::vector<char> seen(g.num_vertices(), 0);
  seen[tr.front().vertex] = 1;
  std::size_t jumps = 0;
  for (std::size_t k = 1; k < tr.size(); ++k) {
    const Vertex prev = tr[k - 1].vertex;
    const Vertex cur = tr[k].vertex;
    if (!tr[k].jump) {
      EXPECT_TRUE(g.has_edge(prev, cur)) << "step " << k;
    } else {
      ++jumps;
      const int comp = d.component_of(prev);
      EXPECT_GE(comp, 0);
      if (mode == WalkMode::EdgeShortcut) {
        // Jump stays in the (fully visited) component: no first visit.
        EXPECT_EQ(d.component_of(cur), comp);
        EXPECT_TRUE(seen[cur]);
      } else {
        EXPECT_EQ(d.component_of(cur), -1);
        if (!seen[cur]) EXPECT_TRUE(walk.forest.gap[cur]);
      }
    }
    seen[cur] = 1;
  }
  EXPECT_EQ(jumps, walk.stats.shortcut_jumps);
  return jumps;
}

TEST(SimulateShortcut, TranscriptsFollowShortcutRules) {
  const Graph grid = gen::grid(3, 3);
  const Graph lolli = gen::lollipop(8, 30);
  const std::vector<std::pair<const Graph*, Decomposition>> cases = {
      {&grid, grid_columns(grid)},
      {&lolli, strong_decompose(lolli, 0.2)},
  };
  for (const auto& [g, d] : cases) {
    for (WalkMode mode : {WalkMode::EdgeShortcut, WalkMode::VertexShortcut}) {
      const TransitionTable tables =
          build_tables(*g, d, mode == WalkMode::EdgeShortcut ? ExitMode::Edge : ExitMode::Vertex, kOptions);
      WalkOptions options;
      options.mode = mode;
      options.record_transcript = true;
      std::size_t jumps = 0;
      for (std::uint64_t seed = 1; seed <= 300; ++seed) {
        Rng rng(seed);
        const WalkResult walk = simulate_shortcut(*g, d, &tables, options, rng);
        jumps += check_transcript(*g, d, walk, mode);
        // Every vertex is visited, and gaps sit in C(S) minus the root.
        const auto& boundary = d.boundary_cut_vertices();
        for (std::size_t v = 0; v < g->num_vertices(); ++v) {
          if (static_cast<Vertex>(v) == walk.forest.root) continue;
          if (walk.forest.gap[v]) {
            EXPECT_EQ(mode, WalkMode::VertexShortcut);
            EXPECT_TRUE(std::binary_search(boundary.begin(), boundary.end(), static_cast<Vertex>(v)));
          } else {
            EXPECT_GE(walk.forest.parent[v], 0);
          }
        }
        if (mode == WalkMode::EdgeShortcut) EXPECT_NO_THROW(extract(*g, walk.forest));
      }
      EXPECT_GT(jumps, 0u) << "no shortcut fired";
    }
  }
}

TEST(SimulateShortcut, FallbackStopsShortcuts) {
  const Graph g = gen::lollipop(8, 30);
  const Decomposition d = strong_decompose(g, 0.2);
  const TransitionTable tables = build_tables(g, d, ExitMode::Vertex, kOptions);
  WalkOptions options;
  options.mode = WalkMode::VertexShortcut;
  options.fallback_threshold = 10;
  options.record_transcript = true;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Rng rng(seed);
    const WalkResult walk = simulate_shortcut(g, d, &tables, options, rng);
    EXPECT_TRUE(walk.stats.fallback);
    for (std::size_t k = 11; k < walk.transcript.size(); ++k) EXPECT_FALSE(walk.transcript[k].jump);
  }
}

TEST(SimulateShortcut, DefaultThresholdIsMn) {
  const Graph path = gen::path(10);
  const Decomposition d = Decomposition::all_cut(path, 0.5);
  WalkOptions explicit_mn;
  explicit_mn.fallback_threshold = path.num_edges() * path.num_vertices();
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng a(seed);
    Rng b(seed);
    EXPECT_EQ(simulate_shortcut(path, d, nullptr, {}, a).stats.fallback,
              simulate_shortcut(path, d, nullptr, explicit_mn, b).stats.fallback);
  }
  // Cover time of K10 is far below m*n = 450.
  const Graph k10 = gen::complete(10);
  const Decomposition dk = Decomposition::all_cut(k10, 0.5);
  int fallbacks = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    Rng rng(seed);
    fallbacks += simulate_shortcut(k10, dk, nullptr, {}, rng).stats.fallback ? 1 : 0;
  }
  EXPECT_EQ(fallbacks, 0);
}

TEST(SimulateShortcut, TableErrors) {
  const Graph g = gen::complete(4);
  const Decomposition d = k4_split(g);
  const TransitionTable edge_tables = build_tables(g, d, ExitMode::Edge, kOptions);
  Rng rng(1);
  WalkOptions options;
  options.mode = WalkMode::VertexShortcut;
  EXPECT_THROW(simulate_shortcut(g, d, nullptr, options, rng), std::invalid_argument);
  EXPECT_THROW(simulate_shortcut(g, d, &edge_tables, options, rng), std::invalid_argument);

  // Tables built for another decomposition lack rows for {2, 3}.
  const Decomposition other = Decomposition::from_components(g, {{0, 1}}, 0.5, true);
  const TransitionTable wrong = build_tables(g, other, ExitMode::Edge, kOptions);
  options.mode = WalkMode::EdgeShortcut;
  bool threw = false;
  for (std::uint64_t seed = 1; seed <= 50 && !threw; ++seed) {
    Rng r(seed);
    try {
      simulate_shortcut(g, d, &wrong, options, r);
    } catch (const TableError&) {
      threw = true;
    }
  }
  EXPECT_TRUE(threw);
}

TEST(SimulateShortcut, Deterministic) {
  const Graph g = gen::grid(3, 3);
  const Decomposition d = grid_columns(g);
  const TransitionTable tables = build_tables(g, d, ExitMode::Vertex, kOptions);
  WalkOptions options;
  options.mode = WalkMode::VertexShortcut;
  Rng a(77);
  Rng b(77);
  const WalkResult x = simulate_shortcut(g, d, &tables, options, a);
  const WalkResult y = simulate_shortcut(g, d, &tables, options, b);
  EXPECT_EQ(x.forest.parent, y.forest.parent);
  EXPECT_EQ(x.forest.gap, y.forest.gap);
  EXPECT_EQ(x.stats.transcript_length(), y.stats.transcript_length());
}

TEST(SimulateShortcut, EdgeModeMatchesPlainDistribution) {
  // On K4 the edge-shortcut walk and the plain walk induce the same
  // arborescence distribution.
  const Graph g = gen::complete(4);
  const Decomposition d = k4_split(g);
  const TransitionTable tables = build_tables(g, d, ExitMode::Edge, kOptions);
  constexpr int kRuns = 100000;
  std::map<std::vector<Vertex>, int> plain;
  std::map<std::vector<Vertex>, int> shortcut;
  WalkOptions options;
  options.mode = WalkMode::EdgeShortcut;
  Rng rng_a(10);
  Rng rng_b(20);
  std::uint64_t jumps = 0;
  for (int i = 0; i < kRuns; ++i) {
    ++plain[aldous_broder(g, rng_a).parents()];
    const WalkResult w = simulate_shortcut(g, d, &tables, options, rng_b);
    jumps += w.stats.shortcut_jumps;
    ++shortcut[w.forest.parent];
  }
  EXPECT_GT(jumps, 0u);
  double tv = 0.0;
  for (const auto& [key, c] : plain) tv += std::abs(c - (shortcut.count(key) ? shortcut.at(key) : 0));
  for (const auto& [key, c] : shortcut) {
    if (!plain.count(key)) tv += c;
  }
  EXPECT_LE(tv / (2.0 * kRuns), 0.02);
}

}  // namespace
}  // namespace rst
