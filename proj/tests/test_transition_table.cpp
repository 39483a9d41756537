#include <gtest/gtest.h>

#include <cmath>
#include <nlohmann/json.hpp>

#include "exit_oracle.hpp"
#include "rst/errors.hpp"
#include "rst/generators.hpp"
#include "rst/transition_table.hpp"
#include "support.hpp"

namespace rst {
namespace {

const TableOptions kOptions{};

std::size_t target_index(const ExitDistribution& dist, ExitTarget t) {
  for (std::size_t j = 0; j < dist.targets.size(); ++j) {
    if (dist.targets[j] == t) return j;
  }
  ADD_FAILURE() << "target not found";
  return 0;
}

std::size_t row_index(const ExitDistribution& dist, Vertex v) {
  for (std::size_t r = 0; r < dist.vertices.size(); ++r) {
    if (dist.vertices[r] == v) return r;
  }
  ADD_FAILURE() << "row not found";
  return 0;
}

TEST(EdgeExits, SingleVertexTwoCutEdges) {
  const Graph g = gen::path(3);
  const Decomposition d = Decomposition::from_components(g, {{1}}, 0.5, true);
  const ExitDistribution dist = compute_edge_exits(g, d, 0, kOptions);
  ASSERT_EQ(dist.targets.size(), 2u);
  EXPECT_NEAR(dist.at(0, 0), 0.5, 1e-12);
  EXPECT_NEAR(dist.at(0, 1), 0.5, 1e-12);
}

TEST(EdgeExits, GamblersRuinOnPathInterior) {
  // Path 0..5 with D = {1,2,3,4}: leaving through (4,5) from 2 means hitting 5
  // before 0, which is 2/5.
  const Graph g = gen::path(6);
  const Decomposition d = Decomposition::from_components(g, {{1, 2, 3, 4}}, 0.5, true);
  const ExitDistribution dist = compute_edge_exits(g, d, 0, kOptions);
  const std::size_t far = target_index(dist, {4, 5});
  for (Vertex k = 1; k <= 4; ++k) EXPECT_NEAR(dist.at(row_index(dist, k), far), k / 5.0, 1e-12);
}

TEST(EdgeExits, RowsSumToOne) {
  const Graph g = gen::erdos_renyi_connected(80, 0.06, 3);
  const Decomposition d = weak_decompose(g, 0.2);
  for (std::size_t i = 0; i < d.num_components(); ++i) {
    const ExitDistribution dist = compute_edge_exits(g, d, i, kOptions);
    if (dist.targets.empty()) continue;
    for (std::size_t r = 0; r < dist.vertices.size(); ++r) {
      double sum = 0.0;
      for (std::size_t t = 0; t < dist.targets.size(); ++t) {
        EXPECT_GE(dist.at(r, t), 0.0);
        sum += dist.at(r, t);
      }
      EXPECT_NEAR(sum, 1.0, 1e-12);
      EXPECT_NEAR(dist.raw_sums[r], 1.0, 1e-8);
    }
  }
}

TEST(VertexExits, SingleAdjacentCutVertex) {
  const Graph g = gen::lollipop(5, 1);  // clique 0..4, tail vertex 5 off vertex 4
  const Decomposition d = Decomposition::from_components(g, {{0, 1, 2, 3}}, 0.5, true);
  const ExitDistribution dist = compute_vertex_exits(g, d, 0, kOptions);
  ASSERT_EQ(dist.targets.size(), 1u);
  for (std::size_t r = 0; r < dist.vertices.size(); ++r) EXPECT_EQ(dist.at(r, 0), 1.0);
}

TEST(VertexExits, SymmetricCycle) {
  const Graph g = gen::cycle(8);
  const Decomposition d = Decomposition::from_components(g, {{1, 2, 3}, {5, 6, 7}}, 0.5, true);
  const ExitDistribution dist = compute_vertex_exits(g, d, 0, kOptions);
  ASSERT_EQ(dist.targets.size(), 2u);
  const std::size_t mid = row_index(dist, 2);
  EXPECT_NEAR(dist.at(mid, 0), 0.5, 1e-12);
  EXPECT_NEAR(dist.at(mid, 1), 0.5, 1e-12);
}

TEST(VertexExits, NeedsStrongDecomposition) {
  const Graph g = gen::cycle(8);
  const Decomposition d = Decomposition::from_components(g, {{1, 2, 3}}, 0.5, false);
  EXPECT_THROW(compute_vertex_exits(g, d, 0, kOptions), DecompositionError);
}

TEST(Exits, MatchAbsorbingChainOracle) {
  std::size_t checked = 0;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Graph g = gen::erdos_renyi_connected(150, 0.03, seed);
    const Decomposition d = strong_decompose(g, 0.15);
    for (std::size_t i = 0; i < d.num_components(); ++i) {
      if (d.component(i).size() > 200) continue;
      for (ExitMode mode : {ExitMode::Edge, ExitMode::Vertex}) {
        const ExitDistribution dist =
            mode == ExitMode::Edge ? compute_edge_exits(g, d, i, kOptions) : compute_vertex_exits(g, d, i, kOptions);
        if (dist.targets.empty()) continue;
        EXPECT_LE(testing::max_oracle_gap(dist, testing::exit_oracle(g, d, i, dist)), 1e-8)
            << "seed " << seed << " component " << i;
        ++checked;
      }
    }
  }
  EXPECT_GE(checked, 10u);
}

TEST(Exits, IterativeSolverPathMatchesOracle) {
  TableOptions iterative;
  iterative.solver.direct_threshold = 0;
  const Graph g = gen::grid(8, 8);
  const Decomposition d = strong_decompose(g, 0.2);
  ASSERT_GT(d.num_components(), 0u);
  for (std::size_t i = 0; i < d.num_components(); ++i) {
    const ExitDistribution dist = compute_edge_exits(g, d, i, iterative);
    if (dist.targets.empty()) continue;
    EXPECT_LE(testing::max_oracle_gap(dist, testing::exit_oracle(g, d, i, dist)), 1e-8);
  }
}

// Raw walk from v until it leaves the component.
ExitTarget walk_until_exit(const Graph& g, const VertexSubset& comp, Vertex v, Rng& rng) {
  while (true) {
    const auto nbrs = g.neighbors(v);
    const Vertex w = nbrs[rng.uniform_index(nbrs.size())];
    if (!comp.contains(w)) return {v, w};
    v = w;
  }
}

TEST(Exits, MonteCarloAgreement) {
  struct Instance {
    Graph g;
    std::vector<Vertex> comp;
  };
  std::vector<Instance> instances;
  instances.push_back({gen::path(6), {1, 2, 3, 4}});
  instances.push_back({gen::grid(3, 3), {0, 1, 3, 4}});
  instances.push_back({gen::lollipop(4, 3), {0, 1, 2, 3}});
  constexpr int kWalks = 100000;
  for (const auto& inst : instances) {
    const Decomposition d = Decomposition::from_components(inst.g, {inst.comp}, 0.5, false);
    const ExitDistribution dist = compute_edge_exits(inst.g, d, 0, kOptions);
    const Vertex start = inst.comp[1];
    std::vector<int> counts(dist.targets.size(), 0);
    Rng rng(99);
    for (int k = 0; k < kWalks; ++k) ++counts[target_index(dist, walk_until_exit(inst.g, d.component(0), start, rng))];
    const std::size_t r = row_index(dist, start);
    for (std::size_t t = 0; t < dist.targets.size(); ++t) {
      const double p = dist.at(r, t);
      EXPECT_NEAR(counts[t] / double(kWalks), p, testing::four_sigma(p, kWalks));
    }
  }
}

ExitDistribution manual(std::vector<double> row) {
  ExitDistribution dist;
  dist.mode = ExitMode::Edge;
  dist.vertices = {0};
  for (std::size_t j = 0; j < row.size(); ++j) dist.targets.push_back({0, static_cast<Vertex>(j + 1)});
  dist.probabilities = std::move(row);
  return dist;
}

TEST(BuildTable, CumulativeArrays) {
  const TransitionTable half = build_table(manual({0.5, 0.5}), 4);
  EXPECT_EQ(half.row(0).cumulative, (std::vector<double>{0.5, 1.0}));
  const TransitionTable three = build_table(manual({0.2, 0.3, 0.5}), 4);
  ASSERT_EQ(three.row(0).cumulative.size(), 3u);
  EXPECT_DOUBLE_EQ(three.row(0).cumulative[0], 0.2);
  EXPECT_DOUBLE_EQ(three.row(0).cumulative[1], 0.5);
  EXPECT_EQ(three.row(0).cumulative[2], 1.0);
}

TEST(SampleExit, Frequencies) {
  const TransitionTable table = build_table(manual({0.2, 0.3, 0.5}), 4);
  constexpr int kDraws = 100000;
  std::vector<int> counts(4, 0);
  Rng rng(5);
  for (int i = 0; i < kDraws; ++i) ++counts[table.sample_exit(0, rng).to];
  const double p[] = {0.2, 0.3, 0.5};
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(counts[j + 1] / double(kDraws), p[j], testing::four_sigma(p[j], kDraws));
}

TEST(SampleExit, PointMassAndPair) {
  const TransitionTable point = build_table(manual({0.0, 1.0, 0.0}), 4);
  const TransitionTable pair = build_table(manual({0.5, 0.5}), 4);
  Rng rng(6);
  int first = 0;
  for (int i = 0; i < 10000; ++i) {
    EXPECT_EQ(point.sample_exit(0, rng).to, 2);
    first += pair.sample_exit(0, rng).to == 1 ? 1 : 0;
  }
  EXPECT_NEAR(first / 10000.0, 0.5, testing::four_sigma(0.5, 10000));
}

TEST(SampleExit, MissingRow) {
  const TransitionTable table = build_table(manual({1.0}), 4);
  Rng rng(1);
  EXPECT_FALSE(table.has_row(3));
  EXPECT_THROW(table.sample_exit(3, rng), TableError);
  EXPECT_THROW(table.row(-1), TableError);
}

TEST(BuildTables, CoverEveryComponentVertexWithExits) {
  const Graph g = gen::lollipop(20, 400);
  const Decomposition d = strong_decompose(g, 1.0 / std::sqrt(420.0));
  TableOptions options;
  options.epsilon = 0.01 / (590.0 * 420.0);
  for (ExitMode mode : {ExitMode::Edge, ExitMode::Vertex}) {
    const TransitionTable table = build_tables(g, d, mode, options);
    EXPECT_EQ(table.mode(), mode);
    for (std::size_t i = 0; i < d.num_components(); ++i) {
      for (Vertex v : d.component(i)) {
        ASSERT_TRUE(table.has_row(v));
        const auto& row = table.row(v);
        EXPECT_EQ(row.cumulative.back(), 1.0);
        EXPECT_TRUE(std::is_sorted(row.cumulative.begin(), row.cumulative.end()));
      }
    }
    for (Vertex v : d.cut_vertices()) EXPECT_FALSE(table.has_row(v));
    EXPECT_LE(table.max_normalization_drift(), 1e-8);
  }
}

TEST(TransitionTable, ModeMismatch) {
  TransitionTable table(ExitMode::Vertex, 4);
  EXPECT_THROW(table.add(manual({1.0})), TableError);
}

TEST(SolverTolerance, Rule) {
  EXPECT_DOUBLE_EQ(solver_tolerance(1e-3, 10), 1e-3 / 40.0);
  EXPECT_EQ(solver_tolerance(1e-20, 10), 1e-12);
}

TEST(TableJson, Parses) {
  const Graph g = gen::path(6);
  const Decomposition d = Decomposition::from_components(g, {{1, 2, 3, 4}}, 0.5, true);
  const auto doc = nlohmann::json::parse(table_to_json(g, build_tables(g, d, ExitMode::Edge, kOptions)));
  EXPECT_FALSE(doc.empty());
}

}  // namespace
}  // namespace rst
