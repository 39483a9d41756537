#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "rst/errors.hpp"
#include "rst/laplacian.hpp"
#include "rst/oracle.hpp"

namespace rst {
namespace {

// Random connected weighted gadget: a random spanning path plus extra edges.
WeightedGadget random_gadget(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<Vertex> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<Vertex>(i);
  std::shuffle(order.begin(), order.end(), gen);
  std::uniform_real_distribution<double> weight(0.5, 3.0);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<WeightedEdge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({order[i], order[i + 1], weight(gen)});
  for (std::size_t k = 0; k < 2 * n; ++k) {
    const auto a = static_cast<Vertex>(pick(gen));
    const auto b = static_cast<Vertex>(pick(gen));
    if (a != b) edges.push_back({a, b, weight(gen)});
  }
  return WeightedGadget(n, std::move(edges), 0, static_cast<Vertex>(n - 1));
}

TEST(SolveTwoTerminal, UnitPath) {
  const WeightedGadget g(3, {{0, 1, 1.0}, {1, 2, 1.0}}, 0, 2);
  const VoltageVector v = solve_two_terminal(g);
  EXPECT_DOUBLE_EQ(v.values[1], 0.5);
  EXPECT_EQ(v.values[0], 1.0);
  EXPECT_EQ(v.values[2], 0.0);
}

TEST(SolveTwoTerminal, WeightedPath) {
  const WeightedGadget g(3, {{0, 1, 2.0}, {1, 2, 1.0}}, 0, 2);
  EXPECT_NEAR(solve_two_terminal(g).values[1], 2.0 / 3.0, 1e-14);
}

TEST(SolveTwoTerminal, ParallelEdgesMerge) {
  // Two unit edges 0-1 act as weight 2.
  const WeightedGadget g(3, {{0, 1, 1.0}, {1, 0, 1.0}, {1, 2, 1.0}}, 0, 2);
  EXPECT_EQ(g.edges().size(), 2u);
  EXPECT_NEAR(solve_two_terminal(g).values[1], 2.0 / 3.0, 1e-14);
}

TEST(SolveTwoTerminal, TerminalsExactAndMaximumPrinciple) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const WeightedGadget g = random_gadget(50, seed);
    const VoltageVector v = solve_two_terminal(g);
    EXPECT_EQ(v.values[g.source()], 1.0);
    EXPECT_EQ(v.values[g.sink()], 0.0);
    for (double x : v.values) {
      EXPECT_GE(x, 0.0);
      EXPECT_LE(x, 1.0);
    }
    EXPECT_LE(harmonic_defect(g, v.values), 1e-10);
  }
}

TEST(SolveTwoTerminal, IterativeMatchesDirect) {
  SolveOptions iterative;
  iterative.direct_threshold = 0;
  iterative.tolerance = 1e-12;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const WeightedGadget g = random_gadget(20 * seed, seed + 100);
    const VoltageVector direct = solve_two_terminal(g);
    const VoltageVector pcg = solve_two_terminal(g, iterative);
    EXPECT_TRUE(direct.direct);
    EXPECT_FALSE(pcg.direct);
    EXPECT_GT(pcg.iterations, 0u);
    for (std::size_t i = 0; i < g.num_vertices(); ++i) EXPECT_NEAR(pcg.values[i], direct.values[i], 1e-8);
  }
}

TEST(SolveTwoTerminal, MatchesAbsorbingChain) {
  // Voltage at v = probability of reaching the source before the sink.
  const WeightedGadget g = random_gadget(60, 7);
  const VoltageVector v = solve_two_terminal(g);
  const VertexSubset absorbing(g.num_vertices(), {g.source(), g.sink()});
  const auto hit = absorbing_hit_probabilities(g.num_vertices(), g.edges(), absorbing, g.source());
  for (std::size_t i = 0; i < g.num_vertices(); ++i) EXPECT_NEAR(v.values[i], hit[i], 1e-10);
}

TEST(SolveTwoTerminal, Errors) {
  const WeightedGadget split(4, {{0, 1, 1.0}, {2, 3, 1.0}}, 0, 3);
  try {
    solve_two_terminal(split);
    FAIL() << "expected a singular-system error";
  } catch (const SolverError& e) {
    EXPECT_EQ(e.kind(), SolverError::Kind::Singular);
  }
  SolveOptions starved;
  starved.direct_threshold = 0;
  starved.iteration_factor = 0;
  try {
    solve_two_terminal(random_gadget(40, 3), starved);
    FAIL() << "expected non-convergence";
  } catch (const SolverError& e) {
    EXPECT_EQ(e.kind(), SolverError::Kind::NonConvergence);
  }
  EXPECT_THROW(WeightedGadget(2, {{0, 1, 1.0}}, 0, 0), SolverError);
  EXPECT_THROW(WeightedGadget(2, {{0, 1, -1.0}}, 0, 1), SolverError);
}

TEST(BuildLaplacian, Definition) {
  const Eigen::MatrixXd single(build_laplacian(WeightedGadget(2, {{0, 1, 2.5}}, 0, 1)));
  EXPECT_EQ(single(0, 0), 2.5);
  EXPECT_EQ(single(1, 1), 2.5);
  EXPECT_EQ(single(0, 1), -2.5);
  EXPECT_EQ(single(1, 0), -2.5);

  const Eigen::MatrixXd tri(build_laplacian(WeightedGadget(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}}, 0, 1)));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_EQ(tri(i, j), i == j ? 2.0 : -1.0);
  }

  const Eigen::MatrixXd rnd(build_laplacian(random_gadget(30, 9)));
  EXPECT_TRUE(rnd.isApprox(rnd.transpose()));
  for (Eigen::Index i = 0; i < rnd.rows(); ++i) EXPECT_NEAR(rnd.row(i).sum(), 0.0, 1e-12);
}

}  // namespace
}  // namespace rst
