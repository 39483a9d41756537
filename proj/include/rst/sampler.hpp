#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rst/arborescence.hpp"
#include "rst/decomposition.hpp"
#include "rst/graph.hpp"
#include "rst/rng.hpp"
#include "rst/transition_table.hpp"
#include "rst/walker.hpp"

namespace rst {

enum class Algorithm { AldousBroder, Wilson, ShortcutEdge, ShortcutVertex };

std::string_view algorithm_name(Algorithm a) noexcept;
/// Accepts aldous-broder, wilson, shortcut-edge, shortcut-vertex.
std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept;

enum class EpsilonRule {
  WalkLength,  // delta / (m n)
  Polynomial,  // delta / n^5
};

struct SamplerConfig {
  Algorithm algorithm = Algorithm::ShortcutVertex;
  /// Defaults to 1 / sqrt(n).
  std::optional<double> phi;
  double delta = 0.01;
  /// Overrides the rule below when set.
  std::optional<double> epsilon;
  EpsilonRule epsilon_rule = EpsilonRule::WalkLength;
  /// 0 means m * n.
  std::uint64_t fallback_threshold = 0;
  /// Put every vertex in S (nothing to shortcut).
  bool empty_decomposition = false;
};

struct TreeSample {
  Arborescence arborescence;
  StepStats stats;
};

/// End-to-end spanning tree sampler. Decomposition and tables are built once
/// at construction and shared by every draw; draws only touch the generator
/// they are given.
class TreeSampler {
 public:
  /// Throws DecompositionError for phi outside (0, 1) or delta <= 0.
  TreeSampler(const Graph& g, SamplerConfig config);
  /// Shortcut algorithms on a caller-supplied decomposition (must be strong
  /// for shortcut-vertex); phi and empty_decomposition are ignored.
  TreeSampler(const Graph& g, SamplerConfig config, Decomposition d);

  const SamplerConfig& config() const noexcept { return config_; }
  double phi() const noexcept { return phi_; }
  double epsilon() const noexcept { return epsilon_; }
  /// Null for aldous-broder and wilson.
  const Decomposition* decomposition() const noexcept { return decomposition_ ? &*decomposition_ : nullptr; }
  const TransitionTable* tables() const noexcept { return tables_ ? &*tables_ : nullptr; }

  TreeSample draw(Rng& rng) const;
  std::vector<Edge> draw_tree(Rng& rng) const { return to_tree(draw(rng).arborescence); }

 private:
  void init_epsilon();
  void build_tables();

  const Graph& g_;
  SamplerConfig config_;
  double phi_ = 0.0;
  double epsilon_ = 0.0;
  std::optional<Decomposition> decomposition_;
  std::optional<TransitionTable> tables_;
};

/// Completes a vertex-mode walk: arcs into C(S) \ {root} are discarded and
/// redrawn uniformly through the quotient digraph.
Arborescence complete_vertex_walk(const Graph& g, const Decomposition& d, const PartialForest& forest, Rng& rng);

/// Sample i of a batch uses generator seed derive_seed(master, i).
std::vector<TreeSample> draw_batch(const TreeSampler& sampler, std::uint64_t master_seed, std::size_t count);

}  // namespace rst
