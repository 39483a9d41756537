#include "rst/sampler.hpp"

#include <cmath>

#include "rst/errors.hpp"

namespace rst {

std::string_view algorithm_name(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::AldousBroder: return "aldous-broder";
    case Algorithm::Wilson: return "wilson";
    case Algorithm::ShortcutEdge: return "shortcut-edge";
    case Algorithm::ShortcutVertex: return "shortcut-vertex";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept {
  for (Algorithm a : {Algorithm::AldousBroder, Algorithm::Wilson, Algorithm::ShortcutEdge, Algorithm::ShortcutVertex}) {
    if (algorithm_name(a) == name) return a;
  }
  return std::nullopt;
}

TreeSampler::TreeSampler(const Graph& g, SamplerConfig config) : g_(g), config_(std::move(config)) {
  const std::size_t n = g.num_vertices();
  phi_ = config_.phi.value_or(n > 1 ? 1.0 / std::sqrt(static_cast<double>(n)) : 0.5);
  if (!(phi_ > 0.0 && phi_ < 1.0)) throw DecompositionError("phi must lie in (0, 1)");
  init_epsilon();
  if (config_.algorithm != Algorithm::ShortcutEdge && config_.algorithm != Algorithm::ShortcutVertex) return;
  if (config_.empty_decomposition || n == 1) {
    decomposition_ = Decomposition::all_cut(g, phi_);
  } else {
    decomposition_ = config_.algorithm == Algorithm::ShortcutVertex ? strong_decompose(g, phi_) : weak_decompose(g, phi_);
  }
  build_tables();
}

TreeSampler::TreeSampler(const Graph& g, SamplerConfig config, Decomposition d)
    : g_(g), config_(std::move(config)), phi_(d.phi()), decomposition_(std::move(d)) {
  if (config_.algorithm != Algorithm::ShortcutEdge && config_.algorithm != Algorithm::ShortcutVertex) {
    throw DecompositionError("an explicit decomposition needs a shortcut algorithm");
  }
  init_epsilon();
  build_tables();
}

void TreeSampler::init_epsilon() {
  const std::size_t n = g_.num_vertices();
  const std::size_t m = g_.num_edges();
  if (!(config_.delta > 0.0)) throw DecompositionError("delta must be positive");
  if (config_.epsilon) {
    epsilon_ = *config_.epsilon;
  } else if (config_.epsilon_rule == EpsilonRule::Polynomial) {
    epsilon_ = config_.delta / std::pow(static_cast<double>(std::max<std::size_t>(n, 1)), 5.0);
  } else {
    epsilon_ = config_.delta / static_cast<double>(std::max<std::size_t>(m * n, 1));
  }
  if (!(epsilon_ > 0.0)) throw DecompositionError("epsilon must be positive");
}

void TreeSampler::build_tables() {
  TableOptions options;
  options.epsilon = epsilon_;
  const ExitMode mode = config_.algorithm == Algorithm::ShortcutVertex ? ExitMode::Vertex : ExitMode::Edge;
  tables_ = rst::build_tables(g_, *decomposition_, mode, options);
}

Arborescence complete_vertex_walk(const Graph& g, const Decomposition& d, const PartialForest& forest, Rng& rng) {
  // Arcs into C(S) may depend on where the walk was when it shortcut; only
  // the remaining arcs are kept, and the rest is drawn uniformly among the
  // completions they admit.
  const PartialForest gapped = forget_arcs(forest, d.boundary_cut_vertices());
  if (!gapped.has_gaps()) return extract(g, gapped);
  const QuotientDigraph q = build_quotient(g, gapped);
  const auto choices = sample_quotient_arborescence(q, 0, rng);
  return complete(g, gapped, choices);
}

TreeSample TreeSampler::draw(Rng& rng) const {
  switch (config_.algorithm) {
    case Algorithm::AldousBroder: {
      StepStats stats;
      Arborescence a = aldous_broder(g_, rng, &stats);
      return {std::move(a), stats};
    }
    case Algorithm::Wilson: {
      const Vertex root = stationary_sample(g_, rng);
      return {wilson(g_, root, rng), {}};
    }
    case Algorithm::ShortcutEdge:
    case Algorithm::ShortcutVertex: break;
  }
  WalkOptions options;
  options.mode = config_.algorithm == Algorithm::ShortcutEdge ? WalkMode::EdgeShortcut : WalkMode::VertexShortcut;
  options.fallback_threshold = config_.fallback_threshold;
  WalkResult walk = simulate_shortcut(g_, *decomposition_, &*tables_, options, rng);
  if (options.mode == WalkMode::EdgeShortcut) return {extract(g_, walk.forest), walk.stats};
  return {complete_vertex_walk(g_, *decomposition_, walk.forest, rng), walk.stats};
}

std::vector<TreeSample> draw_batch(const TreeSampler& sampler, std::uint64_t master_seed, std::size_t count) {
  std::vector<TreeSample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(master_seed, i));
    out.push_back(sampler.draw(rng));
  }
  return out;
}

}  // namespace rst
