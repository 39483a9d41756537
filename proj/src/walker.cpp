#include "rst/walker.hpp"

#include <stdexcept>

#include "rst/errors.hpp"

namespace rst {

namespace {

class Walk {
 public:
  Walk(const Graph& g, const Decomposition* d, const WalkOptions& options, Vertex start)
      : g_(g), d_(d), options_(options), result_{PartialForest(g.num_vertices(), start), {}, {}},
        visited_(g.num_vertices(), 0), remaining_(g.num_vertices()) {
    if (d_ != nullptr) {
      comp_unvisited_.resize(d_->num_components());
      for (std::size_t i = 0; i < d_->num_components(); ++i) comp_unvisited_[i] = d_->component(i).size();
    }
    visit(start, -1);
    current_ = start;
    if (options_.record_transcript) result_.transcript.push_back({start, false});
  }

  bool covered() const noexcept { return remaining_ == 0; }
  Vertex current() const noexcept { return current_; }
  std::uint64_t steps() const noexcept { return result_.stats.transcript_length(); }
  bool fallback() const noexcept { return result_.stats.fallback; }
  void engage_fallback() noexcept { result_.stats.fallback = true; }

  int component_of(Vertex v) const noexcept { return d_ == nullptr ? -1 : d_->component_of(v); }
  bool fully_visited(int comp) const noexcept { return comp_unvisited_[static_cast<std::size_t>(comp)] == 0; }

  /// Traverses graph edge (current, next).
  void step_to(Vertex next) {
    ++result_.stats.verbatim_steps;
    const int a = component_of(current_);
    if (d_ != nullptr && (a < 0 || a != component_of(next))) ++result_.stats.cut_traversals;
    visit(next, current_);
    current_ = next;
    if (options_.record_transcript) result_.transcript.push_back({next, false});
  }

  /// Jumps inside a component to its last vertex before the exit edge.
  void jump_within(Vertex last) {
    if (last == current_) return;
    ++result_.stats.shortcut_jumps;
    current_ = last;
    if (options_.record_transcript) result_.transcript.push_back({last, true});
  }

  /// Jumps to the first vertex outside the component; a new vertex becomes a gap.
  void jump_out(Vertex target) {
    ++result_.stats.shortcut_jumps;
    if (!visited_[target]) {
      mark_visited(target);
      result_.forest.gap[target] = 1;
      ++result_.stats.gap_count;
    }
    current_ = target;
    if (options_.record_transcript) result_.transcript.push_back({target, true});
  }

  WalkResult take() { return std::move(result_); }

 private:
  void mark_visited(Vertex v) {
    visited_[v] = 1;
    --remaining_;
    const int c = component_of(v);
    if (c >= 0) --comp_unvisited_[static_cast<std::size_t>(c)];
  }

  void visit(Vertex v, Vertex from) {
    if (visited_[v]) return;
    mark_visited(v);
    result_.forest.parent[v] = from;
  }

  const Graph& g_;
  const Decomposition* d_;
  const WalkOptions& options_;
  WalkResult result_;
  std::vector<char> visited_;
  std::vector<std::size_t> comp_unvisited_;
  std::size_t remaining_;
  Vertex current_ = -1;
};

Vertex random_neighbor(const Graph& g, Vertex v, Rng& rng) {
  const auto nbrs = g.neighbors(v);
  return nbrs[rng.uniform_index(nbrs.size())];
}

}  // namespace

WalkResult simulate_shortcut(const Graph& g, const Decomposition& d, const TransitionTable* tables,
                             const WalkOptions& options, Rng& rng) {
  if (options.mode != WalkMode::Plain) {
    if (tables == nullptr) throw std::invalid_argument("shortcut walks need transition tables");
    const ExitMode wanted = options.mode == WalkMode::EdgeShortcut ? ExitMode::Edge : ExitMode::Vertex;
    if (tables->mode() != wanted) throw std::invalid_argument("transition table mode does not match walk mode");
  }
  const std::uint64_t threshold =
      options.fallback_threshold != 0
          ? options.fallback_threshold
          : static_cast<std::uint64_t>(g.num_edges()) * static_cast<std::uint64_t>(g.num_vertices());

  Walk walk(g, &d, options, stationary_sample(g, rng));
  auto check_fallback = [&] {
    if (!walk.fallback() && walk.steps() >= threshold) walk.engage_fallback();
  };

  while (!walk.covered()) {
    check_fallback();
    const Vertex from = walk.current();
    walk.step_to(random_neighbor(g, from, rng));

    // Entering a fully visited component from outside starts a shortcut block.
    Vertex outside = from;
    while (options.mode != WalkMode::Plain && !walk.covered()) {
      const Vertex entry = walk.current();
      const int comp = walk.component_of(entry);
      if (comp < 0 || comp == walk.component_of(outside) || !walk.fully_visited(comp)) break;
      check_fallback();
      if (walk.fallback()) break;
      const ExitTarget& exit = tables->sample_exit(entry, rng);
      if (options.mode == WalkMode::EdgeShortcut) {
        walk.jump_within(exit.from);
        check_fallback();
        walk.step_to(exit.to);
        outside = exit.from;
      } else {
        walk.jump_out(exit.to);
        break;
      }
    }
  }
  return walk.take();
}

Arborescence aldous_broder(const Graph& g, Rng& rng, StepStats* stats) {
  const WalkOptions options{};
  Walk walk(g, nullptr, options, stationary_sample(g, rng));
  while (!walk.covered()) walk.step_to(random_neighbor(g, walk.current(), rng));
  WalkResult result = walk.take();
  if (stats != nullptr) *stats = result.stats;
  return Arborescence(g, result.forest.root, std::move(result.forest.parent));
}

Arborescence wilson(const Graph& g, Vertex root, Rng& rng) {
  const std::size_t n = g.num_vertices();
  if (root < 0 || static_cast<std::size_t>(root) >= n) throw std::invalid_argument("wilson root out of range");
  std::vector<char> in_tree(n, 0);
  std::vector<Vertex> next(n, -1);
  in_tree[root] = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Vertex u = static_cast<Vertex>(i);
    while (!in_tree[u]) {
      next[u] = random_neighbor(g, u, rng);
      u = next[u];
    }
    // Following the last exits from i retraces the loop-erased path.
    u = static_cast<Vertex>(i);
    while (!in_tree[u]) {
      in_tree[u] = 1;
      u = next[u];
    }
  }
  next[root] = -1;
  return Arborescence(g, root, std::move(next));
}

}  // namespace rst
