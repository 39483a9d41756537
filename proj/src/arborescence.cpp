#include "rst/arborescence.hpp"

#include <algorithm>
#include <map>

#include "rst/errors.hpp"

namespace rst {

Arborescence::Arborescence(const Graph& g, Vertex root, std::vector<Vertex> parents)
    : root_(root), parents_(std::move(parents)) {
  const std::size_t n = g.num_vertices();
  if (parents_.size() != n) throw ForestError("arborescence size differs from graph");
  if (root < 0 || static_cast<std::size_t>(root) >= n) throw ForestError("arborescence root out of range");
  if (parents_[root] != -1) throw ForestError("root has an incoming arc");
  for (std::size_t v = 0; v < n; ++v) {
    if (static_cast<Vertex>(v) == root) continue;
    const Vertex p = parents_[v];
    if (p < 0) throw ForestError("vertex " + std::to_string(g.label(static_cast<Vertex>(v))) + " has no incoming arc");
    if (!g.has_edge(p, static_cast<Vertex>(v))) {
      throw ForestError("arc " + std::to_string(g.label(p)) + "->" +
                        std::to_string(g.label(static_cast<Vertex>(v))) + " is not a graph edge");
    }
  }
  // Every vertex must reach the root; 0 unknown, 1 on current chain, 2 done.
  std::vector<char> state(n, 0);
  state[root] = 2;
  std::vector<Vertex> chain;
  for (std::size_t start = 0; start < n; ++start) {
    Vertex v = static_cast<Vertex>(start);
    chain.clear();
    while (state[v] == 0) {
      state[v] = 1;
      chain.push_back(v);
      v = parents_[v];
    }
    if (state[v] == 1) throw ForestError("arcs contain a directed cycle");
    for (Vertex c : chain) state[c] = 2;
  }
}

bool PartialForest::has_gaps() const noexcept {
  return std::any_of(gap.begin(), gap.end(), [](char c) { return c != 0; });
}

std::vector<Vertex> PartialForest::gap_vertices() const {
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < gap.size(); ++v) {
    if (gap[v]) out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

PartialForest forget_arcs(PartialForest forest, std::span<const Vertex> vertices) {
  for (Vertex v : vertices) {
    if (v == forest.root) continue;
    forest.parent[v] = -1;
    forest.gap[v] = 1;
  }
  return forest;
}

Arborescence extract(const Graph& g, const PartialForest& forest) {
  if (forest.has_gaps()) throw ForestError("forest has gap vertices; complete it first");
  return Arborescence(g, forest.root, forest.parent);
}

QuotientDigraph build_quotient(const Graph& g, const PartialForest& forest) {
  const std::size_t n = g.num_vertices();
  if (forest.parent.size() != n || forest.gap.size() != n) throw ForestError("forest size differs from graph");
  if (forest.root < 0 || static_cast<std::size_t>(forest.root) >= n) throw ForestError("forest root out of range");
  if (forest.gap[forest.root]) throw ForestError("root cannot be a gap vertex");
  if (!forest.has_gaps()) throw ForestError("forest has no gaps; use extract");

  QuotientDigraph q;
  q.gap_vertex.push_back(forest.root);
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  q.node_of.assign(n, kUnset);
  q.node_of[forest.root] = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (forest.gap[v]) {
      if (forest.parent[v] >= 0) {
        throw ForestError("gap vertex " + std::to_string(g.label(static_cast<Vertex>(v))) + " also has an arc");
      }
      q.node_of[v] = q.gap_vertex.size();
      q.gap_vertex.push_back(static_cast<Vertex>(v));
    }
  }
  q.num_nodes = q.gap_vertex.size();

  std::vector<Vertex> chain;
  std::vector<char> on_chain(n, 0);
  for (std::size_t start = 0; start < n; ++start) {
    Vertex v = static_cast<Vertex>(start);
    chain.clear();
    while (q.node_of[v] == kUnset) {
      const Vertex p = forest.parent[v];
      if (p < 0) throw ForestError("vertex " + std::to_string(g.label(v)) + " has neither an arc nor a gap mark");
      if (!g.has_edge(p, v)) throw ForestError("forest arc is not a graph edge");
      if (on_chain[v]) throw ForestError("forest arcs contain a directed cycle");
      on_chain[v] = 1;
      chain.push_back(v);
      v = p;
    }
    for (Vertex c : chain) {
      q.node_of[c] = q.node_of[v];
      on_chain[c] = 0;
    }
  }

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> arc_index;
  for (std::size_t l = 1; l < q.num_nodes; ++l) {
    const Vertex u = q.gap_vertex[l];
    for (Vertex v : g.neighbors(u)) {
      const std::size_t j = q.node_of[v];
      if (j == l) continue;
      auto [it, inserted] = arc_index.try_emplace({j, l}, q.arcs.size());
      if (inserted) q.arcs.push_back({j, l, {}});
      q.arcs[it->second].edges.emplace_back(v, u);
    }
  }
  std::sort(q.arcs.begin(), q.arcs.end(),
            [](const auto& a, const auto& b) { return std::tie(a.to, a.from) < std::tie(b.to, b.from); });
  return q;
}

namespace {

// Reduced in-degree Laplacian with the root row/column removed. Arcs whose
// flag in `allowed` is zero are left out.
BigInt weighted_count(const QuotientDigraph& q, std::size_t root, const std::vector<char>& allowed) {
  const std::size_t r = q.num_nodes;
  if (root >= r) throw ForestError("quotient root out of range");
  auto index = [root](std::size_t node) { return node < root ? node : node - 1; };
  IntMatrix lap(r - 1);
  for (std::size_t a = 0; a < q.arcs.size(); ++a) {
    if (!allowed[a]) continue;
    const auto& arc = q.arcs[a];
    if (arc.to == root || arc.from == arc.to) continue;
    const auto w = static_cast<long long>(arc.multiplicity());
    lap(index(arc.to), index(arc.to)) += w;
    if (arc.from != root) lap(index(arc.from), index(arc.to)) -= w;
  }
  return determinant(std::move(lap));
}

}  // namespace

BigInt count_arborescences(const QuotientDigraph& q, std::size_t root) {
  return weighted_count(q, root, std::vector<char>(q.arcs.size(), 1));
}

std::vector<ArcChoice> sample_quotient_arborescence(const QuotientDigraph& q, std::size_t root, Rng& rng) {
  std::vector<char> allowed(q.arcs.size(), 1);
  BigInt total = weighted_count(q, root, allowed);
  if (total == 0) throw ForestError("quotient digraph has no arborescence; forest is inconsistent");

  std::vector<ArcChoice> choices;
  for (std::size_t node = 0; node < q.num_nodes; ++node) {
    if (node == root) continue;
    std::vector<std::size_t> candidates;
    for (std::size_t a = 0; a < q.arcs.size(); ++a) {
      if (q.arcs[a].to == node && allowed[a]) candidates.push_back(a);
    }
    // Restrict the node's in-arcs to one candidate at a time and recount.
    std::vector<BigInt> counts;
    for (std::size_t c : candidates) {
      for (std::size_t a : candidates) allowed[a] = a == c;
      counts.push_back(weighted_count(q, root, allowed));
    }
    BigInt draw = uniform_below(total, rng);
    std::size_t pick = 0;
    while (pick + 1 < candidates.size() && draw >= counts[pick]) {
      draw -= counts[pick];
      ++pick;
    }
    for (std::size_t a : candidates) allowed[a] = a == candidates[pick];
    total = counts[pick];
    const auto& arc = q.arcs[candidates[pick]];
    const auto edge = arc.edges[rng.uniform_index(arc.multiplicity())];
    choices.push_back({node, candidates[pick], edge});
  }
  return choices;
}

Arborescence complete(const Graph& g, const PartialForest& forest, std::span<const ArcChoice> choices) {
  std::vector<Vertex> parents = forest.parent;
  std::vector<char> filled(g.num_vertices(), 0);
  for (const auto& c : choices) {
    const auto [v, u] = c.edge;
    if (u < 0 || static_cast<std::size_t>(u) >= g.num_vertices() || !forest.gap[u]) {
      throw ForestError("completion arc does not end at a gap vertex");
    }
    if (filled[u]) throw ForestError("gap vertex completed twice");
    filled[u] = 1;
    parents[u] = v;
  }
  for (Vertex u : forest.gap_vertices()) {
    if (!filled[u]) throw ForestError("gap vertex " + std::to_string(g.label(u)) + " left without an arc");
  }
  return Arborescence(g, forest.root, std::move(parents));
}

std::vector<Edge> to_tree(const Arborescence& a) {
  std::vector<Edge> tree;
  tree.reserve(a.num_vertices() - 1);
  for (std::size_t v = 0; v < a.num_vertices(); ++v) {
    if (static_cast<Vertex>(v) == a.root()) continue;
    tree.push_back(make_edge(a.parent(static_cast<Vertex>(v)), static_cast<Vertex>(v)));
  }
  std::sort(tree.begin(), tree.end());
  return tree;
}

Arborescence orient_tree(const Graph& g, std::span<const Edge> tree, Vertex root) {
  const std::size_t n = g.num_vertices();
  if (tree.size() + 1 != n) throw ForestError("edge set has the wrong size for a spanning tree");
  std::vector<std::vector<Vertex>> adj(n);
  for (const Edge& e : tree) {
    if (!g.has_edge(e.first, e.second)) throw ForestError("tree edge is not a graph edge");
    adj[e.first].push_back(e.second);
    adj[e.second].push_back(e.first);
  }
  std::vector<Vertex> parents(n, -1);
  std::vector<char> seen(n, 0);
  std::vector<Vertex> queue{root};
  seen[root] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex v = queue[head];
    for (Vertex w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        parents[w] = v;
        queue.push_back(w);
      }
    }
  }
  if (queue.size() != n) throw ForestError("edge set does not span the graph");
  return Arborescence(g, root, std::move(parents));
}

void write_tree(const Graph& g, std::span<const Edge> tree, std::ostream& out) {
  std::vector<std::pair<long long, long long>> pairs;
  pairs.reserve(tree.size());
  for (const Edge& e : tree) {
    const long long a = g.label(e.first);
    const long long b = g.label(e.second);
    pairs.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(pairs.begin(), pairs.end());
  for (const auto& [a, b] : pairs) out << a << ' ' << b << '\n';
}

void write_arborescence(const Graph& g, const Arborescence& a, std::ostream& out) {
  out << "root " << g.label(a.root()) << '\n';
  std::vector<std::pair<long long, long long>> arcs;
  for (std::size_t v = 0; v < a.num_vertices(); ++v) {
    if (static_cast<Vertex>(v) == a.root()) continue;
    arcs.emplace_back(g.label(a.parent(static_cast<Vertex>(v))), g.label(static_cast<Vertex>(v)));
  }
  std::sort(arcs.begin(), arcs.end(), [](const auto& x, const auto& y) { return x.second < y.second; });
  for (const auto& [p, c] : arcs) out << p << ' ' << c << '\n';
}

}  // namespace rst
