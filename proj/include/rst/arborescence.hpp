#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <vector>

#include "rst/bigint.hpp"
#include "rst/graph.hpp"
#include "rst/rng.hpp"

namespace rst {

/// Spanning arborescence with arcs pointing away from the root: every vertex
/// except the root has exactly one incoming arc (parent(v), v).
class Arborescence {
 public:
  /// Throws ForestError unless parents describe a spanning arborescence of g
  /// rooted at root (root has parent -1).
  Arborescence(const Graph& g, Vertex root, std::vector<Vertex> parents);

  Vertex root() const noexcept { return root_; }
  Vertex parent(Vertex v) const noexcept { return parents_[static_cast<std::size_t>(v)]; }
  const std::vector<Vertex>& parents() const noexcept { return parents_; }
  std::size_t num_vertices() const noexcept { return parents_.size(); }

  friend bool operator==(const Arborescence&, const Arborescence&) = default;

 private:
  Vertex root_;
  std::vector<Vertex> parents_;
};

/// First-entry arcs found by a walk. Vertices in the gap set were visited but
/// their incoming arc is unknown.
struct PartialForest {
  Vertex root = -1;
  /// parent[v] for vertices with a known arc, -1 otherwise.
  std::vector<Vertex> parent;
  std::vector<char> gap;

  PartialForest() = default;
  PartialForest(std::size_t n, Vertex root) : root(root), parent(n, -1), gap(n, 0) {}

  bool has_gaps() const noexcept;
  std::vector<Vertex> gap_vertices() const;
};

/// Marks the given vertices (other than the root) as gaps and forgets any arcs
/// recorded for them.
PartialForest forget_arcs(PartialForest forest, std::span<const Vertex> vertices);

/// Reads the arborescence off a complete forest. Throws ForestError when gaps
/// remain or an arc is missing.
Arborescence extract(const Graph& g, const PartialForest& forest);

/// Quotient of a gapped forest: node 0 holds the root's tree, node l >= 1 the
/// tree hanging below the l-th gap vertex (ascending). Arc (j -> l) exists for
/// every graph edge (v, gap_l) with v in tree j, j != l; parallel edges are
/// kept as the arc's multiplicity.
struct QuotientDigraph {
  struct Arc {
    std::size_t from;
    std::size_t to;
    /// Concrete (v, gap vertex) edges represented by this arc.
    std::vector<std::pair<Vertex, Vertex>> edges;
    std::size_t multiplicity() const noexcept { return edges.size(); }
  };

  std::size_t num_nodes = 0;
  /// gap_vertex[l] for l >= 1; gap_vertex[0] is the forest root.
  std::vector<Vertex> gap_vertex;
  /// Node of every graph vertex.
  std::vector<std::size_t> node_of;
  std::vector<Arc> arcs;
};

/// Throws ForestError when the forest has no gaps or its known arcs do not
/// form trees hanging from the root and the gap vertices.
QuotientDigraph build_quotient(const Graph& g, const PartialForest& forest);

/// Number of arborescences of q rooted at root, each weighted by the product
/// of its arc multiplicities (directed matrix-tree theorem, exact).
BigInt count_arborescences(const QuotientDigraph& q, std::size_t root);

struct ArcChoice {
  std::size_t node;
  std::size_t arc;
  /// Concrete edge (v, gap vertex) picked among the arc's multiplicity.
  std::pair<Vertex, Vertex> edge;
};

/// Uniform completion: non-root nodes in ascending order each pick an incoming
/// arc with probability (weighted arborescences using it) / (current total),
/// then one of the arc's concrete edges uniformly. Throws ForestError when no
/// arborescence exists.
std::vector<ArcChoice> sample_quotient_arborescence(const QuotientDigraph& q, std::size_t root, Rng& rng);

/// Applies the chosen gap arcs to the forest.
Arborescence complete(const Graph& g, const PartialForest& forest, std::span<const ArcChoice> choices);

/// Undirected spanning tree, canonically sorted.
std::vector<Edge> to_tree(const Arborescence& a);

/// Orients a spanning tree away from root. Throws ForestError when the edge
/// set is not a spanning tree of g.
Arborescence orient_tree(const Graph& g, std::span<const Edge> tree, Vertex root);

/// "u v" lines in input labels, sorted by label pair.
void write_tree(const Graph& g, std::span<const Edge> tree, std::ostream& out);
/// "root r" header followed by "parent child" lines in label order.
void write_arborescence(const Graph& g, const Arborescence& a, std::ostream& out);

}  // namespace rst
