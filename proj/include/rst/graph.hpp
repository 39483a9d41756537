#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rst/rng.hpp"

namespace rst {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;

/// Undirected edge stored canonically with first < second.
struct Edge {
  Vertex first;
  Vertex second;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

/// Immutable connected simple graph in compressed adjacency form.
///
/// Vertices are 0..n-1. Each vertex keeps a sorted neighbor list, and every
/// adjacency slot carries the id of its undirected edge. Edge ids index the
/// sorted canonical edge list. Input labels are kept so output can be written
/// in the caller's numbering.
class Graph {
 public:
  /// Builds and validates a graph. Rejects self-loops, duplicates, ids out of
  /// range and (unless n == 1 with no edges) disconnected input.
  Graph(std::size_t n, std::span<const Edge> edges);
  Graph(std::size_t n, std::span<const Edge> edges, std::vector<long long> labels);

  std::size_t num_vertices() const noexcept { return offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  std::size_t degree(Vertex v) const noexcept {
    return offsets_[static_cast<std::size_t>(v) + 1] - offsets_[static_cast<std::size_t>(v)];
  }
  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {neighbors_.data() + offsets_[static_cast<std::size_t>(v)], degree(v)};
  }
  /// Edge ids parallel to neighbors(v).
  std::span<const EdgeId> incident_edges(Vertex v) const noexcept {
    return {edge_ids_.data() + offsets_[static_cast<std::size_t>(v)], degree(v)};
  }
  const Edge& edge(EdgeId e) const noexcept { return edges_[static_cast<std::size_t>(e)]; }
  std::span<const Edge> edges() const noexcept { return edges_; }

  /// Id of edge {a, b}, or -1 when absent.
  EdgeId find_edge(Vertex a, Vertex b) const noexcept;
  bool has_edge(Vertex a, Vertex b) const noexcept { return find_edge(a, b) >= 0; }

  long long label(Vertex v) const noexcept { return labels_[static_cast<std::size_t>(v)]; }
  /// Vertex with the given input label, or -1.
  Vertex vertex_of_label(long long label) const noexcept;

  /// Flat adjacency offset of v; slot indices are in [0, 2m).
  std::size_t slot_begin(Vertex v) const noexcept { return offsets_[static_cast<std::size_t>(v)]; }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> neighbors_;
  std::vector<EdgeId> edge_ids_;
  std::vector<Edge> edges_;
  std::vector<long long> labels_;
};

/// Ordered vertex list plus membership bitmap.
class VertexSubset {
 public:
  VertexSubset() = default;
  /// Ids must be unique and < universe.
  VertexSubset(std::size_t universe, std::vector<Vertex> ids);

  std::span<const Vertex> ids() const noexcept { return ids_; }
  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  bool contains(Vertex v) const noexcept {
    return v >= 0 && static_cast<std::size_t>(v) < member_.size() &&
           member_[static_cast<std::size_t>(v)] != 0;
  }
  std::size_t universe() const noexcept { return member_.size(); }

  auto begin() const noexcept { return ids_.begin(); }
  auto end() const noexcept { return ids_.end(); }

 private:
  std::vector<Vertex> ids_;
  std::vector<char> member_;
};

/// Parses a whitespace-separated edge list ("u v" per pair, '#' comments).
/// Labels are mapped to ids 0..n-1 in order of first appearance.
Graph load_graph(std::istream& in);
Graph load_graph_from_string(const std::string& text);

/// Canonical edge list in input labels, sorted, one "u v" per line.
void write_graph(const Graph& g, std::ostream& out);

/// Vertex drawn with probability deg(v)/2m (uniform when m == 0).
Vertex stationary_sample(const Graph& g, Rng& rng);

/// Largest hop distance between two vertices of comp inside the subgraph it
/// induces. Throws GraphError(Disconnected) when that subgraph is disconnected.
std::size_t induced_diameter(const Graph& g, const VertexSubset& comp);

/// Number of edges with both endpoints in comp.
std::size_t induced_edge_count(const Graph& g, const VertexSubset& comp);

}  // namespace rst
