#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rst/graph.hpp"

namespace rst {

/// Partition (D_1..D_k, S, C) of a graph into low-diameter components, cut
/// vertices S and cut edges C.
///
/// Components and S are stored explicitly; C is stored as given so that a
/// document read from disk can be checked against the graph. Per-component
/// boundary data (U(D_i), C(D_i)) and the boundary cut-vertex set C(S) are
/// derived from the components at construction.
class Decomposition {
 public:
  /// Derives S and C from the components: S is every vertex outside them, C
  /// every edge not inside a single component.
  static Decomposition from_components(const Graph& g, std::vector<std::vector<Vertex>> components,
                                       double phi, bool strong);
  /// Takes S and C verbatim (for documents loaded from disk). Vertices must be
  /// in range; consistency is left to verify_decomposition.
  static Decomposition from_parts(const Graph& g, std::vector<std::vector<Vertex>> components,
                                  std::vector<Vertex> cut_vertices, std::vector<EdgeId> cut_edges,
                                  double phi, bool strong);
  /// k = 0: every vertex in S and every edge in C. Vacuously strong.
  static Decomposition all_cut(const Graph& g, double phi);

  std::size_t num_components() const noexcept { return components_.size(); }
  const VertexSubset& component(std::size_t i) const { return components_[i]; }
  const std::vector<VertexSubset>& components() const noexcept { return components_; }
  const VertexSubset& cut_vertices() const noexcept { return cut_vertices_; }
  /// Sorted edge ids of C.
  const std::vector<EdgeId>& cut_edges() const noexcept { return cut_edges_; }

  /// Component index of v, or -1 for vertices not in any component.
  int component_of(Vertex v) const noexcept { return component_of_[static_cast<std::size_t>(v)]; }
  /// C(D_i): edges with exactly one endpoint in D_i, sorted.
  const std::vector<EdgeId>& component_cut_edges(std::size_t i) const { return comp_cut_edges_[i]; }
  /// U(D_i): vertices of D_i with an incident edge leaving D_i, sorted.
  const std::vector<Vertex>& boundary(std::size_t i) const { return boundary_[i]; }
  /// |E(D_i)|.
  std::size_t component_edge_count(std::size_t i) const { return comp_edge_count_[i]; }
  /// C(S): vertices outside all components adjacent to some component, sorted.
  const std::vector<Vertex>& boundary_cut_vertices() const noexcept { return boundary_cut_vertices_; }

  double phi() const noexcept { return phi_; }
  bool strong() const noexcept { return strong_; }

 private:
  Decomposition() = default;
  void derive(const Graph& g);

  std::vector<VertexSubset> components_;
  VertexSubset cut_vertices_;
  std::vector<EdgeId> cut_edges_;
  std::vector<int> component_of_;
  std::vector<std::vector<EdgeId>> comp_cut_edges_;
  std::vector<std::vector<Vertex>> boundary_;
  std::vector<std::size_t> comp_edge_count_;
  std::vector<Vertex> boundary_cut_vertices_;
  double phi_ = 0.0;
  bool strong_ = false;
};

/// Diameter allowance 6 * (1 + ln m / ln(1 + t)) with t = phi / (1 - phi).
double gamma_bound(double phi, std::size_t m);

/// Ball-growing decomposition followed by dissolving every component with
/// more cut edges than internal edges. Deterministic: balls are grown from the
/// lowest remaining vertex id. Throws DecompositionError unless 0 < phi < 1.
Decomposition strong_decompose(const Graph& g, double phi);

/// Same procedure with the strong flag cleared; the output is checked only
/// against the plain (phi, gamma) clauses.
Decomposition weak_decompose(const Graph& g, double phi);

struct ClauseResult {
  std::string name;
  bool passed = true;
  std::string detail;
  /// Offending component index, vertex or edge endpoints; empty on success.
  std::vector<long long> witness;
};

struct DecompositionReport {
  std::vector<ClauseResult> clauses;

  bool passed() const noexcept;
  const ClauseResult* find(const std::string& name) const noexcept;
};

/// Checks every clause of the (strong) decomposition definition:
///   partition, cut-edges, edge-budget (|C| <= 3 phi m),
///   component-cut (|C(D_i)| <= |E(D_i)|), diameter (<= gamma_bound),
///   and when strong: multiway-cut, vertex-budget (|C(S)| <= phi n).
DecompositionReport verify_decomposition(const Graph& g, const Decomposition& d);

/// JSON document with labels from g.
std::string decomposition_to_json(const Graph& g, const Decomposition& d);
Decomposition decomposition_from_json(const Graph& g, const std::string& text);
std::string report_to_text(const DecompositionReport& report);

}  // namespace rst
