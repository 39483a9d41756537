#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/SparseCore>

#include "rst/graph.hpp"

namespace rst {

struct WeightedEdge {
  Vertex u;
  Vertex v;
  double weight;
};

/// Weighted undirected graph with two terminals: the source held at voltage 1
/// and the sink held at 0. Parallel edges are merged by summing weights.
class WeightedGadget {
 public:
  /// Throws SolverError(Singular) on non-positive weights, self-loops, bad
  /// endpoints or source == sink. Connectivity is checked by the solver.
  WeightedGadget(std::size_t num_vertices, std::vector<WeightedEdge> edges, Vertex source, Vertex sink);

  std::size_t num_vertices() const noexcept { return num_vertices_; }
  /// Merged edges, sorted by (min endpoint, max endpoint).
  const std::vector<WeightedEdge>& edges() const noexcept { return edges_; }
  Vertex source() const noexcept { return source_; }
  Vertex sink() const noexcept { return sink_; }

 private:
  std::size_t num_vertices_;
  std::vector<WeightedEdge> edges_;
  Vertex source_;
  Vertex sink_;
};

struct VoltageVector {
  /// values[source] == 1, values[sink] == 0, everything else in [0, 1].
  std::vector<double> values;
  bool direct = true;
  std::size_t iterations = 0;
  /// Relative residual of the grounded system (0 for the direct path).
  double residual = 0.0;
};

struct SolveOptions {
  /// Target relative residual for the iterative path.
  double tolerance = 1e-10;
  /// Gadgets up to this many vertices are factored densely.
  std::size_t direct_threshold = 2000;
  /// Iteration cap is this factor times the vertex count.
  std::size_t iteration_factor = 20;
};

Eigen::SparseMatrix<double> build_laplacian(const WeightedGadget& gadget);

/// Voltages with the source at 1 and the sink at 0.
///
/// The sink is grounded by deleting its row and column; the reduced SPD system
/// L' x = e_source is solved by dense Cholesky (small gadgets) or
/// Jacobi-preconditioned CG, then scaled by x[source].
VoltageVector solve_two_terminal(const WeightedGadget& gadget, const SolveOptions& options = {});

/// Largest |value(x) - weighted neighbor average| over non-terminal x.
double harmonic_defect(const WeightedGadget& gadget, const std::vector<double>& values);

}  // namespace rst
