#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rst/decomposition.hpp"
#include "rst/graph.hpp"
#include "rst/laplacian.hpp"
#include "rst/rng.hpp"

namespace rst {

enum class ExitMode {
  Edge,    // exit through a cut edge (u, u'); walk continues at u'
  Vertex,  // first vertex reached outside the component
};

/// Where a shortcut block ends. In edge mode `from` is the last vertex inside
/// the component and `to` the vertex across the cut edge; in vertex mode
/// `from` is -1.
struct ExitTarget {
  Vertex from = -1;
  Vertex to = -1;

  friend bool operator==(const ExitTarget&, const ExitTarget&) = default;
};

/// Exit distribution of one component: probability of each target for every
/// vertex of the component, one row per vertex (rows renormalized).
struct ExitDistribution {
  ExitMode mode = ExitMode::Edge;
  std::size_t component = 0;
  std::vector<Vertex> vertices;
  std::vector<ExitTarget> targets;
  /// Row-major |vertices| x |targets|.
  std::vector<double> probabilities;
  /// Row sums before renormalization.
  std::vector<double> raw_sums;

  double at(std::size_t row, std::size_t target) const { return probabilities[row * targets.size() + target]; }
};

struct TableOptions {
  /// Multiplicative accuracy budget for every probability.
  double epsilon = 1e-6;
  SolveOptions solver{};
};

/// Solver tolerance used for a given accuracy budget: epsilon / (4n), floored
/// at what double precision can deliver.
double solver_tolerance(double epsilon, std::size_t n);

/// Exit-edge probabilities P_v(e) for component i of d.
///
/// One gadget per cut edge e = (u, u'): the component, u' and a sink u*, with
/// e kept and every other cut edge of the component redirected to u*. P_v(e)
/// is the voltage at v with u' at 1 and u* at 0. Throws SolverError with
/// component/edge context on solver failure.
ExitDistribution compute_edge_exits(const Graph& g, const Decomposition& d, std::size_t i,
                                    const TableOptions& options);

/// Exit-vertex probabilities Q_v(u) for component i of a strong decomposition.
///
/// For each cut vertex u adjacent to the component: the component plus the
/// adjacent cut vertices, all of them except u merged into a sink. Q_v(u) is the
/// voltage at v with u at 1. Throws DecompositionError if d is not strong.
ExitDistribution compute_vertex_exits(const Graph& g, const Decomposition& d, std::size_t i,
                                      const TableOptions& options);

/// Cumulative sampling table over the rows of one or more exit distributions.
class TransitionTable {
 public:
  struct Row {
    std::vector<ExitTarget> targets;
    /// cumulative[j] = p_0 + ... + p_j, last entry exactly 1.
    std::vector<double> cumulative;
    double raw_sum = 1.0;
  };

  TransitionTable(ExitMode mode, std::size_t num_vertices) : mode_(mode), row_of_(num_vertices, -1) {}

  ExitMode mode() const noexcept { return mode_; }
  bool has_row(Vertex v) const noexcept {
    return v >= 0 && static_cast<std::size_t>(v) < row_of_.size() && row_of_[v] >= 0;
  }
  /// Throws TableError when v has no row.
  const Row& row(Vertex v) const;
  std::size_t num_rows() const noexcept { return rows_.size(); }
  /// Largest |raw row sum - 1| seen while building.
  double max_normalization_drift() const noexcept { return max_drift_; }

  /// Draws a target with probability cumulative[j] - cumulative[j-1] by binary
  /// search on a uniform draw. Throws TableError when v has no row.
  const ExitTarget& sample_exit(Vertex v, Rng& rng) const;

  void add(const ExitDistribution& dist);

 private:
  ExitMode mode_;
  std::vector<int> row_of_;
  std::vector<Row> rows_;
  double max_drift_ = 0.0;
};

TransitionTable build_table(const ExitDistribution& dist, std::size_t num_vertices);

/// Tables for every component of d that has a cut: edge mode works on any
/// decomposition, vertex mode requires a strong one.
TransitionTable build_tables(const Graph& g, const Decomposition& d, ExitMode mode, const TableOptions& options);

/// Debug dump of a table, one row per vertex, in input labels.
std::string table_to_json(const Graph& g, const TransitionTable& table);

}  // namespace rst
