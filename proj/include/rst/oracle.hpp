#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "rst/bigint.hpp"
#include "rst/graph.hpp"
#include "rst/laplacian.hpp"

namespace rst {

/// Kirchhoff count: determinant of the Laplacian with vertex 0 removed.
BigInt count_spanning_trees(const Graph& g);

/// Every spanning tree as a sorted edge list, in lexicographic order of edge
/// ids. Throws OracleError when the count exceeds cap.
std::vector<std::vector<Edge>> enumerate_spanning_trees(const Graph& g, std::size_t cap = 100000);

/// Probability that a walk started at each vertex reaches target before any
/// other absorbing vertex. Transitions are proportional to edge weights
/// (parallel edges add up). Dense elimination with partial pivoting; throws
/// OracleError if some vertex cannot reach the absorbing set.
std::vector<double> absorbing_hit_probabilities(std::size_t n, std::span<const WeightedEdge> edges,
                                                const VertexSubset& absorbing, Vertex target);
std::vector<double> absorbing_hit_probabilities(const Graph& g, const VertexSubset& absorbing, Vertex target);

/// All targets at once: result[t][v] is the probability of being absorbed at
/// absorbing.ids()[t] when starting from v.
std::vector<std::vector<double>> absorbing_hit_matrix(std::size_t n, std::span<const WeightedEdge> edges,
                                                      const VertexSubset& absorbing);

/// Maps spanning trees of a small graph to indices 0..count-1.
class TreeIndex {
 public:
  explicit TreeIndex(const Graph& g, std::size_t cap = 100000);

  std::size_t size() const noexcept { return trees_.size(); }
  const std::vector<Edge>& tree(std::size_t i) const { return trees_[i]; }
  /// Index of a sorted edge list; throws OracleError when it is not a
  /// spanning tree of the graph.
  std::size_t index_of(std::span<const Edge> tree) const;

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint64_t>& key) const noexcept;
  };
  std::vector<std::uint64_t> key_of(std::span<const Edge> tree) const;

  const Graph* g_;
  std::vector<std::vector<Edge>> trees_;
  std::unordered_map<std::vector<std::uint64_t>, std::size_t, KeyHash> index_;
};

struct DistributionReport {
  std::size_t support = 0;
  std::size_t samples = 0;
  std::vector<std::size_t> counts;
  double chi_square = 0.0;
  std::size_t df = 0;
  /// Total-variation distance of the empirical distribution to uniform.
  double tv = 0.0;
  double alpha = 0.001;
  /// Chi-square quantile at 1 - alpha.
  double critical = 0.0;

  bool chi_square_passes() const noexcept { return chi_square < critical; }
};

/// Upper alpha quantile of the chi-square distribution.
double chi_square_critical(std::size_t df, double alpha);

DistributionReport report_from_counts(std::vector<std::size_t> counts, double alpha = 0.001);

/// Chi-square and TV against the uniform distribution over all spanning trees.
DistributionReport uniformity_test(std::span<const std::vector<Edge>> samples, const Graph& g,
                                   double alpha = 0.001);

/// key=value lines; with tv_threshold > 0 also a verdict line.
std::string distribution_to_text(const DistributionReport& report, double tv_threshold = 0.0);

}  // namespace rst
