#pragma once

#include <cmath>
#include <initializer_list>
#include <utility>
#include <vector>

#include "rst/graph.hpp"

namespace rst::testing {

inline Graph graph_of(std::size_t n, std::initializer_list<std::pair<int, int>> pairs) {
  std::vector<Edge> edges;
  for (auto [a, b] : pairs) edges.push_back(make_edge(a, b));
  return Graph(n, edges);
}

/// Four binomial standard deviations around p for N draws.
inline double four_sigma(double p, double n) { return 4.0 * std::sqrt(p * (1.0 - p) / n); }

}  // namespace rst::testing
