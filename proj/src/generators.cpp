#include "rst/generators.hpp"

#include <vector>

#include "rst/errors.hpp"
#include "rst/rng.hpp"

namespace rst::gen {

namespace {

Vertex as_vertex(std::size_t v) { return static_cast<Vertex>(v); }

}  // namespace

Graph path(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t v = 0; v + 1 < n; ++v) edges.push_back({as_vertex(v), as_vertex(v + 1)});
  return Graph(n, edges);
}

Graph cycle(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < n; ++v) edges.push_back(make_edge(as_vertex(v), as_vertex((v + 1) % n)));
  return Graph(n, edges);
}

Graph complete(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) edges.push_back({as_vertex(a), as_vertex(b)});
  }
  return Graph(n, edges);
}

Graph star(std::size_t leaves) {
  std::vector<Edge> edges;
  for (std::size_t v = 1; v <= leaves; ++v) edges.push_back({0, as_vertex(v)});
  return Graph(leaves + 1, edges);
}

Graph complete_bipartite(std::size_t a, std::size_t b) {
  std::vector<Edge> edges;
  for (std::size_t x = 0; x < a; ++x) {
    for (std::size_t y = 0; y < b; ++y) edges.push_back({as_vertex(x), as_vertex(a + y)});
  }
  return Graph(a + b, edges);
}

Graph grid(std::size_t rows, std::size_t cols) {
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t v = r * cols + c;
      if (c + 1 < cols) edges.push_back({as_vertex(v), as_vertex(v + 1)});
      if (r + 1 < rows) edges.push_back({as_vertex(v), as_vertex(v + cols)});
    }
  }
  return Graph(rows * cols, edges);
}

Graph lollipop(std::size_t clique, std::size_t tail) {
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < clique; ++a) {
    for (std::size_t b = a + 1; b < clique; ++b) edges.push_back({as_vertex(a), as_vertex(b)});
  }
  for (std::size_t i = 0; i < tail; ++i) {
    edges.push_back({as_vertex(clique - 1 + i), as_vertex(clique + i)});
  }
  return Graph(clique + tail, edges);
}

Graph erdos_renyi_connected(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Edge> edges;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (rng.uniform01() < p) edges.push_back({as_vertex(a), as_vertex(b)});
      }
    }
    try {
      return Graph(n, edges);
    } catch (const GraphError& e) {
      if (e.kind() != GraphError::Kind::Disconnected) throw;
    }
  }
  throw GraphError(GraphError::Kind::Disconnected, "no connected G(n,p) draw in 1000 attempts");
}

}  // namespace rst::gen
