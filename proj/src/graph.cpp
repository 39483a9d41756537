#include "rst/graph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "rst/errors.hpp"

namespace rst {

namespace {

std::vector<long long> identity_labels(std::size_t n) {
  std::vector<long long> labels(n);
  std::iota(labels.begin(), labels.end(), 0LL);
  return labels;
}

bool is_connected(std::size_t n, std::span<const std::size_t> offsets,
                  std::span<const Vertex> neighbors) {
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (std::size_t s = offsets[v]; s < offsets[v + 1]; ++s) {
      const Vertex w = neighbors[s];
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

}  // namespace

Graph::Graph(std::size_t n, std::span<const Edge> edges) : Graph(n, edges, identity_labels(n)) {}

Graph::Graph(std::size_t n, std::span<const Edge> edges, std::vector<long long> labels)
    : labels_(std::move(labels)) {
  if (n == 0) throw GraphError(GraphError::Kind::OutOfRange, "graph has no vertices");
  if (labels_.size() != n) throw GraphError(GraphError::Kind::OutOfRange, "label count differs from n");

  edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.first < 0 || e.second < 0 || static_cast<std::size_t>(e.first) >= n ||
        static_cast<std::size_t>(e.second) >= n) {
      throw GraphError(GraphError::Kind::OutOfRange, "edge endpoint out of range");
    }
    if (e.first == e.second) {
      throw GraphError(GraphError::Kind::SelfLoop,
                       "self-loop at vertex " + std::to_string(labels_[e.first]));
    }
    edges_.push_back(make_edge(e.first, e.second));
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
    throw GraphError(GraphError::Kind::DuplicateEdge,
                     "duplicate edge " + std::to_string(labels_[dup->first]) + " " +
                         std::to_string(labels_[dup->second]));
  }

  std::vector<std::size_t> degree(n, 0);
  for (const Edge& e : edges_) {
    ++degree[e.first];
    ++degree[e.second];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  neighbors_.resize(offsets_[n]);
  edge_ids_.resize(offsets_[n]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  // Edges are sorted by (first, second), so filling in edge order leaves every
  // neighbor list sorted: for vertex v, lower neighbors arrive as `second`
  // before any higher neighbor arrives as `first`.
  for (std::size_t id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    neighbors_[cursor[e.first]] = e.second;
    edge_ids_[cursor[e.first]++] = static_cast<EdgeId>(id);
    neighbors_[cursor[e.second]] = e.first;
    edge_ids_[cursor[e.second]++] = static_cast<EdgeId>(id);
  }
  if (!is_connected(n, offsets_, neighbors_)) {
    throw GraphError(GraphError::Kind::Disconnected, "graph is disconnected");
  }
}

EdgeId Graph::find_edge(Vertex a, Vertex b) const noexcept {
  if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= num_vertices() ||
      static_cast<std::size_t>(b) >= num_vertices()) {
    return -1;
  }
  auto adj = neighbors(a);
  auto it = std::lower_bound(adj.begin(), adj.end(), b);
  if (it == adj.end() || *it != b) return -1;
  return incident_edges(a)[static_cast<std::size_t>(it - adj.begin())];
}

Vertex Graph::vertex_of_label(long long label) const noexcept {
  for (std::size_t v = 0; v < labels_.size(); ++v) {
    if (labels_[v] == label) return static_cast<Vertex>(v);
  }
  return -1;
}

VertexSubset::VertexSubset(std::size_t universe, std::vector<Vertex> ids)
    : ids_(std::move(ids)), member_(universe, 0) {
  for (Vertex v : ids_) {
    if (v < 0 || static_cast<std::size_t>(v) >= universe) {
      throw GraphError(GraphError::Kind::OutOfRange, "subset vertex out of range");
    }
    if (member_[v]) throw GraphError(GraphError::Kind::OutOfRange, "subset vertex repeated");
    member_[v] = 1;
  }
}

Graph load_graph(std::istream& in) {
  std::vector<long long> tokens;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string tok;
    while (fields >> tok) {
      long long value = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (ec != std::errc{} || ptr != tok.data() + tok.size() || value < 0) {
        throw GraphError(GraphError::Kind::Parse,
                         "line " + std::to_string(line_no) + ": bad vertex id '" + tok + "'");
      }
      tokens.push_back(value);
    }
  }
  if (tokens.empty()) throw GraphError(GraphError::Kind::Parse, "empty edge list");
  if (tokens.size() % 2 != 0) throw GraphError(GraphError::Kind::Parse, "odd number of vertex ids");

  std::unordered_map<long long, Vertex> ids;
  std::vector<long long> labels;
  auto id_of = [&](long long label) {
    auto [it, inserted] = ids.try_emplace(label, static_cast<Vertex>(labels.size()));
    if (inserted) labels.push_back(label);
    return it->second;
  };
  std::vector<Edge> edges;
  edges.reserve(tokens.size() / 2);
  for (std::size_t i = 0; i < tokens.size(); i += 2) {
    const Vertex a = id_of(tokens[i]);
    const Vertex b = id_of(tokens[i + 1]);
    edges.push_back(Edge{a, b});
  }
  const std::size_t n = labels.size();
  return Graph(n, edges, std::move(labels));
}

Graph load_graph_from_string(const std::string& text) {
  std::istringstream in(text);
  return load_graph(in);
}

void write_graph(const Graph& g, std::ostream& out) {
  std::vector<std::pair<long long, long long>> pairs;
  pairs.reserve(g.num_edges());
  for (const Edge& e : g.edges()) {
    const long long a = g.label(e.first);
    const long long b = g.label(e.second);
    pairs.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(pairs.begin(), pairs.end());
  for (const auto& [a, b] : pairs) out << a << ' ' << b << '\n';
}

Vertex stationary_sample(const Graph& g, Rng& rng) {
  const std::size_t slots = 2 * g.num_edges();
  if (slots == 0) return static_cast<Vertex>(rng.uniform_index(g.num_vertices()));
  const std::size_t slot = rng.uniform_index(slots);
  // Owner of an adjacency slot: last vertex whose offset is <= slot.
  std::size_t lo = 0;
  std::size_t hi = g.num_vertices();
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (g.slot_begin(static_cast<Vertex>(mid)) <= slot) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return static_cast<Vertex>(lo);
}

std::size_t induced_diameter(const Graph& g, const VertexSubset& comp) {
  if (comp.empty()) return 0;
  std::vector<int> dist(g.num_vertices(), -1);
  std::vector<Vertex> queue;
  queue.reserve(comp.size());
  std::size_t diameter = 0;
  for (Vertex src : comp) {
    for (Vertex v : comp) dist[v] = -1;
    queue.clear();
    queue.push_back(src);
    dist[src] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex v = queue[head];
      for (Vertex w : g.neighbors(v)) {
        if (comp.contains(w) && dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
      }
    }
    if (queue.size() != comp.size()) {
      throw GraphError(GraphError::Kind::Disconnected, "induced subgraph is disconnected");
    }
    diameter = std::max(diameter, static_cast<std::size_t>(dist[queue.back()]));
  }
  return diameter;
}

std::size_t induced_edge_count(const Graph& g, const VertexSubset& comp) {
  std::size_t count = 0;
  for (Vertex v : comp) {
    for (Vertex w : g.neighbors(v)) {
      if (w > v && comp.contains(w)) ++count;
    }
  }
  return count;
}

}  // namespace rst
