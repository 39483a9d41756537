#include "rst/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "rst/errors.hpp"

namespace rst {

Decomposition Decomposition::from_components(const Graph& g, std::vector<std::vector<Vertex>> components,
                                             double phi, bool strong) {
  const std::size_t n = g.num_vertices();
  std::vector<char> covered(n, 0);
  for (const auto& comp : components) {
    for (Vertex v : comp) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) {
        throw DecompositionError("component vertex out of range");
      }
      covered[v] = 1;
    }
  }
  std::vector<Vertex> cut_vertices;
  for (std::size_t v = 0; v < n; ++v) {
    if (!covered[v]) cut_vertices.push_back(static_cast<Vertex>(v));
  }
  std::vector<int> owner(n, -1);
  for (std::size_t i = 0; i < components.size(); ++i) {
    for (Vertex v : components[i]) owner[v] = static_cast<int>(i);
  }
  std::vector<EdgeId> cut_edges;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(static_cast<EdgeId>(e));
    if (owner[edge.first] < 0 || owner[edge.first] != owner[edge.second]) {
      cut_edges.push_back(static_cast<EdgeId>(e));
    }
  }
  return from_parts(g, std::move(components), std::move(cut_vertices), std::move(cut_edges), phi, strong);
}

Decomposition Decomposition::from_parts(const Graph& g, std::vector<std::vector<Vertex>> components,
                                        std::vector<Vertex> cut_vertices, std::vector<EdgeId> cut_edges,
                                        double phi, bool strong) {
  Decomposition d;
  const std::size_t n = g.num_vertices();
  try {
    for (auto& comp : components) {
      std::sort(comp.begin(), comp.end());
      d.components_.emplace_back(n, std::move(comp));
    }
    std::sort(cut_vertices.begin(), cut_vertices.end());
    d.cut_vertices_ = VertexSubset(n, std::move(cut_vertices));
  } catch (const GraphError& e) {
    throw DecompositionError(std::string("malformed decomposition: ") + e.what());
  }
  for (EdgeId e : cut_edges) {
    if (e < 0 || static_cast<std::size_t>(e) >= g.num_edges()) {
      throw DecompositionError("cut edge id out of range");
    }
  }
  std::sort(cut_edges.begin(), cut_edges.end());
  cut_edges.erase(std::unique(cut_edges.begin(), cut_edges.end()), cut_edges.end());
  d.cut_edges_ = std::move(cut_edges);
  d.phi_ = phi;
  d.strong_ = strong;
  d.derive(g);
  return d;
}

Decomposition Decomposition::all_cut(const Graph& g, double phi) {
  return from_components(g, {}, phi, true);
}

void Decomposition::derive(const Graph& g) {
  const std::size_t n = g.num_vertices();
  const std::size_t k = components_.size();
  // First owner wins; overlapping components are reported by the verifier.
  component_of_.assign(n, -1);
  for (std::size_t i = 0; i < k; ++i) {
    for (Vertex v : components_[i]) {
      if (component_of_[v] < 0) component_of_[v] = static_cast<int>(i);
    }
  }
  comp_cut_edges_.assign(k, {});
  boundary_.assign(k, {});
  comp_edge_count_.assign(k, 0);
  std::vector<char> in_boundary_cut(n, 0);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(static_cast<EdgeId>(e));
    const int a = component_of_[edge.first];
    const int b = component_of_[edge.second];
    if (a >= 0 && a == b) {
      ++comp_edge_count_[a];
      continue;
    }
    if (a >= 0) {
      comp_cut_edges_[a].push_back(static_cast<EdgeId>(e));
      boundary_[a].push_back(edge.first);
      if (b < 0) in_boundary_cut[edge.second] = 1;
    }
    if (b >= 0) {
      comp_cut_edges_[b].push_back(static_cast<EdgeId>(e));
      boundary_[b].push_back(edge.second);
      if (a < 0) in_boundary_cut[edge.first] = 1;
    }
  }
  for (auto& u : boundary_) {
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
  }
  boundary_cut_vertices_.clear();
  for (std::size_t v = 0; v < n; ++v) {
    if (in_boundary_cut[v]) boundary_cut_vertices_.push_back(static_cast<Vertex>(v));
  }
}

double gamma_bound(double phi, std::size_t m) {
  const double t = phi / (1.0 - phi);
  const double log_m = m > 1 ? std::log(static_cast<double>(m)) : 0.0;
  return 6.0 * (1.0 + log_m / std::log1p(t));
}

namespace {

// BFS layers of a ball grown inside the remaining graph H. Layers are built on
// demand together with the edge counts the growth rule needs.
class BallGrower {
 public:
  BallGrower(const Graph& g, const std::vector<char>& alive, std::vector<int>& level,
             std::vector<int>& stamp, int ball_id, Vertex center)
      : g_(g), alive_(alive), level_(level), stamp_(stamp), ball_id_(ball_id) {
    layers_.push_back({center});
    down_edges_.push_back(0);
    inner_edges_.push_back(0);
    mark(center, 0);
  }

  const std::vector<Vertex>& layer(std::size_t k) {
    while (layers_.size() <= k) grow();
    return layers_[k];
  }
  /// Edges between layer k and layer k-1 plus edges inside layer k.
  std::size_t layer_edges(std::size_t k) {
    layer(k);
    return down_edges_[k] + inner_edges_[k];
  }

 private:
  bool labelled(Vertex v) const { return stamp_[v] == ball_id_; }
  void mark(Vertex v, int k) {
    stamp_[v] = ball_id_;
    level_[v] = k;
  }

  void grow() {
    const int k = static_cast<int>(layers_.size());
    std::vector<Vertex> next;
    for (Vertex x : layers_.back()) {
      for (Vertex y : g_.neighbors(x)) {
        if (alive_[y] && !labelled(y)) {
          mark(y, k);
          next.push_back(y);
        }
      }
    }
    std::size_t down = 0;
    std::size_t inner = 0;
    for (Vertex x : next) {
      for (Vertex y : g_.neighbors(x)) {
        if (!alive_[y] || !labelled(y)) continue;
        if (level_[y] == k - 1) ++down;
        if (level_[y] == k && y > x) ++inner;
      }
    }
    layers_.push_back(std::move(next));
    down_edges_.push_back(down);
    inner_edges_.push_back(inner);
  }

  const Graph& g_;
  const std::vector<char>& alive_;
  std::vector<int>& level_;
  std::vector<int>& stamp_;
  int ball_id_;
  std::vector<std::vector<Vertex>> layers_;
  std::vector<std::size_t> down_edges_;
  std::vector<std::size_t> inner_edges_;
};

Decomposition ball_growing(const Graph& g, double phi, bool strong) {
  if (!(phi > 0.0 && phi < 1.0)) {
    throw DecompositionError("phi must lie strictly between 0 and 1");
  }
  const double t = phi / (1.0 - phi);
  const std::size_t n = g.num_vertices();
  std::vector<char> alive(n, 1);
  std::vector<int> level(n, -1);
  std::vector<int> stamp(n, -1);
  std::vector<std::vector<Vertex>> balls;

  int ball_id = 0;
  for (std::size_t next = 0; next < n; ++next) {
    if (!alive[next]) continue;
    BallGrower grower(g, alive, level, stamp, ball_id++, static_cast<Vertex>(next));
    std::size_t j = 0;
    std::size_t ball_vertices = 1;
    std::size_t ball_edges = 0;
    while (true) {
      const double vertex_budget = t * static_cast<double>(ball_vertices);
      const double edge_budget = t * static_cast<double>(ball_edges);
      const bool grow = static_cast<double>(grower.layer(j + 1).size()) > vertex_budget ||
                        static_cast<double>(grower.layer_edges(j + 2)) > edge_budget ||
                        static_cast<double>(grower.layer_edges(j + 1)) > edge_budget;
      if (!grow) break;
      ++j;
      ball_vertices += grower.layer(j).size();
      ball_edges += grower.layer_edges(j);
    }
    std::vector<Vertex> ball;
    for (std::size_t k = 0; k <= j; ++k) {
      for (Vertex v : grower.layer(k)) {
        ball.push_back(v);
        alive[v] = 0;
      }
    }
    for (Vertex v : grower.layer(j + 1)) alive[v] = 0;
    balls.push_back(std::move(ball));
  }

  // Dissolve components whose cut exceeds their interior. Components never
  // touch each other, so removing one leaves every other count unchanged.
  const Decomposition grown = Decomposition::from_components(g, balls, phi, strong);
  std::vector<std::vector<Vertex>> kept;
  for (std::size_t i = 0; i < grown.num_components(); ++i) {
    if (grown.component_cut_edges(i).size() <= grown.component_edge_count(i)) {
      auto ids = grown.component(i).ids();
      kept.emplace_back(ids.begin(), ids.end());
    }
  }
  return Decomposition::from_components(g, std::move(kept), phi, strong);
}

}  // namespace

Decomposition strong_decompose(const Graph& g, double phi) { return ball_growing(g, phi, true); }

Decomposition weak_decompose(const Graph& g, double phi) { return ball_growing(g, phi, false); }

bool DecompositionReport::passed() const noexcept {
  return std::all_of(clauses.begin(), clauses.end(), [](const ClauseResult& c) { return c.passed; });
}

const ClauseResult* DecompositionReport::find(const std::string& name) const noexcept {
  for (const auto& c : clauses) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

DecompositionReport verify_decomposition(const Graph& g, const Decomposition& d) {
  const std::size_t n = g.num_vertices();
  const std::size_t m = g.num_edges();
  DecompositionReport report;

  {
    ClauseResult c{"partition", true, "", {}};
    std::vector<int> hits(n, 0);
    for (const auto& comp : d.components()) {
      for (Vertex v : comp) ++hits[v];
    }
    for (Vertex v : d.cut_vertices()) ++hits[v];
    for (std::size_t v = 0; v < n; ++v) {
      if (hits[v] != 1) {
        c.passed = false;
        c.detail = "vertex " + std::to_string(g.label(static_cast<Vertex>(v))) + " covered " +
                   std::to_string(hits[v]) + " times";
        c.witness = {g.label(static_cast<Vertex>(v))};
        break;
      }
    }
    report.clauses.push_back(std::move(c));
  }

  {
    ClauseResult c{"cut-edges", true, "", {}};
    std::vector<char> in_cut(m, 0);
    for (EdgeId e : d.cut_edges()) in_cut[e] = 1;
    for (std::size_t e = 0; e < m; ++e) {
      const Edge& edge = g.edge(static_cast<EdgeId>(e));
      const int a = d.component_of(edge.first);
      const bool inside = a >= 0 && a == d.component_of(edge.second);
      if (inside == static_cast<bool>(in_cut[e])) {
        c.passed = false;
        c.detail = std::string(inside ? "intra-component edge listed in C: " : "edge missing from C: ") +
                   std::to_string(g.label(edge.first)) + " " + std::to_string(g.label(edge.second));
        c.witness = {g.label(edge.first), g.label(edge.second)};
        break;
      }
    }
    report.clauses.push_back(std::move(c));
  }

  {
    const double budget = 3.0 * d.phi() * static_cast<double>(m);
    ClauseResult c{"edge-budget", true, "", {}};
    c.detail = "|C|=" + std::to_string(d.cut_edges().size()) + " budget=" + std::to_string(budget);
    c.passed = static_cast<double>(d.cut_edges().size()) <= budget;
    report.clauses.push_back(std::move(c));
  }

  {
    ClauseResult c{"component-cut", true, "", {}};
    for (std::size_t i = 0; i < d.num_components(); ++i) {
      if (d.component_cut_edges(i).size() > d.component_edge_count(i)) {
        c.passed = false;
        c.detail = "component " + std::to_string(i) + ": |C(D_i)|=" +
                   std::to_string(d.component_cut_edges(i).size()) +
                   " > |E(D_i)|=" + std::to_string(d.component_edge_count(i));
        c.witness = {static_cast<long long>(i)};
        break;
      }
    }
    report.clauses.push_back(std::move(c));
  }

  {
    const double bound = gamma_bound(d.phi(), m);
    ClauseResult c{"diameter", true, "bound=" + std::to_string(bound), {}};
    for (std::size_t i = 0; i < d.num_components(); ++i) {
      try {
        const auto diam = induced_diameter(g, d.component(i));
        if (static_cast<double>(diam) > bound) {
          c.passed = false;
          c.detail = "component " + std::to_string(i) + " diameter " + std::to_string(diam) +
                     " exceeds " + std::to_string(bound);
          c.witness = {static_cast<long long>(i)};
          break;
        }
      } catch (const GraphError&) {
        c.passed = false;
        c.detail = "component " + std::to_string(i) + " is disconnected";
        c.witness = {static_cast<long long>(i)};
        break;
      }
    }
    report.clauses.push_back(std::move(c));
  }

  if (d.strong()) {
    ClauseResult c{"multiway-cut", true, "", {}};
    for (const Edge& edge : g.edges()) {
      const int a = d.component_of(edge.first);
      const int b = d.component_of(edge.second);
      if (a >= 0 && b >= 0 && a != b) {
        c.passed = false;
        c.detail = "edge joins components " + std::to_string(a) + " and " + std::to_string(b);
        c.witness = {g.label(edge.first), g.label(edge.second)};
        break;
      }
    }
    report.clauses.push_back(std::move(c));

    // Empty S passes trivially.
    const double budget = d.phi() * static_cast<double>(n);
    ClauseResult v{"vertex-budget", true, "", {}};
    v.detail = "|C(S)|=" + std::to_string(d.boundary_cut_vertices().size()) + " budget=" + std::to_string(budget);
    v.passed = static_cast<double>(d.boundary_cut_vertices().size()) <= budget;
    report.clauses.push_back(std::move(v));
  }
  return report;
}

std::string decomposition_to_json(const Graph& g, const Decomposition& d) {
  using nlohmann::json;
  json doc;
  doc["phi"] = d.phi();
  doc["strong"] = d.strong();
  doc["n"] = g.num_vertices();
  doc["m"] = g.num_edges();
  json comps = json::array();
  for (const auto& comp : d.components()) {
    json ids = json::array();
    for (Vertex v : comp) ids.push_back(g.label(v));
    comps.push_back(std::move(ids));
  }
  doc["components"] = std::move(comps);
  json cut_vertices = json::array();
  for (Vertex v : d.cut_vertices()) cut_vertices.push_back(g.label(v));
  doc["cut_vertices"] = std::move(cut_vertices);
  json cut_edges = json::array();
  for (EdgeId e : d.cut_edges()) {
    const Edge& edge = g.edge(e);
    const long long a = g.label(edge.first);
    const long long b = g.label(edge.second);
    cut_edges.push_back(json::array({std::min(a, b), std::max(a, b)}));
  }
  doc["cut_edges"] = std::move(cut_edges);
  return doc.dump(2) + "\n";
}

Decomposition decomposition_from_json(const Graph& g, const std::string& text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw DecompositionError(std::string("bad decomposition document: ") + e.what());
  }
  auto vertex = [&](const json& label) {
    const Vertex v = g.vertex_of_label(label.get<long long>());
    if (v < 0) throw DecompositionError("unknown vertex " + label.dump());
    return v;
  };
  try {
    std::vector<std::vector<Vertex>> components;
    for (const auto& comp : doc.at("components")) {
      auto& ids = components.emplace_back();
      for (const auto& label : comp) ids.push_back(vertex(label));
    }
    std::vector<Vertex> cut_vertices;
    for (const auto& label : doc.at("cut_vertices")) cut_vertices.push_back(vertex(label));
    std::vector<EdgeId> cut_edges;
    for (const auto& pair : doc.at("cut_edges")) {
      const EdgeId e = g.find_edge(vertex(pair.at(0)), vertex(pair.at(1)));
      if (e < 0) throw DecompositionError("cut edge " + pair.dump() + " not in graph");
      cut_edges.push_back(e);
    }
    return Decomposition::from_parts(g, std::move(components), std::move(cut_vertices), std::move(cut_edges),
                                     doc.at("phi").get<double>(), doc.at("strong").get<bool>());
  } catch (const json::exception& e) {
    throw DecompositionError(std::string("bad decomposition document: ") + e.what());
  }
}

std::string report_to_text(const DecompositionReport& report) {
  std::ostringstream out;
  for (const auto& c : report.clauses) {
    out << "clause=" << c.name << " status=" << (c.passed ? "pass" : "fail");
    if (!c.detail.empty()) out << " detail=\"" << c.detail << '"';
    out << '\n';
  }
  out << "decomposition=" << (report.passed() ? "valid" : "invalid") << '\n';
  return out.str();
}

}  // namespace rst
