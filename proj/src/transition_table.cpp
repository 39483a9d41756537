#include "rst/transition_table.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include <json.hpp>

#include "rst/errors.hpp"

namespace rst {

double solver_tolerance(double epsilon, std::size_t n) {
  constexpr double kFloor = 1e-12;
  return std::max(epsilon / (4.0 * static_cast<double>(std::max<std::size_t>(n, 1))), kFloor);
}

namespace {

// Local numbering: component vertices 0..k-1 in ascending id order.
std::unordered_map<Vertex, Vertex> local_ids(const VertexSubset& comp) {
  std::unordered_map<Vertex, Vertex> local;
  local.reserve(comp.size());
  for (Vertex v : comp) local.emplace(v, static_cast<Vertex>(local.size()));
  return local;
}

std::vector<WeightedEdge> interior_edges(const Graph& g, const VertexSubset& comp,
                                         const std::unordered_map<Vertex, Vertex>& local) {
  std::vector<WeightedEdge> edges;
  for (Vertex v : comp) {
    for (Vertex w : g.neighbors(v)) {
      if (w > v && comp.contains(w)) edges.push_back({local.at(v), local.at(w), 1.0});
    }
  }
  return edges;
}

void renormalize(ExitDistribution& dist, double tolerance) {
  const std::size_t width = dist.targets.size();
  dist.raw_sums.assign(dist.vertices.size(), 0.0);
  const double allowance = 10.0 * tolerance * static_cast<double>(width);
  for (std::size_t r = 0; r < dist.vertices.size(); ++r) {
    double sum = 0.0;
    for (std::size_t t = 0; t < width; ++t) sum += dist.probabilities[r * width + t];
    dist.raw_sums[r] = sum;
    if (std::abs(sum - 1.0) > allowance) {
      throw SolverError(SolverError::Kind::Normalization,
                        "component " + std::to_string(dist.component) + ": exit probabilities from vertex " +
                            std::to_string(dist.vertices[r]) + " sum to " + std::to_string(sum));
    }
    for (std::size_t t = 0; t < width; ++t) dist.probabilities[r * width + t] /= sum;
  }
}

}  // namespace

ExitDistribution compute_edge_exits(const Graph& g, const Decomposition& d, std::size_t i,
                                    const TableOptions& options) {
  const VertexSubset& comp = d.component(i);
  const auto& cut = d.component_cut_edges(i);
  ExitDistribution dist;
  dist.mode = ExitMode::Edge;
  dist.component = i;
  dist.vertices.assign(comp.begin(), comp.end());
  for (EdgeId e : cut) {
    const Edge& edge = g.edge(e);
    const bool first_inside = comp.contains(edge.first);
    dist.targets.push_back(first_inside ? ExitTarget{edge.first, edge.second} : ExitTarget{edge.second, edge.first});
  }
  const std::size_t k = comp.size();
  const std::size_t width = dist.targets.size();
  dist.probabilities.assign(k * width, 0.0);
  if (width == 0) return dist;
  if (width == 1) {
    std::fill(dist.probabilities.begin(), dist.probabilities.end(), 1.0);
    dist.raw_sums.assign(k, 1.0);
    return dist;
  }

  SolveOptions solve = options.solver;
  solve.tolerance = std::min(solve.tolerance, solver_tolerance(options.epsilon, g.num_vertices()));
  const auto local = local_ids(comp);
  const auto interior = interior_edges(g, comp, local);
  const auto exit_vertex = static_cast<Vertex>(k);  // u'
  const auto sink = static_cast<Vertex>(k + 1);      // u*
  for (std::size_t t = 0; t < width; ++t) {
    std::vector<WeightedEdge> edges = interior;
    for (std::size_t other = 0; other < width; ++other) {
      const Vertex inside = local.at(dist.targets[other].from);
      edges.push_back({inside, other == t ? exit_vertex : sink, 1.0});
    }
    const WeightedGadget gadget(k + 2, std::move(edges), exit_vertex, sink);
    VoltageVector voltages;
    try {
      voltages = solve_two_terminal(gadget, solve);
    } catch (const SolverError& err) {
      throw SolverError(err.kind(), "component " + std::to_string(i) + ", cut edge " +
                                        std::to_string(g.label(dist.targets[t].from)) + "-" +
                                        std::to_string(g.label(dist.targets[t].to)) + ": " + err.what());
    }
    for (std::size_t r = 0; r < k; ++r) dist.probabilities[r * width + t] = voltages.values[r];
  }
  renormalize(dist, solve.tolerance);
  return dist;
}

ExitDistribution compute_vertex_exits(const Graph& g, const Decomposition& d, std::size_t i,
                                      const TableOptions& options) {
  if (!d.strong()) throw DecompositionError("exit-vertex probabilities need a strong decomposition");
  const VertexSubset& comp = d.component(i);
  ExitDistribution dist;
  dist.mode = ExitMode::Vertex;
  dist.component = i;
  dist.vertices.assign(comp.begin(), comp.end());

  // Adjacent cut vertices, ascending, with their incident cut edges.
  std::vector<Vertex> adjacent;
  for (EdgeId e : d.component_cut_edges(i)) {
    const Edge& edge = g.edge(e);
    adjacent.push_back(comp.contains(edge.first) ? edge.second : edge.first);
  }
  std::sort(adjacent.begin(), adjacent.end());
  adjacent.erase(std::unique(adjacent.begin(), adjacent.end()), adjacent.end());
  for (Vertex u : adjacent) dist.targets.push_back({-1, u});

  const std::size_t k = comp.size();
  const std::size_t width = dist.targets.size();
  dist.probabilities.assign(k * width, 0.0);
  if (width == 0) return dist;
  if (width == 1) {
    std::fill(dist.probabilities.begin(), dist.probabilities.end(), 1.0);
    dist.raw_sums.assign(k, 1.0);
    return dist;
  }

  SolveOptions solve = options.solver;
  solve.tolerance = std::min(solve.tolerance, solver_tolerance(options.epsilon, g.num_vertices()));
  const auto local = local_ids(comp);
  const auto interior = interior_edges(g, comp, local);
  const auto target = static_cast<Vertex>(k);  // u
  const auto sink = static_cast<Vertex>(k + 1);  // the other adjacent cut vertices, merged
  for (std::size_t t = 0; t < width; ++t) {
    std::vector<WeightedEdge> edges = interior;
    for (EdgeId e : d.component_cut_edges(i)) {
      const Edge& edge = g.edge(e);
      const bool first_inside = comp.contains(edge.first);
      const Vertex inside = first_inside ? edge.first : edge.second;
      const Vertex outside = first_inside ? edge.second : edge.first;
      edges.push_back({local.at(inside), outside == dist.targets[t].to ? target : sink, 1.0});
    }
    const WeightedGadget gadget(k + 2, std::move(edges), target, sink);
    VoltageVector voltages;
    try {
      voltages = solve_two_terminal(gadget, solve);
    } catch (const SolverError& err) {
      throw SolverError(err.kind(), "component " + std::to_string(i) + ", cut vertex " +
                                        std::to_string(g.label(dist.targets[t].to)) + ": " + err.what());
    }
    for (std::size_t r = 0; r < k; ++r) dist.probabilities[r * width + t] = voltages.values[r];
  }
  renormalize(dist, solve.tolerance);
  return dist;
}

const TransitionTable::Row& TransitionTable::row(Vertex v) const {
  if (!has_row(v)) throw TableError("no transition row for vertex " + std::to_string(v));
  return rows_[static_cast<std::size_t>(row_of_[v])];
}

const ExitTarget& TransitionTable::sample_exit(Vertex v, Rng& rng) const {
  const Row& r = row(v);
  const double u = rng.uniform01();
  auto it = std::upper_bound(r.cumulative.begin(), r.cumulative.end(), u);
  if (it == r.cumulative.end()) --it;
  return r.targets[static_cast<std::size_t>(it - r.cumulative.begin())];
}

void TransitionTable::add(const ExitDistribution& dist) {
  if (dist.mode != mode_) throw TableError("exit distribution mode does not match table");
  const std::size_t width = dist.targets.size();
  if (width == 0) return;
  for (std::size_t r = 0; r < dist.vertices.size(); ++r) {
    const Vertex v = dist.vertices[r];
    if (v < 0 || static_cast<std::size_t>(v) >= row_of_.size()) throw TableError("row vertex out of range");
    Row row;
    row.targets = dist.targets;
    row.cumulative.resize(width);
    double acc = 0.0;
    for (std::size_t t = 0; t < width; ++t) {
      acc += dist.at(r, t);
      row.cumulative[t] = acc;
    }
    // Drop rounding drift: the last entry is exactly 1 and the array stays
    // non-decreasing.
    for (double& c : row.cumulative) c = std::min(c, 1.0);
    row.cumulative.back() = 1.0;
    row.raw_sum = r < dist.raw_sums.size() ? dist.raw_sums[r] : 1.0;
    max_drift_ = std::max(max_drift_, std::abs(row.raw_sum - 1.0));
    if (row_of_[v] >= 0) {
      rows_[static_cast<std::size_t>(row_of_[v])] = std::move(row);
    } else {
      row_of_[v] = static_cast<int>(rows_.size());
      rows_.push_back(std::move(row));
    }
  }
}

TransitionTable build_table(const ExitDistribution& dist, std::size_t num_vertices) {
  TransitionTable table(dist.mode, num_vertices);
  table.add(dist);
  return table;
}

TransitionTable build_tables(const Graph& g, const Decomposition& d, ExitMode mode, const TableOptions& options) {
  TransitionTable table(mode, g.num_vertices());
  for (std::size_t i = 0; i < d.num_components(); ++i) {
    table.add(mode == ExitMode::Edge ? compute_edge_exits(g, d, i, options)
                                     : compute_vertex_exits(g, d, i, options));
  }
  return table;
}

std::string table_to_json(const Graph& g, const TransitionTable& table) {
  using nlohmann::json;
  json doc;
  doc["mode"] = table.mode() == ExitMode::Edge ? "edge" : "vertex";
  doc["max_normalization_drift"] = table.max_normalization_drift();
  json rows = json::array();
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (!table.has_row(static_cast<Vertex>(v))) continue;
    const auto& r = table.row(static_cast<Vertex>(v));
    json row;
    row["vertex"] = g.label(static_cast<Vertex>(v));
    row["raw_sum"] = r.raw_sum;
    json targets = json::array();
    for (const auto& t : r.targets) {
      if (t.from >= 0) {
        targets.push_back(json::array({g.label(t.from), g.label(t.to)}));
      } else {
        targets.push_back(g.label(t.to));
      }
    }
    row["targets"] = std::move(targets);
    row["cumulative"] = r.cumulative;
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2);
}

}  // namespace rst
