#include "rst/laplacian.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Dense>

#include "rst/errors.hpp"

namespace rst {

WeightedGadget::WeightedGadget(std::size_t num_vertices, std::vector<WeightedEdge> edges, Vertex source,
                               Vertex sink)
    : num_vertices_(num_vertices), source_(source), sink_(sink) {
  auto in_range = [&](Vertex v) { return v >= 0 && static_cast<std::size_t>(v) < num_vertices; };
  if (!in_range(source) || !in_range(sink) || source == sink) {
    throw SolverError(SolverError::Kind::Singular, "gadget terminals must be distinct vertices");
  }
  std::map<std::pair<Vertex, Vertex>, double> merged;
  for (const auto& e : edges) {
    if (!in_range(e.u) || !in_range(e.v) || e.u == e.v) {
      throw SolverError(SolverError::Kind::Singular, "gadget edge has bad endpoints");
    }
    if (!(e.weight > 0.0)) throw SolverError(SolverError::Kind::Singular, "gadget weights must be positive");
    merged[{std::min(e.u, e.v), std::max(e.u, e.v)}] += e.weight;
  }
  edges_.reserve(merged.size());
  for (const auto& [key, w] : merged) edges_.push_back({key.first, key.second, w});
}

Eigen::SparseMatrix<double> build_laplacian(const WeightedGadget& gadget) {
  const auto n = static_cast<Eigen::Index>(gadget.num_vertices());
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(4 * gadget.edges().size());
  for (const auto& e : gadget.edges()) {
    triplets.emplace_back(e.u, e.u, e.weight);
    triplets.emplace_back(e.v, e.v, e.weight);
    triplets.emplace_back(e.u, e.v, -e.weight);
    triplets.emplace_back(e.v, e.u, -e.weight);
  }
  Eigen::SparseMatrix<double> lap(n, n);
  lap.setFromTriplets(triplets.begin(), triplets.end());
  return lap;
}

namespace {

bool connected(const WeightedGadget& gadget) {
  const std::size_t n = gadget.num_vertices();
  std::vector<std::vector<Vertex>> adj(n);
  for (const auto& e : gadget.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

// Reduced index: the sink row/column is removed.
Eigen::Index reduced(Vertex v, Vertex sink) { return v < sink ? v : v - 1; }

Eigen::VectorXd solve_dense(const WeightedGadget& gadget) {
  const auto n = static_cast<Eigen::Index>(gadget.num_vertices()) - 1;
  const Vertex sink = gadget.sink();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : gadget.edges()) {
    const bool u_live = e.u != sink;
    const bool v_live = e.v != sink;
    if (u_live) lap(reduced(e.u, sink), reduced(e.u, sink)) += e.weight;
    if (v_live) lap(reduced(e.v, sink), reduced(e.v, sink)) += e.weight;
    if (u_live && v_live) {
      lap(reduced(e.u, sink), reduced(e.v, sink)) -= e.weight;
      lap(reduced(e.v, sink), reduced(e.u, sink)) -= e.weight;
    }
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(reduced(gadget.source(), sink)) = 1.0;
  Eigen::LLT<Eigen::MatrixXd> chol(lap);
  if (chol.info() != Eigen::Success) {
    throw SolverError(SolverError::Kind::Singular, "grounded Laplacian is not positive definite");
  }
  return chol.solve(rhs);
}

Eigen::VectorXd solve_cg(const WeightedGadget& gadget, const SolveOptions& options, std::size_t& iterations,
                         double& residual) {
  const auto n = static_cast<Eigen::Index>(gadget.num_vertices()) - 1;
  const Vertex sink = gadget.sink();
  std::vector<Eigen::Triplet<double>> triplets;
  for (const auto& e : gadget.edges()) {
    const bool u_live = e.u != sink;
    const bool v_live = e.v != sink;
    if (u_live) triplets.emplace_back(reduced(e.u, sink), reduced(e.u, sink), e.weight);
    if (v_live) triplets.emplace_back(reduced(e.v, sink), reduced(e.v, sink), e.weight);
    if (u_live && v_live) {
      triplets.emplace_back(reduced(e.u, sink), reduced(e.v, sink), -e.weight);
      triplets.emplace_back(reduced(e.v, sink), reduced(e.u, sink), -e.weight);
    }
  }
  Eigen::SparseMatrix<double> lap(n, n);
  lap.setFromTriplets(triplets.begin(), triplets.end());
  const Eigen::VectorXd inv_diag = lap.diagonal().cwiseInverse();

  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(reduced(gadget.source(), sink)) = 1.0;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd r = b;
  Eigen::VectorXd z = inv_diag.cwiseProduct(r);
  Eigen::VectorXd p = z;
  double rz = r.dot(z);
  const double b_norm = b.norm();
  const std::size_t cap = options.iteration_factor * static_cast<std::size_t>(n + 1);
  for (iterations = 0; iterations < cap; ++iterations) {
    residual = r.norm() / b_norm;
    if (residual <= options.tolerance) return x;
    const Eigen::VectorXd ap = lap * p;
    const double alpha = rz / p.dot(ap);
    x += alpha * p;
    r -= alpha * ap;
    z = inv_diag.cwiseProduct(r);
    const double rz_next = r.dot(z);
    p = z + (rz_next / rz) * p;
    rz = rz_next;
  }
  residual = r.norm() / b_norm;
  if (residual <= options.tolerance) return x;
  throw SolverError(SolverError::Kind::NonConvergence,
                    "conjugate gradient did not reach relative residual " + std::to_string(options.tolerance) +
                        " in " + std::to_string(cap) + " iterations");
}

}  // namespace

VoltageVector solve_two_terminal(const WeightedGadget& gadget, const SolveOptions& options) {
  if (!(options.tolerance > 0.0)) {
    throw SolverError(SolverError::Kind::NonConvergence, "solver tolerance must be positive");
  }
  if (!connected(gadget)) {
    throw SolverError(SolverError::Kind::Singular, "gadget is disconnected");
  }
  VoltageVector out;
  Eigen::VectorXd x;
  if (gadget.num_vertices() <= options.direct_threshold) {
    x = solve_dense(gadget);
  } else {
    out.direct = false;
    x = solve_cg(gadget, options, out.iterations, out.residual);
  }
  const Vertex sink = gadget.sink();
  const double scale = x(reduced(gadget.source(), sink));
  if (!(scale > 0.0)) {
    throw SolverError(SolverError::Kind::Singular, "non-positive effective resistance");
  }
  out.values.assign(gadget.num_vertices(), 0.0);
  for (std::size_t v = 0; v < gadget.num_vertices(); ++v) {
    if (static_cast<Vertex>(v) == sink) continue;
    out.values[v] = std::clamp(x(reduced(static_cast<Vertex>(v), sink)) / scale, 0.0, 1.0);
  }
  out.values[gadget.source()] = 1.0;
  out.values[sink] = 0.0;
  return out;
}

double harmonic_defect(const WeightedGadget& gadget, const std::vector<double>& values) {
  const std::size_t n = gadget.num_vertices();
  std::vector<double> weight_sum(n, 0.0);
  std::vector<double> weighted(n, 0.0);
  for (const auto& e : gadget.edges()) {
    weight_sum[e.u] += e.weight;
    weight_sum[e.v] += e.weight;
    weighted[e.u] += e.weight * values[e.v];
    weighted[e.v] += e.weight * values[e.u];
  }
  double defect = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    if (static_cast<Vertex>(v) == gadget.source() || static_cast<Vertex>(v) == gadget.sink()) continue;
    if (weight_sum[v] == 0.0) continue;
    defect = std::max(defect, std::abs(values[v] - weighted[v] / weight_sum[v]));
  }
  return defect;
}

}  // namespace rst
