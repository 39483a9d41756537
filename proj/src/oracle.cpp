#include "rst/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <boost/math/distributions/chi_squared.hpp>

#include "rst/errors.hpp"

namespace rst {

BigInt count_spanning_trees(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n <= 1) return 1;
  IntMatrix lap(n - 1);
  for (const Edge& e : g.edges()) {
    const auto a = static_cast<std::size_t>(e.first);
    const auto b = static_cast<std::size_t>(e.second);
    // Drop row/column 0.
    if (a > 0) lap(a - 1, a - 1) += 1;
    if (b > 0) lap(b - 1, b - 1) += 1;
    if (a > 0 && b > 0) {
      lap(a - 1, b - 1) -= 1;
      lap(b - 1, a - 1) -= 1;
    }
  }
  return determinant(std::move(lap));
}

namespace {

Vertex find_root(std::vector<Vertex>& uf, Vertex v) {
  while (uf[v] != v) v = uf[v];
  return v;
}

struct Enumerator {
  const Graph& g;
  std::size_t need;
  std::vector<std::vector<Edge>>& out;
  std::vector<Edge> chosen;

  void run(std::size_t next, std::vector<Vertex> uf) {
    if (chosen.size() == need) {
      out.push_back(chosen);
      return;
    }
    const std::size_t m = g.num_edges();
    for (std::size_t e = next; e < m; ++e) {
      if (m - e < need - chosen.size()) return;
      const Edge& edge = g.edge(static_cast<EdgeId>(e));
      const Vertex a = find_root(uf, edge.first);
      const Vertex b = find_root(uf, edge.second);
      if (a == b) continue;
      std::vector<Vertex> merged = uf;
      merged[a] = b;
      chosen.push_back(edge);
      run(e + 1, std::move(merged));
      chosen.pop_back();
    }
  }
};

}  // namespace

std::vector<std::vector<Edge>> enumerate_spanning_trees(const Graph& g, std::size_t cap) {
  const BigInt count = count_spanning_trees(g);
  if (count > cap) {
    throw OracleError("graph has " + count.str() + " spanning trees, above the enumeration cap of " +
                      std::to_string(cap));
  }
  std::vector<std::vector<Edge>> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<Vertex> uf(g.num_vertices());
  std::iota(uf.begin(), uf.end(), 0);
  Enumerator e{g, g.num_vertices() - 1, out, {}};
  e.run(0, std::move(uf));
  return out;
}

std::vector<std::vector<double>> absorbing_hit_matrix(std::size_t n, std::span<const WeightedEdge> edges,
                                                      const VertexSubset& absorbing) {
  if (absorbing.empty()) throw OracleError("absorbing set is empty");
  if (absorbing.universe() != n) throw OracleError("absorbing set has the wrong universe");

  std::vector<std::vector<std::pair<Vertex, double>>> adj(n);
  for (const auto& e : edges) {
    if (e.u < 0 || e.v < 0 || static_cast<std::size_t>(e.u) >= n || static_cast<std::size_t>(e.v) >= n) {
      throw OracleError("edge endpoint out of range");
    }
    if (e.u == e.v || e.weight == 0.0) continue;
    adj[e.u].emplace_back(e.v, e.weight);
    adj[e.v].emplace_back(e.u, e.weight);
  }

  // Every transient vertex must be able to reach the absorbing set.
  std::vector<char> reach(n, 0);
  std::vector<Vertex> queue(absorbing.begin(), absorbing.end());
  for (Vertex a : queue) reach[a] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& [w, weight] : adj[queue[head]]) {
      if (!reach[w]) {
        reach[w] = 1;
        queue.push_back(w);
      }
    }
  }
  if (queue.size() != n) throw OracleError("some vertex cannot reach the absorbing set");

  std::vector<std::size_t> slot(n, 0);
  std::vector<Vertex> transient;
  for (std::size_t v = 0; v < n; ++v) {
    if (!absorbing.contains(static_cast<Vertex>(v))) {
      slot[v] = transient.size();
      transient.push_back(static_cast<Vertex>(v));
    }
  }
  std::vector<std::size_t> target_slot(n, 0);
  for (std::size_t t = 0; t < absorbing.size(); ++t) target_slot[absorbing.ids()[t]] = t;

  // Rows: weighted degree * h_v - sum over transient neighbors = sum over
  // absorbing neighbors of indicator(target).
  const std::size_t k = transient.size();
  const std::size_t r = absorbing.size();
  const std::size_t width = k + r;
  std::vector<double> a(k * width, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    double* row = &a[i * width];
    for (const auto& [w, weight] : adj[transient[i]]) {
      row[i] += weight;
      if (absorbing.contains(w)) {
        row[k + target_slot[w]] += weight;
      } else {
        row[slot[w]] -= weight;
      }
    }
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t pivot = c;
    for (std::size_t i = c + 1; i < k; ++i) {
      if (std::abs(a[i * width + c]) > std::abs(a[pivot * width + c])) pivot = i;
    }
    if (std::abs(a[pivot * width + c]) < 1e-300) throw OracleError("absorbing system is singular");
    if (pivot != c) {
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(c * width),
                       a.begin() + static_cast<std::ptrdiff_t>((c + 1) * width),
                       a.begin() + static_cast<std::ptrdiff_t>(pivot * width));
    }
    const double inv = 1.0 / a[c * width + c];
    for (std::size_t j = c; j < width; ++j) a[c * width + j] *= inv;
    for (std::size_t i = 0; i < k; ++i) {
      if (i == c) continue;
      const double f = a[i * width + c];
      if (f == 0.0) continue;
      for (std::size_t j = c; j < width; ++j) a[i * width + j] -= f * a[c * width + j];
    }
  }

  std::vector<std::vector<double>> out(r, std::vector<double>(n, 0.0));
  for (std::size_t t = 0; t < r; ++t) {
    out[t][absorbing.ids()[t]] = 1.0;
    for (std::size_t i = 0; i < k; ++i) out[t][transient[i]] = a[i * width + k + t];
  }
  return out;
}

std::vector<double> absorbing_hit_probabilities(std::size_t n, std::span<const WeightedEdge> edges,
                                                const VertexSubset& absorbing, Vertex target) {
  if (!absorbing.contains(target)) throw OracleError("target is not absorbing");
  auto all = absorbing_hit_matrix(n, edges, absorbing);
  const auto pos = std::find(absorbing.begin(), absorbing.end(), target) - absorbing.begin();
  return std::move(all[static_cast<std::size_t>(pos)]);
}

std::vector<double> absorbing_hit_probabilities(const Graph& g, const VertexSubset& absorbing, Vertex target) {
  std::vector<WeightedEdge> edges;
  edges.reserve(g.num_edges());
  for (const Edge& e : g.edges()) edges.push_back({e.first, e.second, 1.0});
  return absorbing_hit_probabilities(g.num_vertices(), edges, absorbing, target);
}

TreeIndex::TreeIndex(const Graph& g, std::size_t cap) : g_(&g), trees_(enumerate_spanning_trees(g, cap)) {
  index_.reserve(trees_.size());
  for (std::size_t i = 0; i < trees_.size(); ++i) index_.emplace(key_of(trees_[i]), i);
}

std::size_t TreeIndex::KeyHash::operator()(const std::vector<std::uint64_t>& key) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (std::uint64_t w : key) h = derive_seed(h, w);
  return static_cast<std::size_t>(h);
}

std::vector<std::uint64_t> TreeIndex::key_of(std::span<const Edge> tree) const {
  std::vector<std::uint64_t> key((g_->num_edges() + 63) / 64, 0);
  for (const Edge& e : tree) {
    const EdgeId id = g_->find_edge(e.first, e.second);
    if (id < 0) throw OracleError("sample contains a non-edge");
    key[static_cast<std::size_t>(id) / 64] |= std::uint64_t{1} << (id % 64);
  }
  return key;
}

std::size_t TreeIndex::index_of(std::span<const Edge> tree) const {
  if (tree.size() + 1 != g_->num_vertices()) throw OracleError("sample has the wrong number of edges");
  const auto it = index_.find(key_of(tree));
  if (it == index_.end()) throw OracleError("sample is not a spanning tree");
  return it->second;
}

double chi_square_critical(std::size_t df, double alpha) {
  if (df == 0) return 0.0;
  const boost::math::chi_squared dist(static_cast<double>(df));
  return boost::math::quantile(boost::math::complement(dist, alpha));
}

DistributionReport report_from_counts(std::vector<std::size_t> counts, double alpha) {
  DistributionReport r;
  r.support = counts.size();
  r.samples = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  r.alpha = alpha;
  r.df = r.support > 0 ? r.support - 1 : 0;
  r.critical = chi_square_critical(r.df, alpha);
  if (r.support > 0 && r.samples > 0) {
    const double expected = static_cast<double>(r.samples) / static_cast<double>(r.support);
    double tv = 0.0;
    for (std::size_t c : counts) {
      const double d = static_cast<double>(c) - expected;
      r.chi_square += d * d / expected;
      tv += std::abs(d);
    }
    r.tv = 0.5 * tv / static_cast<double>(r.samples);
  }
  r.counts = std::move(counts);
  return r;
}

DistributionReport uniformity_test(std::span<const std::vector<Edge>> samples, const Graph& g, double alpha) {
  const TreeIndex index(g);
  std::vector<std::size_t> counts(index.size(), 0);
  for (const auto& tree : samples) {
    std::vector<Edge> sorted = tree;
    std::sort(sorted.begin(), sorted.end());
    ++counts[index.index_of(sorted)];
  }
  return report_from_counts(std::move(counts), alpha);
}

std::string distribution_to_text(const DistributionReport& report, double tv_threshold) {
  std::ostringstream out;
  out.precision(6);
  out << "support=" << report.support << '\n'
      << "samples=" << report.samples << '\n'
      << "chi_square=" << report.chi_square << '\n'
      << "df=" << report.df << '\n'
      << "alpha=" << report.alpha << '\n'
      << "critical=" << report.critical << '\n'
      << "tv=" << report.tv << '\n';
  if (tv_threshold > 0.0) {
    const bool pass = report.chi_square_passes() && report.tv <= tv_threshold;
    out << "tv_threshold=" << tv_threshold << '\n' << "uniformity=" << (pass ? "pass" : "fail") << '\n';
  }
  return out.str();
}

}  // namespace rst
