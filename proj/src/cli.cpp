#include "rst/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>
#include <unordered_map>

#include <CLI11.hpp>

#include "rst/decomposition.hpp"
#include "rst/errors.hpp"
#include "rst/oracle.hpp"
#include "rst/sampler.hpp"

namespace rst {

namespace {

/// Raised for flag combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StatisticalFailure {};

struct Common {
  std::string input = "-";
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, Common& c, bool with_seed) {
  cmd->add_option("--input,-i", c.input, "graph edge list, '-' for standard input");
  if (with_seed) cmd->add_option("--seed", c.seed, "master seed (default: $RST_SEED, else 1)");
}

std::uint64_t resolve_seed(const Common& c) {
  if (c.seed) return *c.seed;
  if (const char* env = std::getenv("RST_SEED"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw UsageError("RST_SEED is not an unsigned integer");
    return v;
  }
  return 1;
}

Graph read_graph(const std::string& path, std::istream& in) {
  if (path == "-") return load_graph(in);
  std::ifstream file(path);
  if (!file) throw GraphError(GraphError::Kind::Parse, "cannot open " + path);
  return load_graph(file);
}

std::string read_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw UsageError("cannot open " + path);
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

struct SampleArgs {
  Common common;
  std::string algorithm = "shortcut-vertex";
  std::optional<double> phi;
  double delta = 0.01;
  std::optional<double> eps;
  std::string epsilon_rule = "walk";
  std::size_t samples = 1;
  std::string format = "edges";
  std::uint64_t fallback_threshold = 0;
  std::string dump_tables;
  bool no_components = false;
};

void add_sampler_flags(CLI::App* cmd, SampleArgs& a) {
  cmd->add_option("--algorithm,-a", a.algorithm, "aldous-broder | wilson | shortcut-edge | shortcut-vertex");
  cmd->add_option("--phi", a.phi, "decomposition parameter (default 1/sqrt(n))");
  cmd->add_option("--delta", a.delta, "distance-to-uniform budget");
  cmd->add_option("--eps", a.eps, "table accuracy, overrides the delta rule");
  cmd->add_option("--epsilon-rule", a.epsilon_rule, "walk (delta/mn) | poly (delta/n^5)")
      ->check(CLI::IsMember({"walk", "poly"}));
  cmd->add_option("--fallback-threshold", a.fallback_threshold, "steps before verbatim fallback (0 = m*n)");
  cmd->add_flag("--no-components", a.no_components, "put every vertex in S");
}

SamplerConfig make_config(const SampleArgs& a) {
  const auto algorithm = parse_algorithm(a.algorithm);
  if (!algorithm) throw UsageError("unknown algorithm '" + a.algorithm + "'");
  if (a.phi && !(*a.phi > 0.0 && *a.phi < 1.0)) throw UsageError("--phi must lie in (0, 1)");
  if (!(a.delta > 0.0)) throw UsageError("--delta must be positive");
  if (a.eps && !(*a.eps > 0.0)) throw UsageError("--eps must be positive");
  SamplerConfig config;
  config.algorithm = *algorithm;
  config.phi = a.phi;
  config.delta = a.delta;
  config.epsilon = a.eps;
  config.epsilon_rule = a.epsilon_rule == "poly" ? EpsilonRule::Polynomial : EpsilonRule::WalkLength;
  config.fallback_threshold = a.fallback_threshold;
  config.empty_decomposition = a.no_components;
  return config;
}

void write_stats(const StepStats& s, std::ostream& out) {
  out << "verbatim_steps=" << s.verbatim_steps << '\n'
      << "shortcut_jumps=" << s.shortcut_jumps << '\n'
      << "transcript_length=" << s.transcript_length() << '\n'
      << "cut_traversals=" << s.cut_traversals << '\n'
      << "gap_count=" << s.gap_count << '\n'
      << "fallback=" << (s.fallback ? 1 : 0) << '\n';
}

int cmd_sample(const SampleArgs& a, std::istream& in, std::ostream& out) {
  if (a.samples == 0) throw UsageError("-n must be at least 1");
  const SamplerConfig config = make_config(a);
  const std::uint64_t seed = resolve_seed(a.common);
  const Graph g = read_graph(a.common.input, in);
  const TreeSampler sampler(g, config);

  if (!a.dump_tables.empty()) {
    std::ofstream dump(a.dump_tables);
    if (!dump) throw UsageError("cannot write " + a.dump_tables);
    dump << (sampler.tables() != nullptr ? table_to_json(g, *sampler.tables()) : std::string("{}\n"));
  }

  for (std::size_t i = 0; i < a.samples; ++i) {
    Rng rng(derive_seed(seed, i));
    const TreeSample sample = sampler.draw(rng);
    if (i > 0) out << '\n';
    if (a.format == "edges") {
      write_tree(g, to_tree(sample.arborescence), out);
    } else if (a.format == "arborescence") {
      write_arborescence(g, sample.arborescence, out);
    } else {
      out << "sample=" << i << '\n';
      write_stats(sample.stats, out);
    }
  }
  return exit_code::kOk;
}

struct DecomposeArgs {
  Common common;
  std::optional<double> phi;
  bool weak = false;
  std::string output;
};

int cmd_decompose(const DecomposeArgs& a, std::istream& in, std::ostream& out) {
  if (a.phi && !(*a.phi > 0.0 && *a.phi < 1.0)) throw UsageError("--phi must lie in (0, 1)");
  const Graph g = read_graph(a.common.input, in);
  const double phi = a.phi.value_or(1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(g.num_vertices(), 2))));
  const Decomposition d = a.weak ? weak_decompose(g, phi) : strong_decompose(g, phi);
  const std::string doc = decomposition_to_json(g, d);
  if (a.output.empty()) {
    out << doc;
  } else {
    std::ofstream file(a.output);
    if (!file) throw UsageError("cannot write " + a.output);
    file << doc;
  }
  const DecompositionReport report = verify_decomposition(g, d);
  out << report_to_text(report);
  return report.passed() ? exit_code::kOk : exit_code::kValidation;
}

struct VerifyArgs {
  Common common;
  std::string trees = "-";
  std::string decomposition;
  double alpha = 0.001;
  double tv_threshold = 0.02;
  std::size_t cap = 100000;
};

int cmd_verify(const VerifyArgs& a, std::istream& in, std::ostream& out) {
  if (!(a.alpha > 0.0 && a.alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
  if (!a.decomposition.empty()) {
    const Graph g = read_graph(a.common.input, in);
    const Decomposition d = decomposition_from_json(g, read_file(a.decomposition));
    const DecompositionReport report = verify_decomposition(g, d);
    out << report_to_text(report);
    return report.passed() ? exit_code::kOk : exit_code::kValidation;
  }
  if (a.common.input == "-" && a.trees == "-") throw UsageError("graph and trees cannot both come from standard input");
  const Graph g = read_graph(a.common.input, in);
  std::vector<std::vector<Edge>> trees;
  if (a.trees == "-") {
    trees = read_trees(in, g);
  } else {
    std::ifstream file(a.trees);
    if (!file) throw UsageError("cannot open " + a.trees);
    trees = read_trees(file, g);
  }
  if (trees.empty()) throw UsageError("no trees to verify");
  const TreeIndex index(g, a.cap);
  std::vector<std::size_t> counts(index.size(), 0);
  for (std::size_t i = 0; i < trees.size(); ++i) {
    try {
      ++counts[index.index_of(trees[i])];
    } catch (const OracleError& e) {
      throw OracleError("tree " + std::to_string(i) + ": " + e.what());
    }
  }
  const DistributionReport report = report_from_counts(std::move(counts), a.alpha);
  out << distribution_to_text(report, a.tv_threshold);
  const bool pass = report.chi_square_passes() && report.tv <= a.tv_threshold;
  if (!pass) throw StatisticalFailure{};
  return exit_code::kOk;
}

int cmd_count(const Common& c, std::istream& in, std::ostream& out) {
  const Graph g = read_graph(c.input, in);
  out << count_spanning_trees(g) << '\n';
  return exit_code::kOk;
}

int cmd_bench(const SampleArgs& a, std::istream& in, std::ostream& out) {
  if (a.samples == 0) throw UsageError("-n must be at least 1");
  SamplerConfig config = make_config(a);
  if (config.algorithm != Algorithm::ShortcutEdge && config.algorithm != Algorithm::ShortcutVertex) {
    throw UsageError("bench compares a shortcut algorithm against aldous-broder");
  }
  const std::uint64_t seed = resolve_seed(a.common);
  const Graph g = read_graph(a.common.input, in);
  const TreeSampler sampler(g, config);
  const Decomposition& d = *sampler.decomposition();

  double cover = 0, transcript = 0, verbatim = 0, jumps = 0, cut = 0, gaps = 0, fallbacks = 0;
  for (std::size_t i = 0; i < a.samples; ++i) {
    // Paired runs share a seed.
    Rng ab_rng(derive_seed(seed, i));
    StepStats ab;
    aldous_broder(g, ab_rng, &ab);
    Rng rng(derive_seed(seed, i));
    const StepStats s = sampler.draw(rng).stats;
    cover += static_cast<double>(ab.verbatim_steps);
    transcript += static_cast<double>(s.transcript_length());
    verbatim += static_cast<double>(s.verbatim_steps);
    jumps += static_cast<double>(s.shortcut_jumps);
    cut += static_cast<double>(s.cut_traversals);
    gaps += static_cast<double>(s.gap_count);
    fallbacks += s.fallback ? 1.0 : 0.0;
  }
  const double runs = static_cast<double>(a.samples);
  out << std::fixed << std::setprecision(6);
  out << "vertices=" << g.num_vertices() << '\n'
      << "edges=" << g.num_edges() << '\n'
      << "algorithm=" << algorithm_name(config.algorithm) << '\n'
      << "phi=" << sampler.phi() << '\n'
      << "epsilon=" << std::scientific << sampler.epsilon() << std::fixed << '\n'
      << "components=" << d.num_components() << '\n'
      << "cut_vertices=" << d.cut_vertices().size() << '\n'
      << "cut_edges=" << d.cut_edges().size() << '\n'
      << "runs=" << a.samples << '\n'
      << "mean_cover_steps=" << cover / runs << '\n'
      << "mean_transcript_length=" << transcript / runs << '\n'
      << "mean_verbatim_steps=" << verbatim / runs << '\n'
      << "mean_shortcut_jumps=" << jumps / runs << '\n'
      << "mean_cut_traversals=" << cut / runs << '\n'
      << "mean_gap_count=" << gaps / runs << '\n'
      << "fallback_rate=" << fallbacks / runs << '\n'
      << "ratio=" << (cover > 0 ? transcript / cover : 0.0) << '\n';
  return exit_code::kOk;
}

}  // namespace

std::vector<std::vector<Edge>> read_trees(std::istream& in, const Graph& g) {
  std::unordered_map<long long, Vertex> by_label;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) by_label.emplace(g.label(static_cast<Vertex>(v)), static_cast<Vertex>(v));
  auto lookup = [&](long long label, std::size_t line_no) {
    const auto it = by_label.find(label);
    if (it == by_label.end()) {
      throw GraphError(GraphError::Kind::Parse,
                       "line " + std::to_string(line_no) + ": unknown vertex " + std::to_string(label));
    }
    return it->second;
  };

  std::vector<std::vector<Edge>> trees;
  std::vector<Edge> current;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      if (!current.empty()) trees.push_back(std::move(current));
      current.clear();
      continue;
    }
    std::istringstream fields(line);
    long long a = 0;
    long long b = 0;
    std::string extra;
    if (!(fields >> a >> b) || (fields >> extra)) {
      throw GraphError(GraphError::Kind::Parse, "line " + std::to_string(line_no) + ": expected 'u v'");
    }
    current.push_back(make_edge(lookup(a, line_no), lookup(b, line_no)));
  }
  if (!current.empty()) trees.push_back(std::move(current));
  for (auto& t : trees) std::sort(t.begin(), t.end());
  return trees;
}

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random spanning trees by shortcut random walks", "rst"};
  app.require_subcommand(1);

  SampleArgs sample;
  auto* sample_cmd = app.add_subcommand("sample", "draw spanning trees");
  add_common(sample_cmd, sample.common, true);
  add_sampler_flags(sample_cmd, sample);
  sample_cmd->add_option("-n,--samples", sample.samples, "number of trees");
  sample_cmd->add_option("--format", sample.format, "edges | arborescence | stats")
      ->check(CLI::IsMember({"edges", "arborescence", "stats"}));
  sample_cmd->add_option("--dump-tables", sample.dump_tables, "write transition tables as JSON");

  DecomposeArgs decompose;
  auto* decompose_cmd = app.add_subcommand("decompose", "print a decomposition and its verification report");
  add_common(decompose_cmd, decompose.common, false);
  decompose_cmd->add_option("--phi", decompose.phi, "decomposition parameter (default 1/sqrt(n))");
  decompose_cmd->add_flag("--weak", decompose.weak, "skip the strong (multiway cut) requirement");
  decompose_cmd->add_option("--output,-o", decompose.output, "write the JSON document here instead");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "check sampled trees for uniformity, or a decomposition document");
  add_common(verify_cmd, verify.common, false);
  verify_cmd->add_option("--trees", verify.trees, "tree file, '-' for standard input");
  verify_cmd->add_option("--decomposition", verify.decomposition, "decomposition JSON to check instead");
  verify_cmd->add_option("--alpha", verify.alpha, "chi-square significance level");
  verify_cmd->add_option("--tv-threshold", verify.tv_threshold, "largest accepted total-variation distance");
  verify_cmd->add_option("--cap", verify.cap, "largest spanning-tree count to enumerate");

  Common count;
  auto* count_cmd = app.add_subcommand("count", "exact number of spanning trees");
  add_common(count_cmd, count, false);

  SampleArgs bench;
  bench.samples = 100;
  auto* bench_cmd = app.add_subcommand("bench", "paired step counts: aldous-broder vs a shortcut walk");
  add_common(bench_cmd, bench.common, true);
  add_sampler_flags(bench_cmd, bench);
  bench_cmd->add_option("-n,--runs", bench.samples, "paired runs");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? exit_code::kOk : exit_code::kUsage;
  }

  try {
    if (*sample_cmd) return cmd_sample(sample, in, out);
    if (*decompose_cmd) return cmd_decompose(decompose, in, out);
    if (*verify_cmd) return cmd_verify(verify, in, out);
    if (*count_cmd) return cmd_count(count, in, out);
    return cmd_bench(bench, in, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kUsage;
  } catch (const GraphError& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == GraphError::Kind::Parse ? exit_code::kUsage : exit_code::kValidation;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << '\n';
    return exit_code::kSolver;
  } catch (const StatisticalFailure&) {
    err << "error: samples are not consistent with the uniform distribution\n";
    return exit_code::kStatistical;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kValidation;
  }
}

}  // namespace rst
