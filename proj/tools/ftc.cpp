// ftc: build and query fault-tolerant connectivity labels.
//
//   ftc build <graph> --f <f> [--mode deterministic|randomized] [--c-net <c>] [--seed <s>] --out <store>
//   ftc query <store> <s> <t> [--faults u-v,u-v,...] [--engine fast|basic]
//   ftc verify <graph> <store> [--trials <n>] [--seed <s>]
//   ftc stats <store>
//   ftc hierarchy-dump <store>
//
// Exit codes: 0 ok, 1 usage or configuration, 2 validation, parse or I/O
// failure, 3 internal invariant violation or a wrong verify answer.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ftc/ftc.hpp"

namespace {

using namespace ftc;

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_validation = 2;
constexpr int exit_invariant = 3;

/// Raised for command-line values that parse but make no sense.
class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const char* mode_name(HierarchyMode m) { return m == HierarchyMode::randomized ? "randomized" : "deterministic"; }

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

void print_sizes(std::ostream& os, const SchemeParams& p) {
  os << "n " << p.n << "\n"
     << "m " << p.m << "\n"
     << "f " << p.f << "\n"
     << "mode " << mode_name(p.mode) << "\n"
     << "c_net " << p.c_net << "\n";
  if (p.mode == HierarchyMode::randomized) os << "seed " << p.seed << "\n";
  os << "q " << p.q << "\n"
     << "w " << p.w << "\n"
     << "K " << p.K << "\n"
     << "h " << p.h << "\n"
     << "level_sizes";
  for (const auto s : p.level_sizes) os << " " << s;
  os << "\n"
     << "vertex_label_bits " << p.vertex_label_bits() << "\n"
     << "edge_label_bits " << p.edge_label_bits() << "\n";
}

/// Parses "u-v,u-v,..." into edge indices of the store.
std::vector<edge_id> parse_faults(const LabelSet& labels, const std::string& text) {
  std::vector<edge_id> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dash = item.find('-');
    std::uint32_t u = 0, v = 0;
    try {
      if (dash == std::string::npos) throw std::invalid_argument(item);
      std::size_t used_u = 0, used_v = 0;
      const auto us = item.substr(0, dash), vs = item.substr(dash + 1);
      u = static_cast<std::uint32_t>(std::stoul(us, &used_u));
      v = static_cast<std::uint32_t>(std::stoul(vs, &used_v));
      if (used_u != us.size() || used_v != vs.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw usage_error("fault edge '" + item + "' is not of the form u-v");
    }
    const auto e = labels.find_edge(u, v);
    if (!e) throw validation_error("fault edge " + item + " is not an edge of the labeled graph");
    out.push_back(*e);
  }
  return out;
}

int cmd_build(const std::string& graph_path, std::uint32_t f, const std::string& mode, std::uint32_t c_net,
              std::optional<std::uint64_t> seed, const std::string& out_path) {
  if (f == 0) throw usage_error("--f must be at least 1");
  if (c_net == 0) throw usage_error("--c-net must be at least 1");
  SchemeConfig cfg;
  cfg.c_net = c_net;
  if (mode == "randomized") {
    cfg.mode = HierarchyMode::randomized;
    if (seed) {
      cfg.seed = *seed;
    } else {
      std::random_device rd;
      cfg.seed = (std::uint64_t{rd()} << 32) | rd();
    }
  } else if (seed) {
    throw usage_error("--seed applies to randomized mode only");
  }
  const auto start = std::chrono::steady_clock::now();
  const Graph g = load_graph_file(graph_path);
  const auto construction = construct_scheme(g, f, cfg);
  write_store_file(out_path, construction);
  std::cerr << "build_ms " << elapsed_ms(start) << "\n";
  print_sizes(std::cout, construction.labels.params);
  std::cout << "store " << out_path << "\n";
  return exit_ok;
}

int cmd_query(const std::string& store_path, vertex_id s, vertex_id t, const std::string& faults_text,
              const std::string& engine_name) {
  const LabelSet labels = read_store_file(store_path);
  const auto faults = parse_faults(labels, faults_text);
  const Engine engine = engine_name == "basic" ? Engine::basic : Engine::fast;
  std::cout << (query(labels, s, t, faults, engine) ? "connected" : "disconnected") << "\n";
  return exit_ok;
}

/// Grows a random connected vertex set from s until its boundary has at
/// most `budget` edges; returns that boundary, or nothing if none is found.
std::optional<std::vector<edge_id>> cut_faults(std::mt19937_64& rng, const Graph& g, std::uint32_t budget,
                                               vertex_id s) {
  std::vector<bool> inside(g.vertex_count(), false);
  std::vector<vertex_id> members{s};
  inside[s] = true;
  std::optional<std::vector<edge_id>> best;
  while (members.size() < g.vertex_count()) {
    std::vector<edge_id> boundary;
    for (edge_id e = 0; e < g.edge_count(); ++e) {
      if (inside[g.edge(e).u] != inside[g.edge(e).v]) boundary.push_back(e);
    }
    if (boundary.size() <= budget) {
      best = boundary;
      if (rng() % 3 == 0) break;
    }
    const Edge& e = g.edge(boundary[rng() % boundary.size()]);
    const vertex_id next = inside[e.u] ? e.v : e.u;
    inside[next] = true;
    members.push_back(next);
  }
  return best;
}

int cmd_verify(const std::string& graph_path, const std::string& store_path, std::uint32_t trials,
               std::uint64_t seed) {
  const Graph g = load_graph_file(graph_path);
  const LabelSet labels = read_store_file(store_path);
  const auto& p = labels.params;
  if (p.n != g.vertex_count() || p.m != g.edge_count() ||
      !std::equal(labels.edge_list.begin(), labels.edge_list.end(), g.edges().begin(), g.edges().end())) {
    throw validation_error("store metadata does not match graph " + graph_path);
  }
  const RootedTree tree = build_spanning_tree(g);
  std::vector<edge_id> tree_edges;
  for (edge_id e = 0; e < g.edge_count(); ++e) {
    if (tree.is_tree_edge(g.edge(e))) tree_edges.push_back(e);
  }

  std::mt19937_64 rng(seed);
  const auto pick = [&](std::uint64_t bound) { return static_cast<std::uint32_t>(rng() % bound); };
  const auto sample = [&](const std::vector<edge_id>& pool, std::uint32_t count) {
    std::vector<edge_id> out(pool);
    std::shuffle(out.begin(), out.end(), rng);
    out.resize(std::min<std::size_t>(count, out.size()));
    return out;
  };
  std::vector<edge_id> all_edges(g.edge_count());
  for (edge_id e = 0; e < g.edge_count(); ++e) all_edges[e] = e;

  std::uint64_t mismatches = 0, disagreements = 0, disconnected = 0;
  std::vector<double> micros;
  micros.reserve(trials);
  for (std::uint32_t trial = 0; trial < trials; ++trial) {
    vertex_id s = pick(p.n), t = pick(p.n);
    std::vector<edge_id> faults;
    switch (trial % 3) {
      case 0: faults = sample(all_edges, pick(p.f + 1)); break;
      case 1: faults = sample(tree_edges, pick(p.f + 1)); break;
      default:
        if (auto cut = cut_faults(rng, g, p.f, s)) faults = *cut;
        break;
    }
    const bool expected = oracle_connected(g, s, t, faults);
    const auto start = std::chrono::steady_clock::now();
    const bool fast = query(labels, s, t, faults, Engine::fast);
    micros.push_back(elapsed_ms(start) * 1000.0);
    const bool basic = query(labels, s, t, faults, Engine::basic);
    disconnected += expected ? 0 : 1;
    if (fast != expected || basic != expected) {
      ++mismatches;
      std::cerr << "mismatch s=" << s << " t=" << t << " faults";
      for (const auto e : faults) std::cerr << " " << g.edge(e).u << "-" << g.edge(e).v;
      std::cerr << " expected " << expected << " fast " << fast << " basic " << basic << "\n";
    }
    disagreements += fast != basic ? 1 : 0;
  }
  std::cout << "trials " << trials << "\n"
            << "disconnected " << disconnected << "\n"
            << "mismatches " << mismatches << "\n"
            << "engine_disagreements " << disagreements << "\n";
  if (!micros.empty()) {
    std::sort(micros.begin(), micros.end());
    const auto pct = [&](double q) { return micros[static_cast<std::size_t>(q * (micros.size() - 1))]; };
    std::cerr << "query_us p50 " << pct(0.5) << " p90 " << pct(0.9) << " p99 " << pct(0.99) << " max "
              << micros.back() << "\n";
  }
  return mismatches == 0 && disagreements == 0 ? exit_ok : exit_invariant;
}

int cmd_stats(const std::string& store_path) {
  const LabelSet labels = read_store_file(store_path);
  print_sizes(std::cout, labels.params);
  const auto& p = labels.params;
  std::cout << "total_label_bits " << std::uint64_t{p.n} * p.vertex_label_bits() + std::uint64_t{p.m} * p.edge_label_bits()
            << "\n";
  return exit_ok;
}

int cmd_hierarchy_dump(const std::string& store_path) {
  const LabelSet labels = read_store_file(store_path);
  std::cout << "# ftc hierarchy " << mode_name(labels.params.mode) << " h " << labels.params.h << "\n";
  for (std::size_t i = 0; i < labels.hierarchy.size(); ++i) {
    std::cout << "level " << i << " size " << labels.hierarchy[i].size() << ":";
    for (const auto e : labels.hierarchy[i]) {
      const Edge& edge = labels.edge_list[e];
      std::cout << " " << e << "(" << edge.u << "-" << edge.v << ")";
    }
    std::cout << "\n";
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fault-tolerant connectivity labels"};
  app.require_subcommand(1);

  std::string graph_path, store_path, out_path, mode = "deterministic", faults, engine = "fast";
  std::uint32_t f = 0, c_net = 32, trials = 1000;
  std::optional<std::uint64_t> seed;
  std::uint64_t verify_seed = 1;
  vertex_id s = 0, t = 0;

  auto* build = app.add_subcommand("build", "Label a graph and write a label store");
  build->add_option("graph", graph_path, "Graph file")->required();
  build->add_option("--f", f, "Fault budget")->required();
  build->add_option("--mode", mode, "Hierarchy mode")->check(CLI::IsMember({"deterministic", "randomized"}));
  build->add_option("--c-net", c_net, "Threshold constant");
  build->add_option("--seed", seed, "Seed for randomized mode");
  build->add_option("--out", out_path, "Label store to write")->required();

  auto* query_cmd = app.add_subcommand("query", "Answer a connectivity query from a label store");
  query_cmd->add_option("store", store_path, "Label store")->required();
  query_cmd->add_option("s", s, "Source vertex")->required();
  query_cmd->add_option("t", t, "Target vertex")->required();
  query_cmd->add_option("--faults", faults, "Failed edges as u-v,u-v,...");
  query_cmd->add_option("--engine", engine, "Query engine")->check(CLI::IsMember({"fast", "basic"}));

  auto* verify = app.add_subcommand("verify", "Cross-check a store against its graph");
  verify->add_option("graph", graph_path, "Graph file")->required();
  verify->add_option("store", store_path, "Label store")->required();
  verify->add_option("--trials", trials, "Number of random queries");
  verify->add_option("--seed", verify_seed, "Sampling seed");

  auto* stats = app.add_subcommand("stats", "Print label sizes and hierarchy shape");
  stats->add_option("store", store_path, "Label store")->required();

  auto* dump = app.add_subcommand("hierarchy-dump", "Print hierarchy levels as edge lists");
  dump->add_option("store", store_path, "Label store")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (*build) return cmd_build(graph_path, f, mode, c_net, seed, out_path);
    if (*query_cmd) return cmd_query(store_path, s, t, faults, engine);
    if (*verify) return cmd_verify(graph_path, store_path, trials, verify_seed);
    if (*stats) return cmd_stats(store_path);
    if (*dump) return cmd_hierarchy_dump(store_path);
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const config_error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return exit_usage;
  } catch (const invariant_error& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return exit_invariant;
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return exit_validation;
  } catch (const validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return exit_validation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_validation;
  }
  return exit_usage;
}
