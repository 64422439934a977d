// Command-line front end: solve / generate / bench / validate over the
// plain-text graph format. Exit codes: 0 distances, 2 negative cycle,
// 1 anything that went wrong.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nwsp/bfd.hpp"
#include "nwsp/generate.hpp"
#include "nwsp/graph.hpp"
#include "nwsp/io.hpp"
#include "nwsp/oracle.hpp"
#include "nwsp/solver.hpp"

namespace {

using nlohmann::json;

struct SolveFlags {
  std::string path;
  std::int64_t source = 1;  // 1-based, as in the file format
  std::uint64_t seed = 0;
  bool oracle = false;
  std::string stats_path;
  std::string algo = "fineman";
};

template <typename W>
struct AlgoRun {
  bool cycle = false;
  std::vector<W> dist;
  nwsp::SolveStats stats;  // batches only populated by "fineman"
  double wall_ms = 0.0;
};

template <typename W>
AlgoRun<W> run_algo(const nwsp::Graph<W>& g, nwsp::VertexId src, const std::string& algo,
                    std::uint64_t seed) {
  AlgoRun<W> rr;
  const auto t0 = std::chrono::steady_clock::now();
  if (algo == "fineman") {
    nwsp::Rng rng(seed);
    auto res = nwsp::solve_sssp(g, src, rng);
    rr.cycle = res.negative_cycle;
    rr.dist = std::move(res.dist);
    rr.stats = std::move(res.stats);
  } else if (algo == "bellman-ford") {
    auto res = nwsp::oracle_global_sssp(g, src);
    rr.cycle = res.negative_cycle;
    rr.dist = std::move(res.dist);
  } else if (algo == "bfd") {
    // Cycle verdicts stay comparable across algos: check globally first,
    // then answer from the source.
    std::vector<nwsp::VertexId> all(static_cast<std::size_t>(g.vertex_count()));
    std::iota(all.begin(), all.end(), nwsp::VertexId{0});
    if (nwsp::fixpoint_sssp(g, all, nwsp::count_negative(g)).negative_cycle) {
      rr.cycle = true;
    } else {
      auto res = nwsp::full_sssp_bfd(g, src);
      rr.cycle = res.negative_cycle;
      rr.dist = std::move(res.dist);
    }
  } else {
    throw std::invalid_argument("unknown algo '" + algo + "'");
  }
  rr.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                   .count();
  if (!rr.stats.batches.empty()) rr.wall_ms = rr.stats.wall_ms;
  return rr;
}

template <typename W>
bool close_enough(W a, W b) {
  if constexpr (std::is_integral_v<W>) {
    return a == b;
  } else {
    return std::abs(a - b) <= 1e-6 * std::max({W{1}, std::abs(a), std::abs(b)});
  }
}

template <typename W>
bool dist_match(const std::vector<W>& got, const std::vector<W>& want) {
  if (got.size() != want.size()) return false;
  for (std::size_t i = 0; i < got.size(); ++i) {
    const bool gi = nwsp::is_infinite(got[i]);
    const bool wi = nwsp::is_infinite(want[i]);
    if (gi != wi) return false;
    if (!gi && !close_enough(got[i], want[i])) return false;
  }
  return true;
}

template <typename W>
json stats_json(const SolveFlags& f, const nwsp::Graph<W>& g, const AlgoRun<W>& rr) {
  json j;
  j["instance"] = f.path;
  j["n"] = g.vertex_count();
  j["m"] = g.edge_count();
  j["k"] = nwsp::count_negative(g);
  j["algo"] = f.algo;
  j["seed"] = f.seed;
  j["wall_ms"] = rr.wall_ms;
  json batches = json::array();
  for (const auto& b : rr.stats.batches) {
    batches.push_back(
        {{"r", b.r}, {"branch", b.branch}, {"eliminated", b.eliminated}, {"restarts", b.restarts}});
  }
  j["batches"] = std::move(batches);
  j["verdict"] = rr.cycle ? "negative-cycle" : "distances";
  return j;
}

template <typename W>
int solve_typed(const nwsp::GraphText& gt, const SolveFlags& f) {
  const auto g = nwsp::graph_from_text<W>(gt);
  const auto src = static_cast<nwsp::VertexId>(f.source - 1);
  const AlgoRun<W> rr = run_algo(g, src, f.algo, f.seed);
  if (f.oracle) {
    const auto ref = nwsp::oracle_global_sssp(g, src);
    if (ref.negative_cycle != rr.cycle || (!rr.cycle && !dist_match(rr.dist, ref.dist))) {
      std::cerr << "oracle mismatch on " << f.path << "\n";
      return 1;
    }
  }
  if (!f.stats_path.empty()) {
    std::ofstream out(f.stats_path);
    if (!out) {
      std::cerr << "cannot write " << f.stats_path << "\n";
      return 1;
    }
    out << stats_json(f, g, rr).dump(2) << '\n';
  }
  if (rr.cycle) {
    std::cout << "NEGATIVE_CYCLE\n";
    return 2;
  }
  for (nwsp::VertexId v = 0; v < g.vertex_count(); ++v) {
    const W d = rr.dist[static_cast<std::size_t>(v)];
    std::cout << (v + 1) << ' ' << (nwsp::is_infinite(d) ? "inf" : nwsp::format_weight(d))
              << '\n';
  }
  return 0;
}

int cmd_solve(const SolveFlags& f) {
  std::ifstream in(f.path);
  if (!in) {
    std::cerr << "cannot open " << f.path << "\n";
    return 1;
  }
  const nwsp::GraphText gt = nwsp::read_graph_text(in);
  if (f.source < 1 || f.source > gt.n) {
    std::cerr << "source out of range\n";
    return 1;
  }
  if (nwsp::weights_all_integer(gt)) return solve_typed<std::int64_t>(gt, f);
  return solve_typed<double>(gt, f);
}

int cmd_generate(const nwsp::InstanceSpec& spec, const std::string& out_path, bool real) {
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot write " << out_path << "\n";
    return 1;
  }
  if (real) {
    nwsp::write_graph(out, nwsp::generate_real(spec));
  } else {
    nwsp::write_graph(out, nwsp::generate(spec));
  }
  return 0;
}

int cmd_validate(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << path << "\n";
    return 1;
  }
  const nwsp::GraphText gt = nwsp::read_graph_text(in);
  const bool integral = nwsp::weights_all_integer(gt);
  std::int64_t k = 0;
  if (integral) {
    k = nwsp::count_negative(nwsp::graph_from_text<std::int64_t>(gt));
  } else {
    k = nwsp::count_negative(nwsp::graph_from_text<double>(gt));
  }
  std::cout << "n=" << gt.n << " m=" << gt.m << " k=" << k
            << " mode=" << (integral ? "integer" : "float") << "\n";
  return 0;
}

template <typename W>
json bench_one(const std::string& path, const nwsp::GraphText& gt, std::uint64_t seed) {
  const auto g = nwsp::graph_from_text<W>(gt);
  const AlgoRun<W> fm = run_algo(g, 0, "fineman", seed);
  const AlgoRun<W> bf = run_algo(g, 0, "bellman-ford", seed);
  json j;
  j["instance"] = path;
  j["n"] = g.vertex_count();
  j["m"] = g.edge_count();
  j["k"] = nwsp::count_negative(g);
  j["seed"] = seed;
  j["verdict"] = fm.cycle ? "negative-cycle" : "distances";
  if (fm.cycle != bf.cycle || (!fm.cycle && !dist_match(fm.dist, bf.dist))) {
    j["verdict"] = "MISMATCH";
  }
  j["fineman_ms"] = fm.wall_ms;
  j["bellman_ford_ms"] = bf.wall_ms;
  j["ratio"] = bf.wall_ms > 0 ? fm.wall_ms / bf.wall_ms : 0.0;
  json batches = json::array();
  for (const auto& b : fm.stats.batches) {
    batches.push_back(
        {{"r", b.r}, {"branch", b.branch}, {"eliminated", b.eliminated}, {"restarts", b.restarts}});
  }
  j["batches"] = std::move(batches);
  return j;
}

int cmd_bench(const std::string& dir, std::uint64_t seed, const std::string& out_path) {
  namespace fs = std::filesystem;
  std::vector<std::string> paths;
  if (fs::is_directory(dir)) {
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".graph") {
        paths.push_back(entry.path().string());
      }
    }
  }
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) {
    std::cerr << "no .graph files under " << dir << "\n";
    return 1;
  }
  json report;
  report["corpus"] = dir;
  json instances = json::array();
  for (const auto& path : paths) {
    std::ifstream in(path);
    if (!in) {
      std::cerr << "cannot open " << path << "\n";
      return 1;
    }
    const nwsp::GraphText gt = nwsp::read_graph_text(in);
    instances.push_back(nwsp::weights_all_integer(gt) ? bench_one<std::int64_t>(path, gt, seed)
                                                      : bench_one<double>(path, gt, seed));
  }
  report["instances"] = std::move(instances);
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return 1;
    }
    out << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shortest paths with negative edge weights"};
  app.require_subcommand(1);

  SolveFlags sf;
  auto* solve = app.add_subcommand("solve", "single-source shortest paths on a graph file");
  solve->add_option("path", sf.path, "graph file")->required();
  solve->add_option("--source", sf.source, "1-based source vertex (default 1)");
  solve->add_option("--seed", sf.seed, "random seed");
  solve->add_flag("--oracle", sf.oracle, "cross-check against the reference solver");
  solve->add_option("--stats", sf.stats_path, "write run statistics as JSON");
  solve->add_option("--algo", sf.algo, "fineman | bfd | bellman-ford")
      ->check(CLI::IsMember({"fineman", "bfd", "bellman-ford"}));

  nwsp::InstanceSpec spec;
  std::string gen_out;
  bool gen_real = false;
  auto* gen = app.add_subcommand("generate", "write a seeded random instance");
  gen->add_option("out", gen_out, "output graph file")->required();
  gen->add_option("--n", spec.n, "vertex count");
  gen->add_option("--m", spec.m, "edge count");
  gen->add_option("--k", spec.k, "negative edge count");
  gen->add_option("--lo", spec.lo, "most negative weight");
  gen->add_option("--hi", spec.hi, "largest weight");
  gen->add_option("--tag", spec.tag,
                  "uniform | sandwich-planted | cycle-planted | layered | grid");
  gen->add_option("--seed", spec.seed, "random seed");
  gen->add_flag("--real", gen_real, "fractional weights instead of integers");

  std::string bench_dir, bench_out;
  std::uint64_t bench_seed = 0;
  auto* bench = app.add_subcommand("bench", "time the solver against Bellman-Ford on a corpus");
  bench->add_option("corpus", bench_dir, "directory of .graph files")->required();
  bench->add_option("--seed", bench_seed, "random seed");
  bench->add_option("--out", bench_out, "write the JSON report here instead of stdout");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "parse a graph file and print a summary");
  validate->add_option("path", validate_path, "graph file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(sf);
    if (gen->parsed()) return cmd_generate(spec, gen_out, gen_real);
    if (bench->parsed()) return cmd_bench(bench_dir, bench_seed, bench_out);
    if (validate->parsed()) return cmd_validate(validate_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
