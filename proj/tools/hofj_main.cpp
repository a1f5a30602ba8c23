// Command-line harness for the higher-order Friedkin-Johnsen model:
// dataset preparation, exact-vs-approximate comparison, parameter sweeps,
// opinion generation, and sparsifier export.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hofj/experiment.hpp"
#include "hofj/io.hpp"

namespace {

using namespace hofj;

std::ostream& open_output(std::ofstream& file, const std::string& out_path) {
  if (out_path.empty()) return std::cout;
  file.open(out_path);
  if (!file) throw std::runtime_error("cannot open output file '" + out_path + "'");
  return file;
}

void emit_reports(const std::vector<ExperimentReport>& reports, const std::string& out_path) {
  std::ofstream file;
  std::ostream& out = open_output(file, out_path);
  for (const ExperimentReport& rep : reports) out << rep.to_json().dump() << '\n';
}

struct CommonRunFlags {
  std::vector<double> beta{0.5, 0.5};
  std::int64_t m_multiplier = 10;
  int iters = 100;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::string distribution = "uniform";
  double x_min = 1.0;
  std::uint64_t opinion_seed = 7;
  std::string innate_file, resistance_file;
  std::string mode = "literal-uniform";
  std::size_t dense_cap = kDefaultDenseCap;
  bool single_thread = false;
  bool warmup = false;
  std::string out;

  void attach(CLI::App* cmd) {
    cmd->add_option("--beta", beta, "polynomial coefficients, must sum to 1")
        ->delimiter(',');
    cmd->add_option("--M-multiplier", m_multiplier, "sample budget M = multiplier * T * m");
    cmd->add_option("--iters", iters, "iteration count for the approximate solver");
    cmd->add_option("--seeds", seeds, "sparsifier seeds")->delimiter(',');
    cmd->add_option("--distribution", distribution,
                    "innate opinion distribution: uniform, exponential, power-law");
    cmd->add_option("--x-min", x_min, "lower support bound for exponential/power-law draws");
    cmd->add_option("--opinion-seed", opinion_seed, "seed for opinion/resistance generation");
    cmd->add_option("--innate", innate_file, "innate opinion vector file (overrides generation)");
    cmd->add_option("--resistance", resistance_file, "resistance vector file");
    cmd->add_option("--mode", mode, "sampling mode: literal-uniform or weight-proportional");
    cmd->add_option("--dense-cap", dense_cap, "node-count cap for dense construction");
    cmd->add_flag("--single-thread", single_thread, "record single-thread comparison mode");
    cmd->add_flag("--warmup", warmup, "run one untimed approximate pass before measuring");
    cmd->add_option("--out", out, "output file (default stdout)");
  }

  RunConfig to_config() const {
    RunConfig cfg;
    cfg.spec = PolynomialSpec{beta};
    cfg.spec.validate();
    cfg.m_multiplier = m_multiplier;
    cfg.iterations = iters;
    cfg.mode = sampling_mode_from_name(mode);
    cfg.seeds = seeds;
    cfg.distribution = distribution_from_name(distribution);
    cfg.x_min = x_min;
    cfg.opinion_seed = opinion_seed;
    if (!innate_file.empty()) cfg.innate_file = innate_file;
    if (!resistance_file.empty()) cfg.resistance_file = resistance_file;
    cfg.dense_cap = dense_cap;
    cfg.single_thread = single_thread;
    cfg.warmup = warmup;
    return cfg;
  }
};

int cmd_prepare(const std::string& path, const std::string& name, const std::string& id_map_out,
                const std::string& edges_out) {
  DatasetInfo info = prepare_dataset(path, name);
  std::cout << "dataset: " << info.name << '\n'
            << "parsed nodes: " << info.original_n << ", edges: " << info.original_m << '\n'
            << "largest component: n' = " << info.graph.node_count()
            << ", m' = " << info.graph.edge_count() << '\n'
            << "self-loops dropped: " << info.stats.self_loops_dropped
            << ", duplicate edges merged: " << info.stats.duplicates_merged << '\n';
  if (!id_map_out.empty()) write_id_map(info.graph, id_map_out);
  if (!edges_out.empty()) write_edge_list(info.graph, edges_out);
  return 0;
}

int cmd_example_tree(const std::string& out) {
  const TreeExampleResult res = run_tree_example();
  std::cout << std::fixed << std::setprecision(3);
  for (const TreeCase& c : res.cases) {
    std::cout << (c.pass ? "PASS" : "FAIL") << "  beta=(";
    for (std::size_t i = 0; i < c.beta.size(); ++i)
      std::cout << c.beta[i] << (i + 1 < c.beta.size() ? "," : ")");
    std::cout << "  red=" << c.red << " yellow=" << c.yellow << " blue=" << c.blue
              << "  sum(rounded)=" << c.rounded_sum << "  expected (" << c.published_red << ", "
              << c.published_yellow << ", " << c.published_blue << ") sum " << c.published_sum
              << "  max|err|=" << std::setprecision(6) << c.max_color_error
              << std::setprecision(3) << '\n';
  }
  std::cout << (res.all_pass ? "PASS" : "FAIL") << "  all cases, " << std::setprecision(3)
            << res.wall_seconds << " s\n";
  if (!out.empty()) {
    nlohmann::json j = nlohmann::json::array();
    for (const TreeCase& c : res.cases)
      j.push_back({{"beta", c.beta},
                   {"red", c.red},
                   {"yellow", c.yellow},
                   {"blue", c.blue},
                   {"exact_sum", c.exact_sum},
                   {"rounded_sum", c.rounded_sum},
                   {"max_color_error", c.max_color_error},
                   {"pass", c.pass}});
    std::ofstream f(out);
    f << j.dump(2) << '\n';
  }
  return res.all_pass ? 0 : 1;
}

int cmd_gen_opinions(NodeId n, const std::string& distribution, double x_min,
                     std::uint64_t seed, const std::string& out,
                     const std::string& resistance_out) {
  GenSpec spec{distribution_from_name(distribution), x_min, 2.5, seed, n};
  write_vector(generate_innate(spec), out);
  if (!resistance_out.empty()) write_vector(generate_resistance(n, seed), resistance_out);
  return 0;
}

int cmd_sparsify(const std::string& path, const CommonRunFlags& flags, std::int64_t budget,
                 int epsilon_trials, const std::string& out) {
  DatasetInfo info = prepare_dataset(path);
  RunConfig cfg = flags.to_config();
  SparsifierConfig scfg;
  scfg.sample_budget = budget > 0 ? budget : cfg.sample_budget(info.graph);
  scfg.mode = cfg.mode;
  scfg.seed = flags.seeds.empty() ? 0 : flags.seeds.front();
  SparsifierOutput sp = build_sparsifier(info.graph, cfg.spec, scfg);
  if (epsilon_trials > 0) {
    const DenseOperator l_beta =
        build_polynomial_laplacian(info.graph, cfg.spec, cfg.dense_cap);
    RandomStream rng = RandomStream::derive(scfg.seed, 2);
    const SimilarityResult sim =
        spectral_similarity_check(l_beta, sp.laplacian, epsilon_trials, rng);
    sp.epsilon_estimate = sim.epsilon_estimate;
    if (sim.degenerate_count > 0)
      std::cerr << "warning: " << sim.degenerate_count
                << " test vectors hit a vanishing surrogate form (sparsifier may be "
                   "disconnected)\n";
  }
  write_sparsifier(sp, out);
  std::cout << "sparsifier: " << sp.merged_edge_count << " merged edges from "
            << sp.sample_budget << " samples (" << sp.self_loop_samples
            << " self-loop samples), total weight " << sp.total_added_weight << '\n';
  return 0;
}

int cmd_compare(const std::string& path, const CommonRunFlags& flags) {
  DatasetInfo info = prepare_dataset(path);
  const std::vector<ExperimentReport> reports =
      run_compare(info.graph, info.name, flags.to_config());
  emit_reports(reports, flags.out);
  return 0;
}

int cmd_sweep_m(const std::string& path, const CommonRunFlags& flags,
                const std::vector<std::int64_t>& k_list, const std::string& csv,
                const std::string& plot) {
  DatasetInfo info = prepare_dataset(path);
  const SweepMResult res = run_sweep_m(info.graph, info.name, flags.to_config(), k_list);
  emit_reports(res.reports, flags.out);
  if (!csv.empty()) {
    std::ofstream f(csv);
    f << "k,M,median_sigma,mean_wall_seconds\n" << std::setprecision(17);
    for (const SweepPoint& p : res.points)
      f << p.k << ',' << p.sample_budget << ',' << p.median_sigma << ','
        << p.mean_wall_seconds << '\n';
  }
  if (!plot.empty()) {
    std::vector<double> xs, ys;
    for (const SweepPoint& p : res.points) {
      xs.push_back(static_cast<double>(p.sample_budget));
      ys.push_back(p.median_sigma);
    }
    write_svg_curve(plot, "mean absolute error vs sample budget", "M", "median sigma", xs, ys);
  }
  if (!res.monotone_ok) {
    std::cerr << "FAIL: median error is not non-increasing along the multiplier grid\n";
    return 1;
  }
  return 0;
}

int cmd_sweep_iters(const std::string& path, const CommonRunFlags& flags,
                    const std::vector<int>& grid, const std::string& csv,
                    const std::string& plot) {
  DatasetInfo info = prepare_dataset(path);
  const SweepItersResult res = run_sweep_iters(info.graph, info.name, flags.to_config(), grid);
  emit_reports(res.reports, flags.out);
  if (!csv.empty()) {
    std::ofstream f(csv);
    f << "iterations,median_sigma\n" << std::setprecision(17);
    for (const IterPoint& p : res.points) f << p.t << ',' << p.median_sigma << '\n';
  }
  if (!plot.empty()) {
    std::vector<double> xs, ys;
    for (const IterPoint& p : res.points) {
      xs.push_back(static_cast<double>(std::max(p.t, 1)));
      ys.push_back(p.median_sigma);
    }
    write_svg_curve(plot, "mean absolute error vs iterations", "iterations", "median sigma",
                    xs, ys, false, true);
  }
  if (res.plateau_checked && !res.plateau_ok) {
    std::cerr << "FAIL: error has not plateaued between 50 and 100 iterations\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"higher-order Friedkin-Johnsen opinion dynamics"};
  app.require_subcommand(1);

  // prepare
  auto* prepare = app.add_subcommand("prepare", "load an edge list, keep the largest component");
  std::string prepare_path, prepare_name, prepare_idmap, prepare_edges;
  prepare->add_option("dataset", prepare_path, "edge-list file")->required();
  prepare->add_option("--name", prepare_name, "dataset label");
  prepare->add_option("--write-id-map", prepare_idmap, "export compacted-id map");
  prepare->add_option("--write-edges", prepare_edges, "export cleaned edge list");

  // example-tree
  auto* tree = app.add_subcommand("example-tree", "solve the ten-node reference tree");
  std::string tree_out;
  tree->add_option("--out", tree_out, "JSON output file");

  // gen-opinions
  auto* gen = app.add_subcommand("gen-opinions", "generate innate opinions / resistances");
  NodeId gen_n = 0;
  std::string gen_dist = "uniform", gen_out, gen_res_out;
  double gen_x_min = 1.0;
  std::uint64_t gen_seed = 7;
  gen->add_option("--n", gen_n, "vector length")->required();
  gen->add_option("--distribution", gen_dist, "uniform, exponential, power-law");
  gen->add_option("--x-min", gen_x_min, "lower support bound");
  gen->add_option("--seed", gen_seed, "generation seed");
  gen->add_option("--out", gen_out, "innate opinion output file")->required();
  gen->add_option("--resistance-out", gen_res_out, "resistance output file");

  // sparsify
  auto* sparsify = app.add_subcommand("sparsify", "build and export a sparsifier");
  std::string sparsify_path, sparsify_out = "sparsifier.txt";
  std::int64_t sparsify_budget = 0;
  int sparsify_eps_trials = 0;
  CommonRunFlags sparsify_flags;
  sparsify->add_option("dataset", sparsify_path, "edge-list file")->required();
  sparsify_flags.attach(sparsify);
  sparsify->add_option("--M", sparsify_budget, "absolute sample budget (overrides multiplier)");
  sparsify->add_option("--epsilon-trials", sparsify_eps_trials,
                       "random vectors for the similarity estimate (0 = skip)");
  sparsify->add_option("--sparsifier-out", sparsify_out, "edge-list output path");

  // compare
  auto* compare = app.add_subcommand("compare", "exact vs approximate equilibrium");
  std::string compare_path;
  CommonRunFlags compare_flags;
  compare->add_option("dataset", compare_path, "edge-list file")->required();
  compare_flags.attach(compare);

  // sweep-m
  auto* sweepm = app.add_subcommand("sweep-m", "error as a function of the sample budget");
  std::string sweepm_path, sweepm_csv, sweepm_plot;
  std::vector<std::int64_t> sweepm_k{1, 10, 100, 200, 500, 1000, 2000};
  CommonRunFlags sweepm_flags;
  sweepm->add_option("dataset", sweepm_path, "edge-list file")->required();
  sweepm_flags.attach(sweepm);
  sweepm->add_option("--k-list", sweepm_k, "multiplier grid")->delimiter(',');
  sweepm->add_option("--csv", sweepm_csv, "curve CSV output");
  sweepm->add_option("--plot", sweepm_plot, "curve SVG output");

  // sweep-iters
  auto* sweepi = app.add_subcommand("sweep-iters", "error as a function of iteration count");
  std::string sweepi_path, sweepi_csv, sweepi_plot;
  std::vector<int> sweepi_grid{0, 1, 2, 5, 10, 20, 50, 100};
  CommonRunFlags sweepi_flags;
  sweepi->add_option("dataset", sweepi_path, "edge-list file")->required();
  sweepi_flags.attach(sweepi);
  sweepi->add_option("--iter-grid", sweepi_grid, "iteration grid")->delimiter(',');
  sweepi->add_option("--csv", sweepi_csv, "curve CSV output");
  sweepi->add_option("--plot", sweepi_plot, "curve SVG output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (prepare->parsed())
      return cmd_prepare(prepare_path, prepare_name, prepare_idmap, prepare_edges);
    if (tree->parsed()) return cmd_example_tree(tree_out);
    if (gen->parsed())
      return cmd_gen_opinions(gen_n, gen_dist, gen_x_min, gen_seed, gen_out, gen_res_out);
    if (sparsify->parsed())
      return cmd_sparsify(sparsify_path, sparsify_flags, sparsify_budget, sparsify_eps_trials,
                          sparsify_out);
    if (compare->parsed()) return cmd_compare(compare_path, compare_flags);
    if (sweepm->parsed())
      return cmd_sweep_m(sweepm_path, sweepm_flags, sweepm_k, sweepm_csv, sweepm_plot);
    if (sweepi->parsed())
      return cmd_sweep_iters(sweepi_path, sweepi_flags, sweepi_grid, sweepi_csv, sweepi_plot);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
