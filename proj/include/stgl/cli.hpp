#pragma once

// CLI entry points: synth, learn, eval, sweep.
//
// Exit codes: 0 success, 1 numerical/model failure, 2 usage or file error.
// Output bundles always include a manifest with every effective parameter.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stgl/errors.hpp"
#include "stgl/io.hpp"
#include "stgl/metrics.hpp"
#include "stgl/solver.hpp"
#include "stgl/sweep.hpp"
#include "stgl/synth.hpp"

namespace stgl {

namespace detail {

inline SolverConfig solver_config_from(const RunConfig& cfg, int t_count) {
  RunConfig r = cfg;
  resolve_hyperparams(r, t_count);
  SolverConfig out;
  out.hp = Hyperparams{r.alpha, r.beta, r.gamma, r.tau};
  out.theta_slack = r.theta_slack;
  out.w_floor = r.w_floor;
  out.rel_tol = r.rel_tol;
  out.max_iters = r.max_iters;
  out.track_objective = r.track_objective;
  out.pd_floor = r.pd_floor;
  return out;
}

inline SbmConfig sbm_config_from(const RunConfig& cfg) {
  SbmConfig g;
  g.n = cfg.n;
  g.clusters = cfg.clusters;
  g.p_within = cfg.p_within;
  g.p_between = cfg.p_between;
  g.weight_dist =
      WeightDist{cfg.weight_dist == "uniform", cfg.weight_lo, cfg.weight_hi};
  g.seed = cfg.graph_seed;
  return g;
}

}  // namespace detail

inline int cmd_synth(const RunConfig& cfg, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const GroundTruth gt =
      generate_ground_truth(detail::sbm_config_from(cfg), cfg.T,
                            cfg.signal_seed, cfg.sampling_rate, cfg.mask_seed);
  const auto p = [&](const char* name) { return out_dir + "/" + name; };
  write_matrix(p("w_true.csv"), gt.w_true.w,
               "edge weights, canonical edge order");
  write_matrix(p("L_true.csv"), gt.l_true, "Laplacian, Tr = n");
  write_matrix(p("X_true.csv"), gt.x_true, "signal, rows=vertices cols=time");
  write_matrix(p("M.csv"), gt.mask, "binary sampling mask");
  write_matrix(p("Y.csv"), gt.y, "observations, M .* X_true");

  Manifest m = config_manifest(cfg);
  m.emplace_back("command", "synth");
  write_manifest(p("manifest.txt"), m);
  std::cout << "synth: wrote ground-truth bundle (n=" << cfg.n
            << ", T=" << cfg.T << ") to " << out_dir << "\n";
  return 0;
}

inline int cmd_learn(const std::string& y_path, const std::string& mask_path,
                     const RunConfig& cfg, const std::string& out_dir) {
  const Eigen::MatrixXd y = read_matrix(y_path);
  const Eigen::MatrixXd mask = read_matrix(mask_path);
  if (y.rows() != mask.rows() || y.cols() != mask.cols())
    throw std::invalid_argument(
        "learn: Y is " + std::to_string(y.rows()) + "x" +
        std::to_string(y.cols()) + " but mask is " +
        std::to_string(mask.rows()) + "x" + std::to_string(mask.cols()));

  const int t_count = static_cast<int>(y.cols());
  const SolverConfig scfg = detail::solver_config_from(cfg, t_count);
  const SolverResult res = solve(y, mask, scfg);

  std::filesystem::create_directories(out_dir);
  const auto p = [&](const char* name) { return out_dir + "/" + name; };
  write_matrix(p("X_hat.csv"), res.x_hat, "recovered signal");
  write_matrix(p("L_hat.csv"), res.l_hat, "learned Laplacian");
  if (!res.objective_trace.empty()) {
    Eigen::MatrixXd trace(res.objective_trace.size(), 1);
    for (size_t i = 0; i < res.objective_trace.size(); ++i)
      trace(static_cast<Eigen::Index>(i), 0) = res.objective_trace[i];
    write_matrix(p("trace.csv"), trace, "objective per outer iteration");
  }

  RunConfig effective = cfg;
  effective.n = static_cast<int>(y.rows());
  effective.T = t_count;
  Manifest m = config_manifest(effective);
  m.emplace_back("command", "learn");
  m.emplace_back("y_file", y_path);
  m.emplace_back("mask_file", mask_path);
  m.emplace_back("iterations", std::to_string(res.iterations));
  m.emplace_back("termination", to_string(res.termination));
  if (!res.objective_trace.empty())
    m.emplace_back("objective_final",
                   format_double(res.objective_trace.back()));
  write_manifest(p("manifest.txt"), m);
  std::cout << "learn: " << to_string(res.termination) << " after "
            << res.iterations << " iterations; results in " << out_dir << "\n";
  return 0;
}

inline int cmd_eval(const std::string& truth_dir, const std::string& est_dir,
                    double edge_threshold) {
  const Eigen::MatrixXd l_true =
      rescale_trace_to_n(read_matrix(truth_dir + "/L_true.csv"));
  const Eigen::MatrixXd x_true = read_matrix(truth_dir + "/X_true.csv");
  const Eigen::MatrixXd l_hat =
      rescale_trace_to_n(read_matrix(est_dir + "/L_hat.csv"));
  const Eigen::MatrixXd x_hat = read_matrix(est_dir + "/X_hat.csv");

  const GraphMetrics gm = graph_metrics(l_true, l_hat, edge_threshold);
  const SignalMetrics sm = signal_metrics(x_true, x_hat);

  Manifest rec;
  rec.emplace_back("rel_err", format_double(gm.rel_err));
  rec.emplace_back("f_score", format_double(gm.f_score));
  rec.emplace_back("tp", std::to_string(gm.tp));
  rec.emplace_back("fp", std::to_string(gm.fp));
  rec.emplace_back("fn", std::to_string(gm.fn));
  rec.emplace_back("snr_db", format_double(sm.snr_db));
  rec.emplace_back("nmse", format_double(sm.nmse));
  rec.emplace_back("edge_threshold", format_double(edge_threshold));
  for (const auto& [k, v] : rec) std::cout << k << "=" << v << "\n";
  write_manifest(est_dir + "/metrics.txt", rec);
  return 0;
}

inline int cmd_sweep(const RunConfig& cfg, const std::string& out_file,
                     int workers) {
  const auto records = run_sweep(cfg, workers);
  write_sweep_report(out_file, records);
  std::size_t failures = 0;
  for (const auto& r : records) failures += r.status != "ok";
  std::cout << "sweep: " << records.size() << " cells ("
            << cfg.rates.size() << " rates x " << cfg.seeds.size()
            << " seeds), " << failures << " failed; report: " << out_file
            << "\n";
  return 0;
}

// Full argument-to-exit-code path shared by the binary and the tests.
inline int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Joint recovery of a time-varying graph signal and its graph"};
  app.require_subcommand(1);

  std::string config_path, out_path, y_path, mask_path;
  std::string truth_dir, est_dir;
  double edge_threshold = 1e-4;
  int workers = 1;
  bool workers_given = false;

  auto* synth = app.add_subcommand("synth", "generate a ground-truth bundle");
  synth->add_option("--config", config_path, "key=value config file")
      ->required();
  synth->add_option("--out", out_path, "output directory");

  auto* learn = app.add_subcommand("learn", "run the solver on Y and M");
  learn->add_option("--y", y_path, "observations matrix file")->required();
  learn->add_option("--mask", mask_path, "binary mask matrix file")->required();
  learn->add_option("--config", config_path, "key=value config file");
  learn->add_option("--out", out_path, "output directory");

  auto* eval = app.add_subcommand("eval", "score an estimate against truth");
  eval->add_option("--truth", truth_dir, "directory with L_true.csv, X_true.csv")
      ->required();
  eval->add_option("--est", est_dir, "directory with L_hat.csv, X_hat.csv")
      ->required();
  eval->add_option("--edge-threshold", edge_threshold,
                   "edge-presence threshold after trace rescaling");

  auto* sweep = app.add_subcommand("sweep", "run a (rate x seed) grid");
  sweep->add_option("--config", config_path, "key=value config file")
      ->required();
  sweep->add_option("--out", out_path, "report file");
  sweep->add_option("--workers", workers, "concurrent cells")
      ->check(CLI::PositiveNumber)
      ->each([&](const std::string&) { workers_given = true; });

  // CLI11 wants argv-style reversed strings
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    if (out_path.empty()) out_path = cfg.out;

    if (synth->parsed()) {
      if (out_path.empty())
        throw std::invalid_argument("synth: --out (or config key out) required");
      return cmd_synth(cfg, out_path);
    }
    if (learn->parsed()) {
      if (out_path.empty())
        throw std::invalid_argument("learn: --out (or config key out) required");
      return cmd_learn(y_path, mask_path, cfg, out_path);
    }
    if (eval->parsed()) return cmd_eval(truth_dir, est_dir, edge_threshold);
    if (sweep->parsed()) {
      if (out_path.empty())
        throw std::invalid_argument("sweep: --out (or config key out) required");
      return cmd_sweep(cfg, out_path, workers_given ? workers : cfg.workers);
    }
    return 2;
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << " [" << e.path() << "]\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace stgl
