#pragma once

// Sampling-rate sweep: for each (rate, seed) cell, generate a synthetic
// instance, solve it, and score both the solver and the zero-fill baseline
// (X_hat = Y). Cells are independent deterministic computations, so they can
// run on any number of workers; records are assembled rate-major,
// seed-minor regardless of completion order. A cell failure is recorded in
// its record and the sweep continues.
//
// Per-cell substreams are derived from the cell seed: graph and signal
// streams depend on the seed only (the same ground truth is reused across
// rates), the mask stream additionally on the rate index.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "stgl/io.hpp"
#include "stgl/metrics.hpp"
#include "stgl/solver.hpp"
#include "stgl/synth.hpp"

namespace stgl {

namespace detail {

inline constexpr std::uint64_t kGraphSalt = 0x67726170;
inline constexpr std::uint64_t kSignalSalt = 0x7369676e;
inline constexpr std::uint64_t kMaskSalt = 0x6d61736b;

inline SweepRecord run_sweep_cell(const RunConfig& cfg, double rate,
                                  std::size_t rate_index, std::uint64_t seed) {
  SweepRecord rec;
  rec.sr = rate;
  rec.seed = seed;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  try {
    SbmConfig graph_cfg;
    graph_cfg.n = cfg.n;
    graph_cfg.clusters = cfg.clusters;
    graph_cfg.p_within = cfg.p_within;
    graph_cfg.p_between = cfg.p_between;
    graph_cfg.weight_dist =
        WeightDist{cfg.weight_dist == "uniform", cfg.weight_lo, cfg.weight_hi};
    graph_cfg.seed = mix_seed(seed, kGraphSalt);

    const GroundTruth gt = generate_ground_truth(
        graph_cfg, cfg.T, mix_seed(seed, kSignalSalt), rate,
        mix_seed(mix_seed(seed, kMaskSalt), rate_index));

    RunConfig resolved = cfg;
    resolve_hyperparams(resolved, cfg.T);
    SolverConfig scfg;
    scfg.hp = Hyperparams{resolved.alpha, resolved.beta, resolved.gamma,
                          resolved.tau};
    scfg.theta_slack = resolved.theta_slack;
    scfg.w_floor = resolved.w_floor;
    scfg.rel_tol = resolved.rel_tol;
    scfg.max_iters = resolved.max_iters;
    scfg.track_objective = resolved.track_objective;
    scfg.pd_floor = resolved.pd_floor;

    const auto t0 = std::chrono::steady_clock::now();
    const SolverResult res = solve(gt.y, gt.mask, scfg);
    const auto t1 = std::chrono::steady_clock::now();
    rec.wall_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    rec.iterations = res.iterations;

    const GraphMetrics gm =
        graph_metrics(gt.l_true, rescale_trace_to_n(res.l_hat),
                      resolved.edge_threshold);
    const SignalMetrics sm = signal_metrics(gt.x_true, res.x_hat);
    const SignalMetrics zf = signal_metrics(gt.x_true, gt.y);
    rec.rel_err = gm.rel_err;
    rec.f_score = gm.f_score;
    rec.snr_db = sm.snr_db;
    rec.nmse = sm.nmse;
    rec.zf_snr_db = zf.snr_db;
    rec.zf_nmse = zf.nmse;
    rec.status = "ok";
  } catch (const std::exception& e) {
    rec.rel_err = rec.f_score = rec.snr_db = rec.nmse = nan;
    rec.zf_snr_db = rec.zf_nmse = nan;
    rec.status = std::string("error: ") + e.what();
  }
  return rec;
}

}  // namespace detail

inline std::vector<SweepRecord> run_sweep(const RunConfig& cfg,
                                          int workers = 1) {
  if (workers < 1) throw std::invalid_argument("run_sweep: need workers >= 1");
  const std::size_t cells = cfg.rates.size() * cfg.seeds.size();
  std::vector<SweepRecord> records(cells);

  auto run_cell = [&](std::size_t idx) {
    const std::size_t rate_index = idx / cfg.seeds.size();
    const std::size_t seed_index = idx % cfg.seeds.size();
    records[idx] = detail::run_sweep_cell(cfg, cfg.rates[rate_index],
                                          rate_index, cfg.seeds[seed_index]);
  };

  const std::size_t pool =
      std::min<std::size_t>(static_cast<std::size_t>(workers), cells);
  if (pool <= 1) {
    for (std::size_t idx = 0; idx < cells; ++idx) run_cell(idx);
    return records;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::thread> threads;
  threads.reserve(pool);
  for (std::size_t t = 0; t < pool; ++t)
    threads.emplace_back([&] {
      for (std::size_t idx = next.fetch_add(1); idx < cells;
           idx = next.fetch_add(1))
        run_cell(idx);
    });
  for (auto& th : threads) th.join();
  return records;
}

}  // namespace stgl
