#pragma once

// Synthetic-data pipeline: stochastic block model graphs, trace rescaling,
// Laplacian-GMRF signal sampling, per-row normalization and Bernoulli
// masking. Everything is deterministic per seed (see rng.hpp), so identical
// configurations reproduce bit-identical ground truth.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "stgl/errors.hpp"
#include "stgl/graph_ops.hpp"
#include "stgl/rng.hpp"

namespace stgl {

struct WeightDist {
  bool uniform = false;  // false: every edge has weight 1
  double lo = 1.0;
  double hi = 1.0;
};

struct SbmConfig {
  int n = 64;
  int clusters = 4;
  double p_within = 0.075;   // same-cluster edge probability
  double p_between = 0.7;    // cross-cluster edge probability
  WeightDist weight_dist;
  std::uint64_t seed = 0;
};

inline void validate(const SbmConfig& cfg) {
  if (cfg.n < 2) throw std::invalid_argument("SbmConfig: need n >= 2");
  if (cfg.clusters < 1 || cfg.clusters > cfg.n)
    throw std::invalid_argument("SbmConfig: need 1 <= clusters <= n");
  if (cfg.p_within < 0 || cfg.p_within > 1 || cfg.p_between < 0 ||
      cfg.p_between > 1)
    throw std::invalid_argument("SbmConfig: probabilities must be in [0, 1]");
  if (cfg.weight_dist.uniform && !(cfg.weight_dist.lo <= cfg.weight_dist.hi))
    throw std::invalid_argument("SbmConfig: weight range must have lo <= hi");
}

namespace detail {

// Vertices are split into equal blocks; remainder vertices join the last one.
inline int cluster_of(int vertex, int n, int clusters) {
  const int base = n / clusters;
  return std::min(vertex / base, clusters - 1);
}

inline bool is_connected(int n, const Eigen::VectorXd& w) {
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  int components = n;
  for_each_edge(n, [&](int k, int i, int j) {
    if (w[k] <= 0.0) return;
    const int a = find(i), b = find(j);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  });
  return components == 1;
}

}  // namespace detail

// Draws each potential edge independently with its block-dependent
// probability; regenerates until the graph is connected, up to 100 tries.
inline EdgeWeights generate_sbm(const SbmConfig& cfg) {
  validate(cfg);
  Rng rng(cfg.seed);
  constexpr int kMaxRetries = 100;
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    EdgeWeights ew{cfg.n, Eigen::VectorXd::Zero(edge_count(cfg.n))};
    for_each_edge(cfg.n, [&](int k, int i, int j) {
      const bool same = detail::cluster_of(i, cfg.n, cfg.clusters) ==
                        detail::cluster_of(j, cfg.n, cfg.clusters);
      const double p = same ? cfg.p_within : cfg.p_between;
      if (rng.bernoulli(p))
        ew.w[k] = cfg.weight_dist.uniform
                      ? rng.uniform(cfg.weight_dist.lo, cfg.weight_dist.hi)
                      : 1.0;
    });
    if (detail::is_connected(cfg.n, ew.w)) return ew;
  }
  throw generation_error("generate_sbm: no connected graph in " +
                         std::to_string(kMaxRetries) + " attempts (n=" +
                         std::to_string(cfg.n) + ")");
}

// Rescales w so that Tr(L(w)) = target; Tr(L(w)) = 2 ||w||_1.
inline EdgeWeights scale_trace(const EdgeWeights& ew, double target) {
  const double trace = 2.0 * ew.w.sum();
  if (!(trace > 0))
    throw std::invalid_argument("scale_trace: Tr(L(w)) must be positive");
  return EdgeWeights{ew.n, ew.w * (target / trace)};
}

// Columns are i.i.d. draws with covariance L^+: x_t = sqrt(L^+) nu_t with
// standard normal nu_t. The pseudo-inverse square root excludes eigenvalues
// below 1e-10 * lambda_max; a connected graph has exactly one such (the
// constant vector), so each sample is orthogonal to it.
inline Eigen::MatrixXd sample_gmrf(const Eigen::MatrixXd& lap, int t_count,
                                   std::uint64_t seed) {
  if (lap.rows() != lap.cols() || lap.rows() < 2)
    throw std::invalid_argument("sample_gmrf: Laplacian must be square, n >= 2");
  if (t_count < 0) throw std::invalid_argument("sample_gmrf: need T >= 0");
  const int n = static_cast<int>(lap.rows());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(lap);
  const Eigen::VectorXd& ev = eig.eigenvalues();
  const double cutoff = 1e-10 * std::max(ev[n - 1], 0.0);
  int near_zero = 0;
  Eigen::VectorXd inv_sqrt = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (ev[i] <= cutoff)
      ++near_zero;
    else
      inv_sqrt[i] = 1.0 / std::sqrt(ev[i]);
  }
  if (near_zero != 1)
    throw generation_error(
        "sample_gmrf: Laplacian has " + std::to_string(near_zero) +
        " near-zero eigenvalues; need a connected graph (exactly 1)");

  const Eigen::MatrixXd sqrt_pinv =
      eig.eigenvectors() * inv_sqrt.asDiagonal() * eig.eigenvectors().transpose();

  Rng rng(seed);
  Eigen::MatrixXd noise(n, t_count);
  for (int t = 0; t < t_count; ++t)
    for (int i = 0; i < n; ++i) noise(i, t) = rng.normal();
  return sqrt_pinv * noise;
}

// Affine map per row to zero mean and unit population standard deviation
// (divisor T, so each normalized row has squared norm exactly T).
inline Eigen::MatrixXd normalize_rows(const Eigen::MatrixXd& x) {
  const Eigen::Index t_count = x.cols();
  if (t_count < 1) throw std::invalid_argument("normalize_rows: need T >= 1");
  Eigen::MatrixXd out(x.rows(), t_count);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double mean = x.row(i).mean();
    const double var = (x.row(i).array() - mean).square().sum() / t_count;
    if (!(var > 0))
      throw std::invalid_argument("normalize_rows: row " + std::to_string(i) +
                                  " has zero variance");
    out.row(i) = (x.row(i).array() - mean) / std::sqrt(var);
  }
  return out;
}

// i.i.d. Bernoulli(rate) sampling mask, filled column-major.
inline Eigen::MatrixXd generate_mask(int n, int t_count, double rate,
                                     std::uint64_t seed) {
  if (rate < 0 || rate > 1)
    throw std::invalid_argument("generate_mask: rate must be in [0, 1]");
  Rng rng(seed);
  Eigen::MatrixXd mask(n, t_count);
  for (int t = 0; t < t_count; ++t)
    for (int i = 0; i < n; ++i) mask(i, t) = rng.bernoulli(rate) ? 1.0 : 0.0;
  return mask;
}

// A complete synthetic instance: graph, trace-scaled Laplacian, normalized
// signal, mask and observations.
struct GroundTruth {
  EdgeWeights w_true;
  Eigen::MatrixXd l_true;  // Tr = n
  Eigen::MatrixXd x_true;  // rows: mean 0, population std 1
  Eigen::MatrixXd mask;
  Eigen::MatrixXd y;       // mask .* x_true, exactly
};

inline GroundTruth generate_ground_truth(const SbmConfig& graph_cfg,
                                         int t_count,
                                         std::uint64_t signal_seed,
                                         double sampling_rate,
                                         std::uint64_t mask_seed) {
  GroundTruth gt;
  gt.w_true = scale_trace(generate_sbm(graph_cfg), graph_cfg.n);
  gt.l_true = laplacian(gt.w_true);
  gt.x_true = normalize_rows(sample_gmrf(gt.l_true, t_count, signal_seed));
  gt.mask = generate_mask(graph_cfg.n, t_count, sampling_rate, mask_seed);
  gt.y = gt.mask.cwiseProduct(gt.x_true);
  return gt;
}

}  // namespace stgl
