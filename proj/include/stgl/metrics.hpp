#pragma once

// Evaluation metrics: relative error and F-score on Laplacians (after trace
// rescaling to n), SNR and NMSE on signal matrices.

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "stgl/errors.hpp"
#include "stgl/graph_ops.hpp"

namespace stgl {

struct GraphMetrics {
  double rel_err = 0;  // ||L_true - L_hat||_F / ||L_true||_F
  double f_score = 0;  // 2TP / (2TP + FP + FN)
  long tp = 0, fp = 0, fn = 0;
};

struct SignalMetrics {
  double snr_db = 0;  // 20 log10(||X_true||_F / ||X_true - X_hat||_F)
  double nmse = 0;    // mean over columns of ||x_t - xhat_t||^2 / ||x_t||^2
};

// Scaled copy with Tr = n; the same rescaling the ground truth carries.
inline Eigen::MatrixXd rescale_trace_to_n(const Eigen::MatrixXd& lap) {
  if (lap.rows() != lap.cols())
    throw std::invalid_argument("rescale_trace_to_n: matrix must be square");
  const double trace = lap.trace();
  if (!(trace > 0))
    throw std::invalid_argument("rescale_trace_to_n: trace must be positive");
  return lap * (static_cast<double>(lap.rows()) / trace);
}

// Edge support comparison and relative error. Both inputs are expected
// trace-rescaled to n; an edge is present iff its weight -L_ij exceeds
// edge_threshold.
inline GraphMetrics graph_metrics(const Eigen::MatrixXd& l_true,
                                  const Eigen::MatrixXd& l_hat,
                                  double edge_threshold = 1e-4) {
  if (l_true.rows() != l_hat.rows() || l_true.cols() != l_hat.cols() ||
      l_true.rows() != l_true.cols())
    throw std::invalid_argument("graph_metrics: dimension mismatch");
  const int n = static_cast<int>(l_true.rows());

  GraphMetrics out;
  out.rel_err = (l_true - l_hat).norm() / l_true.norm();
  for_each_edge(n, [&](int, int i, int j) {
    const bool in_true = -l_true(i, j) > edge_threshold;
    const bool in_hat = -l_hat(i, j) > edge_threshold;
    out.tp += in_true && in_hat;
    out.fp += !in_true && in_hat;
    out.fn += in_true && !in_hat;
  });
  const long denom = 2 * out.tp + out.fp + out.fn;
  out.f_score = denom == 0 ? 1.0 : 2.0 * out.tp / static_cast<double>(denom);
  return out;
}

// SNR (dB) and per-column NMSE. Exact recovery reports SNR = +infinity.
inline SignalMetrics signal_metrics(const Eigen::MatrixXd& x_true,
                                    const Eigen::MatrixXd& x_hat) {
  if (x_true.rows() != x_hat.rows() || x_true.cols() != x_hat.cols())
    throw std::invalid_argument("signal_metrics: dimension mismatch");
  const Eigen::Index t_count = x_true.cols();
  if (t_count < 1) throw std::invalid_argument("signal_metrics: need T >= 1");

  SignalMetrics out;
  const double err_norm = (x_true - x_hat).norm();
  out.snr_db = err_norm == 0.0
                   ? std::numeric_limits<double>::infinity()
                   : 20.0 * std::log10(x_true.norm() / err_norm);

  double acc = 0.0;
  for (Eigen::Index t = 0; t < t_count; ++t) {
    const double denom = x_true.col(t).squaredNorm();
    if (denom == 0.0)
      throw metric_error("signal_metrics: true column " + std::to_string(t) +
                             " has zero norm; NMSE undefined",
                         static_cast<int>(t));
    acc += (x_true.col(t) - x_hat.col(t)).squaredNorm() / denom;
  }
  out.nmse = acc / static_cast<double>(t_count);
  return out;
}

}  // namespace stgl
