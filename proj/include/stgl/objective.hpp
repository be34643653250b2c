#pragma once

// Joint cost of the signal/graph estimation problem:
//
//   f(X, w) = ||Y - M.*X||_F^2
//           + alpha * Tr(L(w) diff(X) diff(X)^T)
//           - beta  * log det(L(w) + J)
//           + gamma * ||w||_1
//
// over X in R^{n x T} and w >= 0. Used for descent monitoring and tests; the
// solver itself never needs f, only its block surrogates.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <stdexcept>
#include <string>

#include "stgl/errors.hpp"
#include "stgl/graph_ops.hpp"
#include "stgl/temporal_ops.hpp"

namespace stgl {

struct Hyperparams {
  double alpha = 0.02;  // smoothness weight, > 0
  double beta = 1.0;    // log-det weight, > 0
  double gamma = 0.0;   // sparsity weight, >= 0
  double tau = 100.0;   // w-majorizer curvature constant, > 0
};

inline void validate(const Hyperparams& hp) {
  if (!(hp.alpha > 0)) throw std::invalid_argument("Hyperparams: alpha must be > 0");
  if (!(hp.beta > 0)) throw std::invalid_argument("Hyperparams: beta must be > 0");
  if (!(hp.gamma >= 0)) throw std::invalid_argument("Hyperparams: gamma must be >= 0");
  if (!(hp.tau > 0)) throw std::invalid_argument("Hyperparams: tau must be > 0");
}

struct ObjectiveBreakdown {
  double fidelity = 0;     // ||Y - M.*X||_F^2
  double smoothness = 0;   // Tr(L(w) diff(X) diff(X)^T)
  double logdet_term = 0;  // log det(L(w) + J)
  double sparsity = 0;     // ||w||_1
  double total = 0;        // fidelity + alpha*smoothness - beta*logdet + gamma*sparsity
};

// Tr(L(w) diff(X) diff(X)^T) as the edge sum
// sum_k w_k ||row_i(diff) - row_j(diff)||^2, which never forms the n x n
// Gram matrix and is the cheaper of the two equivalent orderings.
inline double smoothness_term(const Eigen::MatrixXd& x, const EdgeWeights& ew) {
  if (x.rows() != ew.n)
    throw std::invalid_argument("smoothness_term: row count must equal n");
  const Eigen::MatrixXd diff = temporal_diff(x);
  double acc = 0.0;
  for_each_edge(ew.n, [&](int k, int i, int j) {
    if (ew.w[k] == 0.0) return;
    acc += ew.w[k] * (diff.row(i) - diff.row(j)).squaredNorm();
  });
  return acc;
}

// log det(L(w) + J) through a full symmetric eigendecomposition so the error
// path can name the offending eigenvalue when the model degenerates.
inline double log_det_shifted_laplacian(const EdgeWeights& ew,
                                        double pd_floor = 1e-12) {
  const Eigen::MatrixXd shifted = laplacian(ew) + j_matrix(ew.n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(shifted);
  if (eig.info() != Eigen::Success)
    throw internal_error("log_det_shifted_laplacian: eigensolver failed");
  const Eigen::VectorXd& ev = eig.eigenvalues();
  if (ev[0] <= pd_floor)
    throw singular_model_error(
        "L(w) + J is not positive definite: min eigenvalue " +
            std::to_string(ev[0]) + " <= pd_floor " + std::to_string(pd_floor),
        ev[0]);
  return ev.array().log().sum();
}

inline ObjectiveBreakdown evaluate_objective(const Eigen::MatrixXd& x,
                                             const EdgeWeights& ew,
                                             const Eigen::MatrixXd& y,
                                             const Eigen::MatrixXd& mask,
                                             const Hyperparams& hp,
                                             double pd_floor = 1e-12) {
  if (x.rows() != y.rows() || x.cols() != y.cols() || x.rows() != mask.rows() ||
      x.cols() != mask.cols() || x.rows() != ew.n)
    throw std::invalid_argument("evaluate_objective: dimension mismatch");
  validate(hp);

  ObjectiveBreakdown out;
  out.fidelity = (y - mask.cwiseProduct(x)).squaredNorm();
  out.smoothness = smoothness_term(x, ew);
  out.logdet_term = log_det_shifted_laplacian(ew, pd_floor);
  out.sparsity = ew.w.sum();  // w >= 0
  out.total = out.fidelity + hp.alpha * out.smoothness -
              hp.beta * out.logdet_term + hp.gamma * out.sparsity;
  return out;
}

}  // namespace stgl
