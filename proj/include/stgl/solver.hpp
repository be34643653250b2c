#pragma once

// Block successive upper-bound minimization for joint recovery of a
// time-varying graph signal and the weighted-graph Laplacian behind it.
//
// Given observations Y = M .* X* the solver alternates two closed-form
// majorize-minimize steps on f(X, w) (see objective.hpp):
//
//   X-step: one curvature-bounded gradient step
//       X <- X - (1/(2 theta)) * df/dX,
//       df/dX = 2 (alpha L(w) diff(X) (I - D^T) + M.*X - Y),
//     valid for any theta > 1 + 4 alpha ||L(w)||_2; theta comes from the
//     Gershgorin bound 2*max-degree >= ||L||_2 times a slack factor, so no
//     eigensolve is needed per iteration.
//
//   w-step: the multiplicative rule
//       w <- w .* sqrt((tau w .* q + q) ./ (tau w .* q + r)),
//       q = L*((L(w) + J)^{-1}),
//       r = L*(K),  K = (alpha diff(X) diff(X)^T + gamma/2 H_off) / beta,
//     the exact minimizer of a strictly convex scalar-separable surrogate;
//     it preserves nonnegativity and never grows the support.
//
// Both steps majorize their block objective at the current iterate, so the
// joint cost is non-increasing along the iteration.

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stgl/errors.hpp"
#include "stgl/graph_ops.hpp"
#include "stgl/objective.hpp"
#include "stgl/temporal_ops.hpp"

namespace stgl {

struct SolverConfig {
  Hyperparams hp;
  double theta_slack = 1.01;  // multiplicative safety on the curvature bound, > 1
  double w_floor = 1e-8;      // minimum weight applied at initialization, >= 0
  double rel_tol = 1e-3;      // relative-change stopping threshold
  int max_iters = 1000;
  bool track_objective = true;
  double pd_floor = 1e-12;    // positive-definiteness floor for L(w) + J
};

inline void validate(const SolverConfig& cfg) {
  validate(cfg.hp);
  if (!(cfg.theta_slack > 1)) throw std::invalid_argument("SolverConfig: theta_slack must be > 1");
  if (!(cfg.w_floor >= 0)) throw std::invalid_argument("SolverConfig: w_floor must be >= 0");
  if (!(cfg.rel_tol > 0)) throw std::invalid_argument("SolverConfig: rel_tol must be > 0");
  if (cfg.max_iters < 1) throw std::invalid_argument("SolverConfig: max_iters must be >= 1");
}

// Benchmark defaults: beta and gamma scale with the number of time stamps.
inline Hyperparams default_hyperparams(int t_count) {
  return Hyperparams{0.02, 0.02 * t_count, 0.002 * t_count, 100.0};
}

enum class Termination { converged, max_iters };

inline const char* to_string(Termination t) {
  return t == Termination::converged ? "converged" : "max_iters";
}

struct SolverResult {
  Eigen::MatrixXd x_hat;
  EdgeWeights w_hat;
  Eigen::MatrixXd l_hat;
  std::vector<double> objective_trace;  // empty unless track_objective
  int iterations = 0;
  Termination termination = Termination::max_iters;
};

// Curvature bound for the X-step majorizer: theta_slack * (1 + 4 alpha B)
// where B = 2 * max-degree >= ||L(w)||_2 by Gershgorin.
inline double theta_bound(const EdgeWeights& ew, double alpha,
                          double theta_slack) {
  const Eigen::VectorXd deg = degrees(ew);
  const double max_degree = deg.size() > 0 ? deg.maxCoeff() : 0.0;
  return theta_slack * (1.0 + 4.0 * alpha * 2.0 * max_degree);
}

// One majorize-minimize step on the X block. Requires theta above the
// curvature bound and Y supported on the mask (Y = M .* Y).
inline Eigen::MatrixXd x_update(const Eigen::MatrixXd& x, const EdgeWeights& ew,
                                const Eigen::MatrixXd& y,
                                const Eigen::MatrixXd& mask, double alpha,
                                double theta) {
  // half-gradient: alpha L(w) diff(X)(I - D^T) + M.*X - Y
  Eigen::MatrixXd half_grad =
      alpha * temporal_diff_adjoint(laplacian_apply(ew, temporal_diff(x)));
  half_grad += mask.cwiseProduct(x) - y;
  return x - half_grad / theta;
}

namespace detail {

// Elementwise minimizer of the scalar surrogates
//   g(v) = r v + tau q w0^2 (v/w0 + (w0 + 1/tau)/v - 2),
// i.e. w0 * sqrt((tau w0 q + q) / (tau w0 q + r)). Zero weights are absorbing.
inline Eigen::VectorXd multiplicative_rule(const Eigen::VectorXd& w0,
                                           const Eigen::VectorXd& q,
                                           const Eigen::VectorXd& r,
                                           double tau) {
  Eigen::VectorXd out(w0.size());
  for (Eigen::Index k = 0; k < w0.size(); ++k) {
    if (w0[k] == 0.0) {
      out[k] = 0.0;
      continue;
    }
    const double damped = tau * w0[k] * q[k];
    out[k] = w0[k] * std::sqrt((damped + q[k]) / (damped + r[k]));
  }
  return out;
}

// (L(w) + J)^{-1} by dense symmetric factorization. If the factorization
// looks suspect the matrix is re-examined with an eigensolve, which either
// recovers the inverse or raises an error naming the offending eigenvalue.
inline Eigen::MatrixXd shifted_laplacian_inverse(const EdgeWeights& ew,
                                                 double pd_floor) {
  const Eigen::MatrixXd shifted = laplacian(ew) + j_matrix(ew.n);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(shifted);
  if (ldlt.info() == Eigen::Success && ldlt.isPositive() &&
      ldlt.vectorD().minCoeff() > pd_floor)
    return ldlt.solve(Eigen::MatrixXd::Identity(ew.n, ew.n));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(shifted);
  const double min_ev = eig.eigenvalues()[0];
  if (min_ev <= pd_floor)
    throw singular_model_error(
        "L(w) + J lost positive definiteness: min eigenvalue " +
            std::to_string(min_ev) + " <= pd_floor " + std::to_string(pd_floor),
        min_ev);
  return eig.eigenvectors() *
         eig.eigenvalues().cwiseInverse().asDiagonal() *
         eig.eigenvectors().transpose();
}

}  // namespace detail

// One majorize-minimize step on the w block.
inline EdgeWeights w_update(const EdgeWeights& ew, const Eigen::MatrixXd& x,
                            const Hyperparams& hp, double pd_floor = 1e-12) {
  validate(ew);
  const int n = ew.n;
  const Eigen::MatrixXd f_inv = detail::shifted_laplacian_inverse(ew, pd_floor);
  const Eigen::VectorXd q = laplacian_adjoint(f_inv);
  if (q.minCoeff() <= 0.0)
    throw internal_error(
        "w_update: adjoint of the inverse produced a non-positive entry (" +
        std::to_string(q.minCoeff()) + ")");

  const Eigen::MatrixXd diff = temporal_diff(x);
  const Eigen::MatrixXd penalty =
      (hp.alpha * (diff * diff.transpose()) + (hp.gamma / 2.0) * h_off(n)) /
      hp.beta;
  const Eigen::VectorXd r = laplacian_adjoint(penalty);

  return EdgeWeights{n, detail::multiplicative_rule(ew.w, q, r, hp.tau)};
}

// Starting point: X^(0) = Y and edge weights read off the pseudo-inverse of
// the empirical second moment S_Y = (1/T) Y Y^T. The candidate for edge
// (i, j) is max(0, -[S_Y^+]_ij), floored at w_floor; a floor > 0 keeps the
// multiplicative w-step from locking weights at exact zero. Degenerate Y
// (all candidates zero) lands on uniform w_floor weights.
//
// S_Y is centered with P = I - J before inversion. Edge weights are
// invariant to the all-ones direction (L*(1 1^T) = 0), but Bernoulli masking
// injects a small ridge there; left in, its inverse floods every
// off-diagonal positive at high sampling rates and the candidate set
// collapses to the floor.
inline std::pair<Eigen::MatrixXd, EdgeWeights> initialize(
    const Eigen::MatrixXd& y, const Eigen::MatrixXd& mask,
    const SolverConfig& cfg) {
  const int n = static_cast<int>(y.rows());
  const Eigen::Index t_count = y.cols();
  if (n < 2) throw std::invalid_argument("initialize: need n >= 2");
  if (!y.allFinite()) throw std::invalid_argument("initialize: Y must be finite");
  (void)mask;

  const Eigen::MatrixXd center =
      Eigen::MatrixXd::Identity(n, n) - j_matrix(n);
  const Eigen::MatrixXd second_moment =
      center *
      ((y * y.transpose()) /
       static_cast<double>(std::max<Eigen::Index>(t_count, 1))) *
      center;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(second_moment);
  const Eigen::VectorXd& ev = eig.eigenvalues();
  const double cutoff = 1e-10 * std::max(ev[n - 1], 0.0);
  Eigen::VectorXd inv_ev = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i)
    if (ev[i] > cutoff) inv_ev[i] = 1.0 / ev[i];
  const Eigen::MatrixXd pinv =
      eig.eigenvectors() * inv_ev.asDiagonal() * eig.eigenvectors().transpose();

  EdgeWeights ew{n, Eigen::VectorXd(edge_count(n))};
  for_each_edge(n, [&](int k, int i, int j) {
    ew.w[k] = std::max(std::max(0.0, -pinv(i, j)), cfg.w_floor);
  });
  return {y, ew};
}

// Full alternating iteration. Stops when
//   max(||dX||_F/(1+||X||_F), ||dw||_2/(1+||w||_2)) < rel_tol
// or at max_iters. The curvature bound is refreshed from the current w every
// outer iteration. Deterministic given (Y, M, cfg); distinct calls may run
// concurrently.
inline SolverResult solve(const Eigen::MatrixXd& y_in,
                          const Eigen::MatrixXd& mask,
                          const SolverConfig& cfg) {
  validate(cfg);
  if (y_in.rows() != mask.rows() || y_in.cols() != mask.cols())
    throw std::invalid_argument("solve: Y and M dimensions disagree");
  if (y_in.rows() < 2 || y_in.cols() < 1)
    throw std::invalid_argument("solve: need n >= 2 and T >= 1");
  bool any_observed = false;
  for (Eigen::Index idx = 0; idx < mask.size(); ++idx) {
    const double m = mask.reshaped()[idx];
    if (m != 0.0 && m != 1.0)
      throw std::invalid_argument("solve: mask must be binary");
    any_observed = any_observed || m == 1.0;
  }
  if (!any_observed)
    throw std::invalid_argument("solve: mask has no observed entries");

  // The observation model has Y supported on M; enforce it so the fidelity
  // gradient M.*X - Y is exact even for hand-made inputs.
  const Eigen::MatrixXd y = mask.cwiseProduct(y_in);

  auto [x, ew] = initialize(y, mask, cfg);

  SolverResult res;
  if (cfg.track_objective)
    res.objective_trace.push_back(
        evaluate_objective(x, ew, y, mask, cfg.hp, cfg.pd_floor).total);

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    const double theta = theta_bound(ew, cfg.hp.alpha, cfg.theta_slack);
    const Eigen::MatrixXd x_next =
        x_update(x, ew, y, mask, cfg.hp.alpha, theta);
    const double rel_dx =
        (x_next - x).norm() / (1.0 + x.norm());

    EdgeWeights ew_next;
    try {
      ew_next = w_update(ew, x_next, cfg.hp, cfg.pd_floor);
    } catch (const singular_model_error& e) {
      throw singular_model_error(std::string(e.what()) + " (iteration " +
                                     std::to_string(iter) + ")",
                                 e.eigenvalue(), iter);
    }
    const double rel_dw =
        (ew_next.w - ew.w).norm() / (1.0 + ew.w.norm());

    x = std::move(x_next);
    ew = std::move(ew_next);
    res.iterations = iter;

    if (cfg.track_objective)
      res.objective_trace.push_back(
          evaluate_objective(x, ew, y, mask, cfg.hp, cfg.pd_floor).total);

    if (std::max(rel_dx, rel_dw) < cfg.rel_tol) {
      res.termination = Termination::converged;
      break;
    }
    res.termination = Termination::max_iters;
  }

  res.l_hat = laplacian(ew);
  res.x_hat = std::move(x);
  res.w_hat = std::move(ew);
  return res;
}

}  // namespace stgl
