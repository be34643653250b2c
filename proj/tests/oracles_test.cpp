// Sanity checks for the brute-force reference implementations plus the
// dense-materialization invariants they exist to verify.

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "stgl/graph_ops.hpp"
#include "stgl/rng.hpp"
#include "stgl/solver.hpp"
#include "test_util.hpp"

TEST(DenseQuadratic, MatchesSubproblemObjective) {
  stgl::Rng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform() * 4);
    const int t = 1 + static_cast<int>(rng.uniform() * 6);
    const stgl::EdgeWeights ew = testutil::random_weights(n, rng, 0.3);
    const Eigen::MatrixXd mask = testutil::random_mask(n, t, 0.6, rng);
    const Eigen::MatrixXd y =
        mask.cwiseProduct(testutil::random_matrix(n, t, rng));
    const double alpha = 0.3;
    const auto dq = oracle::materialize_quadratic(ew.w, mask, y, alpha);
    for (int probe = 0; probe < 5; ++probe) {
      const Eigen::MatrixXd x = testutil::random_matrix(n, t, rng);
      const double via_quadratic = oracle::quadratic_value(dq, x);
      const double direct = oracle::x_objective(x, ew.w, y, mask, alpha);
      EXPECT_NEAR(via_quadratic, direct, 1e-9 * (1.0 + std::abs(direct)));
    }
  }
}

TEST(DenseQuadratic, AlphaZeroIsMaskDiagonal) {
  stgl::Rng rng(47);
  const Eigen::MatrixXd mask = testutil::random_mask(3, 4, 0.5, rng);
  const Eigen::MatrixXd y = mask.cwiseProduct(testutil::random_matrix(3, 4, rng));
  const auto dq = oracle::materialize_quadratic(Eigen::VectorXd::Ones(3), mask,
                                                y, 0.0);
  EXPECT_TRUE(dq.Q.isApprox(
      Eigen::MatrixXd(oracle::vec(mask).asDiagonal()), 1e-14));
}

TEST(DenseQuadratic, FullMaskNoGraphIsIdentity) {
  const Eigen::MatrixXd mask = Eigen::MatrixXd::Ones(3, 4);
  const auto dq = oracle::materialize_quadratic(Eigen::VectorXd::Zero(3), mask,
                                                mask, 0.7);
  EXPECT_TRUE(dq.Q.isApprox(Eigen::MatrixXd::Identity(12, 12), 1e-14));
}

TEST(DenseQuadratic, RejectsOversizedInstances) {
  const Eigen::MatrixXd mask = Eigen::MatrixXd::Ones(65, 64);
  EXPECT_THROW(
      oracle::materialize_quadratic(Eigen::VectorXd::Zero(stgl::edge_count(65)),
                                    mask, mask, 0.1),
      std::invalid_argument);
}

TEST(FdGradient, SquaredNormGradient) {
  Eigen::MatrixXd x(1, 1);
  x << 1.0;
  const auto grad = oracle::fd_gradient(
      [](const Eigen::MatrixXd& m) { return m.squaredNorm(); }, x, 1e-5);
  EXPECT_NEAR(grad(0, 0), 2.0, 1e-8);
}

TEST(FdGradient, ConstantFunctionIsZero) {
  stgl::Rng rng(53);
  const Eigen::MatrixXd x = testutil::random_matrix(3, 4, rng);
  const auto grad = oracle::fd_gradient(
      [](const Eigen::MatrixXd&) { return 4.2; }, x, 1e-5);
  EXPECT_LT(grad.cwiseAbs().maxCoeff(), 1e-8);
}

TEST(GoldenMin, Parabola) {
  const double argmin = oracle::golden_min(
      [](double v) { return (v - 2.0) * (v - 2.0); }, 0.0, 5.0, 1e-10);
  EXPECT_NEAR(argmin, 2.0, 1e-8);
}

TEST(GoldenMin, HyperbolaCore) {
  // x + 1/x is minimized at 1, the core of the h(x) = x + 1/x - 2 bound
  const double argmin = oracle::golden_min(
      [](double v) { return v + 1.0 / v; }, 0.1, 10.0, 1e-10);
  EXPECT_NEAR(argmin, 1.0, 1e-8);
}

TEST(GoldenMin, ScalarWeightSurrogate) {
  // r v + tau q w0^2 (v/w0 + (w0 + 1/tau)/v - 2) with (r,q,tau,w0)=(4,1,1,1)
  const double r = 4.0, q = 1.0, tau = 1.0, w0 = 1.0;
  const auto surrogate = [&](double v) {
    return r * v + tau * q * w0 * w0 * (v / w0 + (w0 + 1.0 / tau) / v - 2.0);
  };
  const double argmin = oracle::golden_min(surrogate, 1e-6, 5.0, 1e-10);
  EXPECT_NEAR(argmin, std::sqrt(2.0 / 5.0), 1e-6);
}

TEST(DenseOperators, ShiftedDifferenceNormAtMostTwo) {
  // || I - D^T ox I ||_2 <= 2 across the oracle-scale grid
  for (int n = 1; n <= 4; ++n) {
    for (int t = 1; t <= 6; ++t) {
      const Eigen::MatrixXd h =
          Eigen::MatrixXd::Identity(n * t, n * t) -
          oracle::kron(oracle::dense_shift(t).transpose(),
                       Eigen::MatrixXd::Identity(n, n));
      EXPECT_LE(oracle::spectral_norm(h), 2.0 + 1e-12)
          << "n=" << n << " t=" << t;
    }
  }
}

TEST(DenseOperators, QuadraticNormBound) {
  // ||Q||_2 <= 1 + 4 alpha ||L(w)||_2
  stgl::Rng rng(59);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform() * 4);
    const int t = 1 + static_cast<int>(rng.uniform() * 6);
    const stgl::EdgeWeights ew = testutil::random_weights(n, rng, 0.3);
    const Eigen::MatrixXd mask = testutil::random_mask(n, t, 0.5, rng);
    const double alpha = 0.1 + rng.uniform();
    const auto dq = oracle::materialize_quadratic(
        ew.w, mask, Eigen::MatrixXd::Zero(n, t), alpha);
    const double lap_norm = oracle::spectral_norm(oracle::dense_laplacian(ew.w, n));
    EXPECT_LE(oracle::spectral_norm(dq.Q),
              1.0 + 4.0 * alpha * lap_norm + 1e-9);
  }
}
