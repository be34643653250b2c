#include "stgl/metrics.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "stgl/graph_ops.hpp"
#include "stgl/rng.hpp"
#include "test_util.hpp"

using stgl::EdgeWeights;

TEST(RescaleTrace, HitsN) {
  stgl::Rng rng(3);
  const EdgeWeights ew = testutil::random_weights(6, rng);
  const Eigen::MatrixXd scaled = stgl::rescale_trace_to_n(stgl::laplacian(ew));
  EXPECT_NEAR(scaled.trace(), 6.0, 1e-12);
  EXPECT_THROW(stgl::rescale_trace_to_n(Eigen::MatrixXd::Zero(4, 4)),
               std::invalid_argument);
}

TEST(GraphMetrics, ExactEstimate) {
  stgl::Rng rng(5);
  const Eigen::MatrixXd lap =
      stgl::rescale_trace_to_n(stgl::laplacian(testutil::random_weights(6, rng)));
  const auto gm = stgl::graph_metrics(lap, lap, 1e-4);
  EXPECT_DOUBLE_EQ(gm.rel_err, 0.0);
  EXPECT_DOUBLE_EQ(gm.f_score, 1.0);
  EXPECT_EQ(gm.fp, 0);
  EXPECT_EQ(gm.fn, 0);
}

TEST(GraphMetrics, EmptyEstimateScoresZero) {
  stgl::Rng rng(7);
  const EdgeWeights ew = testutil::random_weights(5, rng);
  const Eigen::MatrixXd truth = stgl::laplacian(ew);
  const auto gm =
      stgl::graph_metrics(truth, Eigen::MatrixXd::Zero(5, 5), 1e-4);
  EXPECT_EQ(gm.tp, 0);
  EXPECT_EQ(gm.fn, stgl::edge_count(5));
  EXPECT_DOUBLE_EQ(gm.f_score, 0.0);
  EXPECT_DOUBLE_EQ(gm.rel_err, 1.0);
}

TEST(GraphMetrics, HandEnumeratedCounts) {
  // planted 5-vertex graph; estimate misses one edge and adds one spurious
  EdgeWeights truth{5, Eigen::VectorXd::Zero(10)};
  truth.w[stgl::edge_index(2, 1, 5) - 1] = 1.0;
  truth.w[stgl::edge_index(3, 2, 5) - 1] = 1.0;
  truth.w[stgl::edge_index(5, 4, 5) - 1] = 1.0;
  truth.w[stgl::edge_index(4, 1, 5) - 1] = 1.0;

  EdgeWeights est = truth;
  est.w[stgl::edge_index(5, 4, 5) - 1] = 0.0;  // missed
  est.w[stgl::edge_index(5, 3, 5) - 1] = 1.0;  // spurious

  const auto gm = stgl::graph_metrics(stgl::laplacian(truth),
                                      stgl::laplacian(est), 1e-4);
  EXPECT_EQ(gm.tp, 3);
  EXPECT_EQ(gm.fp, 1);
  EXPECT_EQ(gm.fn, 1);
  EXPECT_DOUBLE_EQ(gm.f_score, 2.0 * 3 / (2.0 * 3 + 1 + 1));
}

TEST(GraphMetrics, VertexPermutationInvariance) {
  stgl::Rng rng(11);
  const Eigen::MatrixXd a = stgl::laplacian(testutil::random_weights(7, rng, 0.4));
  const Eigen::MatrixXd b = stgl::laplacian(testutil::random_weights(7, rng, 0.4));
  const auto before = stgl::graph_metrics(a, b, 1e-4);

  std::vector<int> perm{3, 0, 6, 1, 5, 2, 4};
  Eigen::PermutationMatrix<Eigen::Dynamic> p(7);
  for (int i = 0; i < 7; ++i) p.indices()[i] = perm[i];
  const Eigen::MatrixXd pa = p * a * p.transpose();
  const Eigen::MatrixXd pb = p * b * p.transpose();
  const auto after = stgl::graph_metrics(pa, pb, 1e-4);
  EXPECT_NEAR(before.rel_err, after.rel_err, 1e-14);
  EXPECT_EQ(before.tp, after.tp);
  EXPECT_EQ(before.fp, after.fp);
  EXPECT_EQ(before.fn, after.fn);
}

TEST(GraphMetrics, JointScalingWithThresholdKeepsCounts) {
  stgl::Rng rng(13);
  const Eigen::MatrixXd a = stgl::laplacian(testutil::random_weights(6, rng, 0.5));
  const Eigen::MatrixXd b = stgl::laplacian(testutil::random_weights(6, rng, 0.5));
  const double thr = 0.08;
  const auto base = stgl::graph_metrics(a, b, thr);
  for (double c : {0.3, 2.0, 17.0}) {
    const auto scaled = stgl::graph_metrics(c * a, c * b, c * thr);
    EXPECT_EQ(base.tp, scaled.tp);
    EXPECT_EQ(base.fp, scaled.fp);
    EXPECT_EQ(base.fn, scaled.fn);
  }
}

TEST(SignalMetrics, ExactRecovery) {
  stgl::Rng rng(17);
  const Eigen::MatrixXd x = testutil::random_matrix(4, 6, rng);
  const auto sm = stgl::signal_metrics(x, x);
  EXPECT_TRUE(std::isinf(sm.snr_db));
  EXPECT_GT(sm.snr_db, 0);
  EXPECT_DOUBLE_EQ(sm.nmse, 0.0);
}

TEST(SignalMetrics, ZeroEstimate) {
  stgl::Rng rng(19);
  const Eigen::MatrixXd x = testutil::random_matrix(4, 6, rng);
  const auto sm = stgl::signal_metrics(x, Eigen::MatrixXd::Zero(4, 6));
  EXPECT_NEAR(sm.snr_db, 0.0, 1e-12);
  EXPECT_NEAR(sm.nmse, 1.0, 1e-12);
}

TEST(SignalMetrics, MatchesNaiveLoops) {
  stgl::Rng rng(23);
  const Eigen::MatrixXd x = testutil::random_matrix(5, 8, rng);
  const Eigen::MatrixXd xh = testutil::random_matrix(5, 8, rng);
  double num = 0, den = 0, acc = 0;
  for (int t = 0; t < 8; ++t) {
    double col_err = 0, col_ref = 0;
    for (int i = 0; i < 5; ++i) {
      const double d = x(i, t) - xh(i, t);
      col_err += d * d;
      col_ref += x(i, t) * x(i, t);
      num += x(i, t) * x(i, t);
      den += d * d;
    }
    acc += col_err / col_ref;
  }
  const auto sm = stgl::signal_metrics(x, xh);
  EXPECT_NEAR(sm.nmse, acc / 8.0, 1e-12);
  EXPECT_NEAR(sm.snr_db, 20.0 * std::log10(std::sqrt(num / den)), 1e-12);
}

TEST(SignalMetrics, ColumnPermutationInvariance) {
  stgl::Rng rng(29);
  const Eigen::MatrixXd x = testutil::random_matrix(4, 5, rng);
  const Eigen::MatrixXd xh = testutil::random_matrix(4, 5, rng);
  const auto base = stgl::signal_metrics(x, xh);
  Eigen::PermutationMatrix<Eigen::Dynamic> p(5);
  p.indices() << 4, 2, 0, 1, 3;
  const auto perm = stgl::signal_metrics(x * p, xh * p);
  EXPECT_NEAR(base.snr_db, perm.snr_db, 1e-12);
  EXPECT_NEAR(base.nmse, perm.nmse, 1e-12);
}

TEST(SignalMetrics, ZeroColumnNamesOffender) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Ones(3, 4);
  x.col(2).setZero();
  try {
    stgl::signal_metrics(x, Eigen::MatrixXd::Zero(3, 4));
    FAIL() << "expected metric_error";
  } catch (const stgl::metric_error& e) {
    EXPECT_EQ(e.column(), 2);
  }
}
