#pragma once

// First-order temporal differencing of an n x T signal matrix (rows are
// vertices, columns are time stamps).
//
// With the shift matrix D (ones on the first superdiagonal) and the
// convention x_0 = 0, the difference operator is
//
//   diff(X) = X - X D = [x_1, x_2 - x_1, ..., x_T - x_{T-1}],
//
// and the gradient of smoothness terms needs the companion map
// Z -> Z (I - D^T). Both are computed column-free of any T x T product;
// shift_matrix exists for validation code only.

#include <Eigen/Dense>
#include <stdexcept>

namespace stgl {

// D with D(t, t+1) = 1 and zeros elsewhere.
inline Eigen::MatrixXd shift_matrix(int t_count) {
  if (t_count < 1) throw std::invalid_argument("shift_matrix: need T >= 1");
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(t_count, t_count);
  for (int t = 0; t + 1 < t_count; ++t) d(t, t + 1) = 1.0;
  return d;
}

// Column t of the result is x_t - x_{t-1}; the first column is x_1 itself.
inline Eigen::MatrixXd temporal_diff(const Eigen::MatrixXd& x) {
  const Eigen::Index t_count = x.cols();
  Eigen::MatrixXd out(x.rows(), t_count);
  if (t_count == 0) return out;
  out.col(0) = x.col(0);
  if (t_count > 1)
    out.rightCols(t_count - 1) =
        x.rightCols(t_count - 1) - x.leftCols(t_count - 1);
  return out;
}

// Z -> Z (I - D^T): column t becomes z_t - z_{t+1}, last column stays z_T.
inline Eigen::MatrixXd temporal_diff_adjoint(const Eigen::MatrixXd& z) {
  const Eigen::Index t_count = z.cols();
  Eigen::MatrixXd out(z.rows(), t_count);
  if (t_count == 0) return out;
  out.col(t_count - 1) = z.col(t_count - 1);
  if (t_count > 1)
    out.leftCols(t_count - 1) =
        z.leftCols(t_count - 1) - z.rightCols(t_count - 1);
  return out;
}

}  // namespace stgl
