#pragma once

// Laplacian operator algebra for undirected weighted graphs.
//
// A graph on n vertices is carried as the nonnegative weight vector w of
// length n(n-1)/2 over the lower-triangle pairs (i, j), i > j, in the
// canonical order
//
//   k = i - j + (j - 1)/2 * (2n - j)          (1-based i, j, k)
//
// i.e. column-major over the strict lower triangle. The linear operator
// L : w -> Laplacian matrix places -w_k at (i, j) and accumulates degrees on
// the diagonal; its adjoint L* satisfies <L(w), M> = <w, L*(M)> and sends a
// square matrix to the edge-indexed vector M_ii + M_jj - M_ij - M_ji.
//
// All functions are pure; values are safe to share across threads.

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <utility>

namespace stgl {

// Nonnegative edge weights of an undirected graph in canonical edge order.
struct EdgeWeights {
  int n = 0;          // vertex count, >= 2
  Eigen::VectorXd w;  // length n(n-1)/2
};

inline int edge_count(int n) { return n * (n - 1) / 2; }

// 1-based edge index of the pair (i, j), 1 <= j < i <= n.
inline int edge_index(int i, int j, int n) {
  if (n < 2) throw std::invalid_argument("edge_index: need n >= 2");
  if (j < 1 || i > n || i <= j)
    throw std::invalid_argument("edge_index: need 1 <= j < i <= n, got (i=" +
                                std::to_string(i) + ", j=" + std::to_string(j) +
                                ", n=" + std::to_string(n) + ")");
  return i - j + (j - 1) * (2 * n - j) / 2;
}

// Visits every edge slot in canonical order; fn(k, i, j) gets 0-based
// indices with i > j. Matches edge_index up to the 1-based shift.
template <typename Fn>
inline void for_each_edge(int n, Fn&& fn) {
  int k = 0;
  for (int j = 0; j < n - 1; ++j)
    for (int i = j + 1; i < n; ++i) fn(k++, i, j);
}

// Inverse of the canonical order: 0-based edge slot k -> 0-based (i, j), i > j.
inline std::pair<int, int> edge_vertices(int k, int n) {
  if (k < 0 || k >= edge_count(n))
    throw std::invalid_argument("edge_vertices: edge slot out of range");
  int j = 0;
  int block_end = n - 1;  // slots [0, block_end) belong to column 0
  while (k >= block_end) {
    ++j;
    block_end += n - 1 - j;
  }
  const int offset = block_end - (n - 1 - j);  // first slot of column j
  return {k - offset + j + 1, j};
}

inline void validate(const EdgeWeights& ew) {
  if (ew.n < 2) throw std::invalid_argument("EdgeWeights: need n >= 2");
  if (ew.w.size() != edge_count(ew.n))
    throw std::invalid_argument(
        "EdgeWeights: expected " + std::to_string(edge_count(ew.n)) +
        " weights for n = " + std::to_string(ew.n) + ", got " +
        std::to_string(ew.w.size()));
  for (Eigen::Index k = 0; k < ew.w.size(); ++k)
    if (!(ew.w[k] >= 0.0))
      throw std::invalid_argument("EdgeWeights: weight " + std::to_string(k) +
                                  " is negative or NaN");
}

// Weighted vertex degrees, i.e. the diagonal of L(w).
inline Eigen::VectorXd degrees(const EdgeWeights& ew) {
  Eigen::VectorXd deg = Eigen::VectorXd::Zero(ew.n);
  for_each_edge(ew.n, [&](int k, int i, int j) {
    deg[i] += ew.w[k];
    deg[j] += ew.w[k];
  });
  return deg;
}

// Dense Laplacian L(w).
inline Eigen::MatrixXd laplacian(const EdgeWeights& ew) {
  validate(ew);
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(ew.n, ew.n);
  for_each_edge(ew.n, [&](int k, int i, int j) {
    const double wk = ew.w[k];
    lap(i, j) -= wk;
    lap(j, i) -= wk;
    lap(i, i) += wk;
    lap(j, j) += wk;
  });
  return lap;
}

// Matrix-free action X -> L(w) * X; O(|E| * cols), no n x n matrix formed.
inline Eigen::MatrixXd laplacian_apply(const EdgeWeights& ew,
                                       const Eigen::MatrixXd& x) {
  if (x.rows() != ew.n)
    throw std::invalid_argument("laplacian_apply: row count must equal n");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(x.rows(), x.cols());
  for_each_edge(ew.n, [&](int k, int i, int j) {
    const double wk = ew.w[k];
    if (wk == 0.0) return;
    const Eigen::RowVectorXd diff = wk * (x.row(i) - x.row(j));
    out.row(i) += diff;
    out.row(j) -= diff;
  });
  return out;
}

// Adjoint operator L*: entry k for edge (i, j) is M_ii + M_jj - M_ij - M_ji.
inline Eigen::VectorXd laplacian_adjoint(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("laplacian_adjoint: matrix must be square");
  const int n = static_cast<int>(m.rows());
  if (n < 2) throw std::invalid_argument("laplacian_adjoint: need n >= 2");
  Eigen::VectorXd out(edge_count(n));
  for_each_edge(n, [&](int k, int i, int j) {
    out[k] = m(i, i) + m(j, j) - m(i, j) - m(j, i);
  });
  return out;
}

// Rank-one projector J = (1/n) * ones.
inline Eigen::MatrixXd j_matrix(int n) {
  if (n < 2) throw std::invalid_argument("j_matrix: need n >= 2");
  return Eigen::MatrixXd::Constant(n, n, 1.0 / n);
}

// H_off = I - ones; zero diagonal, -1 off-diagonal. Tr(L(w) H_off) = 2||w||_1.
inline Eigen::MatrixXd h_off(int n) {
  if (n < 2) throw std::invalid_argument("h_off: need n >= 2");
  return Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Ones(n, n);
}

}  // namespace stgl
