#pragma once

// Exact Gaussian elimination over an arbitrary field scalar. Pivot rule:
// columns are scanned left to right; within a column the pivot is the
// lowest-index remaining row holding a nonzero entry. No magnitude-based
// pivoting, so the result depends only on the input matrix.

#include "linf/rational.hpp"

#include <optional>
#include <vector>

namespace linf {

template <typename Scalar>
struct RowEchelon {
  Mat<Scalar> reduced;                // reduced row echelon form
  std::vector<Eigen::Index> pivots;   // pivot column of each nonzero row
};

template <typename Derived>
RowEchelon<typename Derived::Scalar> row_echelon(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  RowEchelon<Scalar> out;
  out.reduced = input;
  auto& a = out.reduced;
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = row; r < rows; ++r) {
      if (a(r, col) != Scalar(0)) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != row) a.row(pivot).swap(a.row(row));
    const Scalar inv = Scalar(1) / a(row, col);
    for (Eigen::Index c = col; c < cols; ++c) {
      if (a(row, c) != Scalar(0)) a(row, c) *= inv;
    }
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (r == row || a(r, col) == Scalar(0)) continue;
      const Scalar factor = a(r, col);
      for (Eigen::Index c = col; c < cols; ++c) {
        if (a(row, c) != Scalar(0)) a(r, c) -= factor * a(row, c);
      }
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& a) {
  return static_cast<Eigen::Index>(row_echelon(a).pivots.size());
}

// Columns span the kernel; one basis vector per free column, in column order.
template <typename Derived>
Mat<typename Derived::Scalar> nullspace(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  const auto ech = row_echelon(a);
  const Eigen::Index cols = a.cols();
  std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
  for (auto p : ech.pivots) is_pivot[static_cast<size_t>(p)] = true;
  Mat<Scalar> basis = Mat<Scalar>::Zero(cols, cols - static_cast<Eigen::Index>(ech.pivots.size()));
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < cols; ++free) {
    if (is_pivot[static_cast<size_t>(free)]) continue;
    basis(free, k) = Scalar(1);
    for (size_t r = 0; r < ech.pivots.size(); ++r) {
      basis(ech.pivots[r], k) = -ech.reduced(static_cast<Eigen::Index>(r), free);
    }
    ++k;
  }
  return basis;
}

// Particular solution of a x = b with every free variable set to zero, or
// nullopt when the system is inconsistent.
template <typename DerivedA, typename DerivedB>
std::optional<Vec<typename DerivedA::Scalar>> solve(const Eigen::MatrixBase<DerivedA>& a,
                                                    const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Mat<Scalar> aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  const auto ech = row_echelon(aug);
  Vec<Scalar> x = Vec<Scalar>::Zero(a.cols());
  for (size_t r = 0; r < ech.pivots.size(); ++r) {
    const auto col = ech.pivots[r];
    if (col == a.cols()) return std::nullopt;
    x(col) = ech.reduced(static_cast<Eigen::Index>(r), a.cols());
  }
  return x;
}

template <typename Derived>
std::optional<Mat<typename Derived::Scalar>> inverse(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() != a.cols()) return std::nullopt;
  const Eigen::Index n = a.rows();
  Mat<Scalar> aug(n, 2 * n);
  aug.leftCols(n) = a;
  aug.rightCols(n) = Mat<Scalar>::Identity(n, n);
  const auto ech = row_echelon(aug);
  if (static_cast<Eigen::Index>(ech.pivots.size()) < n || (n > 0 && ech.pivots[static_cast<size_t>(n - 1)] >= n)) {
    return std::nullopt;
  }
  return Mat<Scalar>(ech.reduced.rightCols(n));
}

template <typename Derived>
bool is_zero_matrix(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      if (a(r, c) != Scalar(0)) return false;
  return true;
}

}  // namespace linf
