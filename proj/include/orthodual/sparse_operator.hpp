#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <iosfwd>
#include <memory>
#include <string>

#include "orthodual/statespace.hpp"

namespace orthodual {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// A real sparse matrix between two configuration spaces. Acts on functions:
/// (A f)(row) = sum_col A(row, col) f(col).
class SparseOperator {
 public:
  SparseOperator() = default;
  SparseOperator(std::shared_ptr<const ConfigSpace> rows, std::shared_ptr<const ConfigSpace> cols, SparseMatrix m,
                 std::string label);
  SparseOperator(const ConfigSpace& space, SparseMatrix m, std::string label);

  const SparseMatrix& matrix() const { return m_; }
  const ConfigSpace& row_space() const { return *rows_; }
  const ConfigSpace& col_space() const { return *cols_; }
  const std::shared_ptr<const ConfigSpace>& row_space_ptr() const { return rows_; }
  const std::string& label() const { return label_; }
  Eigen::Index rows() const { return m_.rows(); }
  Eigen::Index cols() const { return m_.cols(); }
  double coeff(Eigen::Index r, Eigen::Index c) const { return m_.coeff(r, c); }
  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(m_); }

  /// max_r |sum_c A(r,c)|
  double max_abs_row_sum() const;
  /// min over off-diagonal stored entries (0 when there are none)
  double min_off_diagonal() const;
  /// max_r sum_c |A(r,c)|
  double inf_norm() const;

 private:
  std::shared_ptr<const ConfigSpace> rows_;
  std::shared_ptr<const ConfigSpace> cols_;
  SparseMatrix m_;
  std::string label_;
};

/// Coordinate triplet text:
///   # orthodual-operator <label>
///   # rows: <space description>
///   # cols: <space description>
///   <rows> <cols> <nnz>
///   <row> <col> <value>      (0-based ranks, value with 17 significant digits)
void write_triplets(std::ostream& out, const SparseOperator& op);

}  // namespace orthodual
