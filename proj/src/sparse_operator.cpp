#include "orthodual/sparse_operator.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include "orthodual/error.hpp"

namespace orthodual {

SparseOperator::SparseOperator(std::shared_ptr<const ConfigSpace> rows, std::shared_ptr<const ConfigSpace> cols,
                               SparseMatrix m, std::string label)
    : rows_(std::move(rows)), cols_(std::move(cols)), m_(std::move(m)), label_(std::move(label)) {
  if (!cols_) cols_ = rows_;
  if (static_cast<std::size_t>(m_.rows()) != rows_->size() || static_cast<std::size_t>(m_.cols()) != cols_->size()) {
    throw Error(ErrorCode::DimensionMismatch, "operator shape does not match its spaces");
  }
  m_.makeCompressed();
}

namespace {
std::shared_ptr<const ConfigSpace> share(const ConfigSpace& space) { return std::make_shared<const ConfigSpace>(space); }
}  // namespace

SparseOperator::SparseOperator(const ConfigSpace& space, SparseMatrix m, std::string label)
    : SparseOperator(share(space), nullptr, std::move(m), std::move(label)) {}

double SparseOperator::max_abs_row_sum() const {
  double worst = 0.0;
  for (Eigen::Index r = 0; r < m_.outerSize(); ++r) {
    double s = 0.0;
    for (SparseMatrix::InnerIterator it(m_, r); it; ++it) s += it.value();
    worst = std::max(worst, std::abs(s));
  }
  return worst;
}

double SparseOperator::min_off_diagonal() const {
  double lo = std::numeric_limits<double>::infinity();
  for (Eigen::Index r = 0; r < m_.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(m_, r); it; ++it) {
      if (it.col() != r) lo = std::min(lo, it.value());
    }
  }
  return std::isinf(lo) ? 0.0 : lo;
}

double SparseOperator::inf_norm() const {
  double worst = 0.0;
  for (Eigen::Index r = 0; r < m_.outerSize(); ++r) {
    double s = 0.0;
    for (SparseMatrix::InnerIterator it(m_, r); it; ++it) s += std::abs(it.value());
    worst = std::max(worst, s);
  }
  return worst;
}

void write_triplets(std::ostream& out, const SparseOperator& op) {
  const auto& m = op.matrix();
  out << "# orthodual-operator " << op.label() << '\n';
  out << "# rows: " << op.row_space().describe() << '\n';
  out << "# cols: " << op.col_space().describe() << '\n';
  out << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) out << r << ' ' << it.col() << ' ' << it.value() << '\n';
  }
}

}  // namespace orthodual
