#include "orthodual/expm.hpp"

#include <algorithm>
#include <cmath>

#include "orthodual/error.hpp"

namespace orthodual {

ExpmActionResult expm_action(const SparseMatrix& A, const Eigen::VectorXd& v, double t, double tol) {
  if (A.rows() != A.cols() || A.cols() != v.size()) throw Error(ErrorCode::DimensionMismatch, "expm_action sizes");
  if (!(t >= 0.0) || !(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "expm_action needs t >= 0 and tol > 0");
  double norm = 0.0;
  for (Eigen::Index r = 0; r < A.outerSize(); ++r) {
    double row = 0.0;
    for (SparseMatrix::InnerIterator it(A, r); it; ++it) row += std::abs(it.value());
    norm = std::max(norm, row);
  }
  ExpmActionResult res;
  res.value = v;
  if (t == 0.0 || norm == 0.0) return res;
  res.steps = static_cast<int>(std::ceil(t * norm));
  const double h = t / res.steps;
  Eigen::VectorXd term(v.size());
  constexpr int kTermCap = 200;
  for (int s = 0; s < res.steps; ++s) {
    term = res.value;
    Eigen::VectorXd sum = res.value;
    int k = 1;
    for (; k <= kTermCap; ++k) {
      term = (h / k) * (A * term);
      sum += term;
      const double tn = term.cwiseAbs().maxCoeff();
      const double sn = sum.cwiseAbs().maxCoeff();
      if (tn <= tol * std::max(sn, 1e-300) || (sn == 0.0 && tn <= tol)) break;
    }
    res.max_terms = std::max(res.max_terms, k);
    res.value = std::move(sum);
  }
  return res;
}

}  // namespace orthodual
