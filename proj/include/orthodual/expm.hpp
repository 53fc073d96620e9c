#pragma once

#include <Eigen/Dense>

#include "orthodual/sparse_operator.hpp"

namespace orthodual {

struct ExpmActionResult {
  Eigen::VectorXd value;
  int steps = 0;
  int max_terms = 0;
};

/// exp(t A) v by scaled Taylor steps: t ||A||_inf is split into steps of norm
/// at most 1 and each step's series is truncated once a term drops below
/// tol times the running sum (absolute tol for a zero sum).
ExpmActionResult expm_action(const SparseMatrix& A, const Eigen::VectorXd& v, double t, double tol = 1e-12);

/// Spaces up to this many states get a matrix-exponential reference.
inline constexpr std::size_t kExpmReferenceLimit = 5000;

}  // namespace orthodual
