#pragma once

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orthodual/rational.hpp"
#include "orthodual/statespace.hpp"

namespace orthodual {

/// Rational members of a K_n 4-tuple. U is row-major (n+1)x(n+1).
struct ExactKappa {
  int n = 0;
  Rational nu;
  std::vector<Rational> p;
  std::vector<Rational> p_hat;
  std::vector<Rational> U;

  const Rational& u(int k, int l) const { return U[static_cast<std::size_t>(k * (n + 1) + l)]; }
  Rational& u(int k, int l) { return U[static_cast<std::size_t>(k * (n + 1) + l)]; }
};

/// A validated real member (nu, P, P_hat, U) of K_n. Carries its rational
/// form when it was built from rational input.
class Kappa {
 public:
  int n() const { return static_cast<int>(p_.size()) - 1; }
  double nu() const { return nu_; }
  const Eigen::VectorXd& p() const { return p_; }
  const Eigen::VectorXd& p_hat() const { return p_hat_; }
  const Eigen::MatrixXd& U() const { return U_; }
  const std::optional<ExactKappa>& exact() const { return exact_; }

  /// max |nu P U P_hat U^T - I| entry.
  double gram_residual() const;

 private:
  friend Kappa validate_kappa(double, Eigen::VectorXd, Eigen::VectorXd, Eigen::MatrixXd, double);
  friend Kappa validate_kappa(const ExactKappa&);
  double nu_ = 0.0;
  Eigen::VectorXd p_;
  Eigen::VectorXd p_hat_;
  Eigen::MatrixXd U_;
  std::optional<ExactKappa> exact_;
};

inline constexpr double kKappaTolerance = 1e-12;

Kappa validate_kappa(double nu, Eigen::VectorXd p, Eigen::VectorXd p_hat, Eigen::MatrixXd U,
                     double tol = kKappaTolerance);
/// Exact validation: every condition must hold with equality.
Kappa validate_kappa(const ExactKappa& kappa);

/// Gram-Schmidt construction from a strictly positive probability vector.
Kappa kappa_from_p(const Eigen::VectorXd& p);
Kappa kappa_from_p(const std::vector<Rational>& p);
/// Exact construction when every entry parsed as a rational.
Kappa kappa_from_p(const std::vector<ParsedScalar>& p);

/// (nu, P_hat, P, U^T): the member with the roles of p and p_hat exchanged.
Kappa swapped_kappa(const Kappa& kappa);

/// R = P_hat U^T (theta_hat = 1) and its inverse Q = P U / p_0.
struct RMatrix {
  Eigen::MatrixXd R;
  Eigen::MatrixXd Q;
  double inverse_residual = 0.0;  // max |R Q - I|
};
RMatrix r_matrix(const Kappa& kappa);

/// Multinomial probability w_p(xi) on Omega_{2j}.
double multinomial_weight(std::span<const int> xi, std::span<const double> p, int two_j);
double multinomial_weight(std::span<const int> xi, const Eigen::VectorXd& p, int two_j);
/// w_p at every site state, indexed by single-site rank.
Eigen::VectorXd multinomial_weights(const Eigen::VectorXd& p, int two_j);

/// K(xi, eta) by coefficient extraction from prod_k (1 + sum_l u_kl z_l)^{eta_k}.
double krawtchouk_gf(std::span<const int> xi, std::span<const int> eta, const Kappa& kappa, int two_j);
/// K(xi, eta) through the bilinear form <z^xi, zhat^eta>, zhat = zR, with the
/// overall scalar fixed by K((2j,0..0),(2j,0..0)) = 1.
double krawtchouk_bilinear(std::span<const int> xi, std::span<const int> eta, const Kappa& kappa, int two_j);

/// Full table K[rank(xi), rank(eta)] over Omega_{2j}. The generating-function
/// table is computed in rational arithmetic when the kappa is exact-backed and
/// 2j <= 8.
Eigen::MatrixXd krawtchouk_table(const Kappa& kappa, int two_j);
/// Generating-function table for an arbitrary (unvalidated) matrix U.
Eigen::MatrixXd krawtchouk_table_raw(const Eigen::MatrixXd& U, int two_j);
Eigen::MatrixXd krawtchouk_table_bilinear(const Kappa& kappa, int two_j);
std::vector<Rational> krawtchouk_table_exact(const ExactKappa& kappa, int two_j);  // row-major

inline constexpr int kExactDegreeLimit = 8;

struct OrthogonalityReport {
  int n = 0;
  int two_j = 0;
  bool exact = false;
  /// sum_xi K(xi,eta) K(xi,zeta) w_phat(xi) against p_0^{2j} delta / w_p(eta)
  double residual_phat = 0.0;
  /// sum_xi K(eta,xi) K(zeta,xi) w_p(xi) against p_0^{2j} delta / w_phat(eta)
  double residual_p = 0.0;
  /// Same deviations normalized by sqrt(target(eta,eta) target(zeta,zeta)).
  double normalized_residual_phat = 0.0;
  double normalized_residual_p = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Both orthogonality relations over Omega_{2j} x Omega_{2j}. The pass flag
/// uses the normalized deviations against 1e-12 (exact) or 1e-10 (floating).
OrthogonalityReport orthogonality_sums(const Kappa& kappa, int two_j);

/// Informational: max |K(xi,eta; kappa) - K(eta,xi; swapped kappa)|.
double swap_symmetry_defect(const Kappa& kappa, int two_j);

}  // namespace orthodual
