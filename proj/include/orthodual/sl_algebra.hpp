#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "orthodual/krawtchouk.hpp"
#include "orthodual/sparse_operator.hpp"
#include "orthodual/statespace.hpp"

namespace orthodual {

/// Element of sl_{n+1} in its defining (n+1)x(n+1) matrix realization.
/// Representations extend linearly over the e_{kl}, with e_{kk} acting as
/// multiplication by xi_k; on trace-zero elements this agrees with
/// h_l -> xi_l - 2j/(n+1).
class SlElement {
 public:
  SlElement() = default;
  explicit SlElement(Eigen::MatrixXd m);

  static SlElement zero(int n);
  static SlElement e(int n, int k, int l);
  /// h_l = e_ll - I/(n+1), 1 <= l <= n.
  static SlElement h(int n, int l);
  /// h_l^star = e_ll - e_00, the trace-form dual of h_l.
  static SlElement h_dual(int n, int l);

  int n() const { return static_cast<int>(m_.rows()) - 1; }
  const Eigen::MatrixXd& matrix() const { return m_; }
  double trace() const { return m_.trace(); }

  /// e_kl* = e_lk, h_l* = h_l, extended antilinearly (real coefficients).
  SlElement star() const { return SlElement(m_.transpose()); }

  SlElement operator+(const SlElement& o) const { return SlElement(m_ + o.m_); }
  SlElement operator-(const SlElement& o) const { return SlElement(m_ - o.m_); }
  SlElement operator*(double s) const { return SlElement(m_ * s); }

 private:
  Eigen::MatrixXd m_;
};

SlElement bracket(const SlElement& a, const SlElement& b);

/// Spanning set {e_kl : k != l} followed by {h_l : 1 <= l <= n}.
std::vector<SlElement> sl_basis(int n);

/// a(X) = P_hat X^T P_hat^{-1}.
SlElement antiautomorphism(const SlElement& x, const Kappa& kappa);

/// Ad_R(X) = R^{-1} X R with R = P_hat U^T.
SlElement ad_R(const SlElement& x, const Kappa& kappa);

/// rho_p(X) on the delta basis of l^2(w_p) over Omega_{2j}:
/// rho_p(e_kl) f(xi) = sqrt(p_k/p_l) xi_l f(xi with xi_l - 1, xi_k + 1).
SparseOperator rho_p_matrix(const SlElement& x, const Eigen::VectorXd& p, int two_j);
/// The unweighted representation z_k d/dz_l (all p_k equal).
SparseOperator rho_matrix(const SlElement& x, int two_j);

/// sigma_p(X) computed twice: by composing matrices (the unweighted
/// representation of R^{-1} D X D^{-1} R, D = diag(sqrt p_hat)) and entry by
/// entry from sigma_p(e_im) f(eta) = sqrt(p_hat_i/p_hat_m) sum_{k,l} q_ki r_ml
/// eta_l f(eta_k + 1, eta_l - 1).
struct SigmaRoutes {
  SparseOperator composed;
  SparseOperator explicit_sum;
  double residual = 0.0;  // max entry difference
};
SigmaRoutes sigma_p_routes(const SlElement& x, const Kappa& kappa, int two_j);

/// The explicit-sum route; throws RouteDisagreement when the composed route
/// differs by more than 1e-12 relative to the largest entry.
SparseOperator sigma_p_matrix(const SlElement& x, const Kappa& kappa, int two_j);

/// max |W^{-1} A^T W - B| over entries, relative to max(1, max |B|): zero
/// when B is the l^2(w)-adjoint of A.
double adjoint_defect(const SparseOperator& a, const SparseOperator& b, const Eigen::VectorXd& w);

/// coef * first * second in U(sl_{n+1}).
struct ProductTerm {
  double coef = 1.0;
  Eigen::MatrixXd first;
  Eigen::MatrixXd second;
};

/// Degree-two element of U(sl_{n+1}), kept as an unsimplified sum of products.
class QuadraticElement {
 public:
  explicit QuadraticElement(int n) : n_(n) {}
  int n() const { return n_; }
  const std::vector<ProductTerm>& terms() const { return terms_; }
  void add(double coef, const SlElement& a, const SlElement& b);
  /// (AB)* = B* A*.
  QuadraticElement star() const;
  /// Coefficients on e_ab e_cd, flattened.
  std::vector<double> coefficients() const;
  /// Apply the automorphism X -> M^{-1} X M to both factors.
  QuadraticElement conjugated(const Eigen::MatrixXd& M, const Eigen::MatrixXd& M_inv) const;

 private:
  int n_;
  std::vector<ProductTerm> terms_;
};

struct TensorTerm {
  double coef = 1.0;
  Eigen::MatrixXd left;
  Eigen::MatrixXd right;
};

/// Element of U(sl_{n+1}) (x) U(sl_{n+1}) with both legs of degree one.
class TensorElement {
 public:
  explicit TensorElement(int n) : n_(n) {}
  int n() const { return n_; }
  const std::vector<TensorTerm>& terms() const { return terms_; }
  void add(double coef, const SlElement& a, const SlElement& b);
  /// (a (x) b)* = a* (x) b*.
  TensorElement star() const;
  /// Coefficients on e_ab (x) e_cd, flattened.
  std::vector<double> coefficients() const;
  TensorElement conjugated(const Eigen::MatrixXd& M, const Eigen::MatrixXd& M_inv) const;

 private:
  int n_;
  std::vector<TensorTerm> terms_;
};

double max_coefficient_difference(const std::vector<double>& a, const std::vector<double>& b);

/// Omega = sum_{k<l} (e_kl e_lk + e_lk e_kl) + sum_{l>0} h_l h_l^star.
QuadraticElement casimir_omega(int n);
/// Y = Delta(Omega) - Omega (x) 1 - 1 (x) Omega, derived from the products of Omega.
TensorElement casimir_Y(int n);
/// Y = 2 sum_{k != l} e_kl (x) e_lk + 2 sum_a H_a (x) H_a with H_a = e_aa - I/(n+1).
TensorElement casimir_Y_expanded(int n);

using SiteRepresentation = std::function<Eigen::MatrixXd(const SlElement&)>;

/// sum_t coef_t rep(left_t) at site x times rep(right_t) at site y, identity
/// elsewhere, on the SEP space `space`.
SparseOperator represent_on_edge(const TensorElement& y, const ConfigSpace& space, const Edge& edge,
                                 const SiteRepresentation& rep);

struct CasimirShiftReport {
  double c_rho = 0.0;
  double c_sigma = 0.0;
  double residual_rho = 0.0;    // max |(1/2 rho(Y) - L_xy) - c_rho I|
  double residual_sigma = 0.0;
  double c_closed_form = 0.0;   // (2j)^2 n / (n+1)
  double tolerance = 1e-10;
  bool pass = false;
};

/// Compares 1/2 rho_phat (x) rho_phat (Y_xy) and 1/2 sigma_p (x) sigma_p (Y_xy)
/// with the SEP edge generator L_xy on `graph`. Throws NonConstantShift when a
/// difference is not a multiple of the identity within tolerance.
CasimirShiftReport check_sep_casimir_shift(const Kappa& kappa, int two_j, const Graph& graph, const Edge& edge);
/// Same, returning the report without throwing.
CasimirShiftReport measure_sep_casimir_shift(const Kappa& kappa, int two_j, const Graph& graph, const Edge& edge);

/// Lambda : l^2(w_phat) -> l^2(w_p), Lambda[eta, xi] = p_0^{-j} w_phat(xi) K(xi, eta).
/// Throws UnitarityDefect when the defect exceeds 1e-10.
SparseOperator intertwiner_sep(const Kappa& kappa, int two_j);

/// max |W_phat^{-1/2} Lambda^T W_p Lambda W_phat^{-1/2} - I|.
double unitarity_defect(const SparseOperator& lambda, const Kappa& kappa, int two_j);
/// max |Lambda rho_phat(X) - sigma_p(X) Lambda|, relative to max(1, max |Lambda rho_phat(X)|).
double intertwining_residual(const SparseOperator& lambda, const SlElement& x, const Kappa& kappa, int two_j);
/// max |[rho_phat(X*) K(., eta)](xi) - [sigma_p(X) K(xi, .)](eta)|, relative as above.
double kernel_relation_residual(const SlElement& x, const Kappa& kappa, int two_j);

}  // namespace orthodual
