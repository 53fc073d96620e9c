#pragma once

#include <functional>
#include <string>
#include <vector>

#include "orthodual/sparse_operator.hpp"
#include "orthodual/statespace.hpp"

namespace orthodual {

enum class HLetterKind { P, Q, Z };

/// One generator of h_n. `species` is 1-based and ignored for Z.
struct HLetter {
  HLetterKind kind = HLetterKind::Z;
  int species = 0;
  friend bool operator==(const HLetter&, const HLetter&) = default;
};

/// coef * letters[0] letters[1] ... in U(h_n). The empty word is the unit.
struct HWord {
  double coef = 1.0;
  std::vector<HLetter> letters;
};

/// Element of U(h_n) kept as an unsimplified sum of words.
class HeisenbergOp {
 public:
  explicit HeisenbergOp(int n) : n_(n) {}

  static HeisenbergOp P(int n, int i);
  static HeisenbergOp Q(int n, int i);
  static HeisenbergOp Z(int n);
  static HeisenbergOp unit(int n);

  int n() const { return n_; }
  const std::vector<HWord>& terms() const { return terms_; }
  void add(HWord w);

  HeisenbergOp operator+(const HeisenbergOp& o) const;
  HeisenbergOp operator-(const HeisenbergOp& o) const;
  /// Concatenation of words.
  HeisenbergOp operator*(const HeisenbergOp& o) const;
  HeisenbergOp operator*(double s) const;

  /// P_i* = Q_i, Q_i* = P_i, Z* = Z, (AB)* = B* A*.
  HeisenbergOp star() const;
  /// P_i -> Z - P_i, Q_i -> Z - Q_i, Z -> Z, extended multiplicatively.
  HeisenbergOp theta() const;
  /// Largest number of P letters in any word.
  int raising_degree() const;

 private:
  int n_;
  std::vector<HWord> terms_;
};

/// rho_lambda(op) f evaluated at xi, with f defined on all of N_0^n.
/// rho(Q_i) f(xi) = xi_i f(xi - e_i), rho(P_i) f(xi) = lambda f(xi + e_i),
/// rho(Z) = lambda.
struct PointValue {
  double value = 0.0;
  double magnitude = 0.0;  // sum of |term| before cancellation
};
PointValue heisenberg_eval(const HeisenbergOp& op, const std::function<double(const SiteConfig&)>& f,
                           const SiteConfig& xi, double lambda);

/// Function on the window {0..M}^n, mixed radix with species 1 most significant.
struct WindowFunction {
  int n = 1;
  int M = 0;
  std::vector<double> values;

  static WindowFunction from(int n, int M, const std::function<double(const SiteConfig&)>& f);
  std::size_t index(const SiteConfig& xi) const;
  double at(const SiteConfig& xi) const { return values[index(xi)]; }
  bool inside(const SiteConfig& xi) const;
};

/// rho_lambda(op) f on the interior window {0..M - raising_degree}^n.
/// Throws WindowExhausted when no interior is left.
WindowFunction heisenberg_apply(const HeisenbergOp& op, const WindowFunction& f, double lambda);

struct HTensorTerm {
  double coef = 1.0;
  HWord left;
  HWord right;
};

/// Element of U(h_n) (x) U(h_n).
class HeisenbergTensor {
 public:
  explicit HeisenbergTensor(int n) : n_(n) {}
  int n() const { return n_; }
  const std::vector<HTensorTerm>& terms() const { return terms_; }
  /// Adds a (x) b, expanded over the words of both legs.
  void add(double coef, const HeisenbergOp& a, const HeisenbergOp& b);
  HeisenbergTensor theta() const;

 private:
  int n_;
  std::vector<HTensorTerm> terms_;
};

/// Y = sum_i (1 (x) Q_i - Q_i (x) 1)(P_i (x) 1 - 1 (x) P_i), expanded into four words.
HeisenbergTensor irw_Y(int n);

/// (rho (x) rho)(T) on an IRW sector with the left leg at edge.x. Each row is
/// obtained by applying the words to the delta functional of that state, with
/// states outside the sector tracked until the end.
struct SectorAction {
  SparseOperator op;
  double leakage = 0.0;  // max |coefficient| left on states outside the sector
};
SectorAction represent_on_sector(const HeisenbergTensor& t, const ConfigSpace& space, const Edge& edge,
                                 double lambda);

struct KernelIdentityReport {
  double lambda = 1.0;
  int n = 1;
  int M = 0;
  std::size_t points = 0;
  double max_residual = 0.0;  // relative to the largest term on either side
  double tolerance = 1e-9;
  bool pass = false;
};

/// Checks rho(X*) C(., eta)(xi) = rho(theta(X)) C(xi, .)(eta) for the
/// generators P_i, Q_i, Z and a set of degree-two words, xi, eta in {0..M}^n.
KernelIdentityReport check_charlier_kernel_identities(double lambda, int n, int M);

struct IrwCasimirReport {
  double lambda = 1.0;
  double residual_rho = 0.0;    // max |lambda^{-1} rho(x)rho(Y) - L_xy|
  double residual_theta = 0.0;  // same with rho o theta on both legs
  double leakage_rho = 0.0;
  double leakage_theta = 0.0;
  double tolerance = 1e-12;
  bool pass = false;
};

/// Compares both routes with the IRW edge generator on `space`.
IrwCasimirReport check_irw_casimir_generator(double lambda, const ConfigSpace& space, const Edge& edge);

}  // namespace orthodual
