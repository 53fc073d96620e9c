#pragma once

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "orthodual/generators.hpp"
#include "orthodual/krawtchouk.hpp"
#include "orthodual/sparse_operator.hpp"
#include "orthodual/statespace.hpp"

namespace orthodual {

struct DualityProvenance {
  std::string kernel;      // "krawtchouk", "charlier", "cheap", ...
  std::string parameters;  // human-readable parameter echo
};

inline constexpr std::size_t kDenseDualityLimit = 5000;

/// D[row state, col state]. Held densely, or as a column provider when either
/// space exceeds the dense limit.
class DualityMatrix {
 public:
  /// out += scale * D[:, col]
  using ColumnFn = std::function<void(std::size_t col, double scale, Eigen::Ref<Eigen::VectorXd> out)>;

  static DualityMatrix dense(std::shared_ptr<const ConfigSpace> rows, std::shared_ptr<const ConfigSpace> cols,
                             Eigen::MatrixXd d, DualityProvenance prov);
  /// out = D[row, :]
  using RowFn = std::function<void(std::size_t row, Eigen::Ref<Eigen::VectorXd> out)>;

  static DualityMatrix lazy(std::shared_ptr<const ConfigSpace> rows, std::shared_ptr<const ConfigSpace> cols,
                            ColumnFn columns, RowFn rows_fn, DualityProvenance prov);

  std::size_t rows() const { return rows_->size(); }
  std::size_t cols() const { return cols_->size(); }
  const ConfigSpace& row_space() const { return *rows_; }
  const std::shared_ptr<const ConfigSpace>& row_space_ptr() const { return rows_; }
  const std::shared_ptr<const ConfigSpace>& col_space_ptr() const { return cols_; }
  const ConfigSpace& col_space() const { return *cols_; }
  const DualityProvenance& provenance() const { return prov_; }
  bool is_dense() const { return dense_.has_value(); }
  /// Throws InvalidArgument for a lazy matrix.
  const Eigen::MatrixXd& matrix() const;
  void column(std::size_t col, Eigen::Ref<Eigen::VectorXd> out) const;
  Eigen::VectorXd column(std::size_t col) const;
  void add_column(std::size_t col, double scale, Eigen::Ref<Eigen::VectorXd> out) const;
  double entry(std::size_t row, std::size_t col) const;
  void row(std::size_t row, Eigen::Ref<Eigen::VectorXd> out) const;

 private:
  std::shared_ptr<const ConfigSpace> rows_;
  std::shared_ptr<const ConfigSpace> cols_;
  std::optional<Eigen::MatrixXd> dense_;
  ColumnFn fn_;
  RowFn row_fn_;
  DualityProvenance prov_;
};

/// D[xi, eta] = prod_x K(xi^x, eta^x), single-site values from the
/// generating-function route.
DualityMatrix build_sep_duality(const ConfigSpace& space, const Kappa& kappa,
                                std::size_t dense_limit = kDenseDualityLimit);
/// Same product structure from an explicit single-site table.
DualityMatrix build_sep_duality_from_table(const ConfigSpace& space, const Eigen::MatrixXd& site_table,
                                           DualityProvenance prov, std::size_t dense_limit = kDenseDualityLimit);
/// D[xi, eta] = prod_x prod_i e^lambda C_{xi_i^x}(eta_i^x, lambda) between two sectors.
DualityMatrix build_irw_duality(const ConfigSpace& space_a, const ConfigSpace& space_b, double lambda,
                                std::size_t dense_limit = kDenseDualityLimit);
/// D[xi, eta] = delta(xi, eta) / w(xi).
DualityMatrix cheap_duality(const ConfigSpace& space, const StateWeight& weight);

struct DualityReport {
  std::string left_space;
  std::string right_space;
  DualityProvenance provenance;
  double residual = 0.0;   // max |L_left D - D L_right^T|
  double scale = 0.0;      // max(||L_left||_inf, ||L_right||_inf) * max |D|
  double tolerance = 1e-10;
  bool pass = false;       // residual <= tolerance * max(1, scale)
  std::optional<double> wall_seconds;
};

/// 1e-10, or 1e-8 once 2j >= 4.
double default_duality_tolerance(int two_j);

/// tolerance <= 0 selects default_duality_tolerance of the left space.
DualityReport duality_residual(const SparseOperator& left, const SparseOperator& right, const DualityMatrix& d,
                               double tolerance = 0.0, bool timed = false);

/// Adds `delta` to U(row, col) without revalidating and rebuilds the SEP
/// product duality on `graph`. Any invertible U still yields a duality, so
/// this residual stays at rounding level.
DualityReport perturbed_sep_residual(const Graph& graph, const Kappa& kappa, int two_j, int row, int col,
                                     double delta = 1e-3);
/// Adds `delta` to the single entry D[row, col] (configuration ranks) of the
/// SEP product duality on `graph`; the residual is expected to be large.
DualityReport perturbed_entry_residual(const Graph& graph, const Kappa& kappa, int two_j, std::size_t row,
                                       std::size_t col, double delta = 1e-3);

}  // namespace orthodual
