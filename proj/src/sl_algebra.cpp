#include "orthodual/sl_algebra.hpp"

#include <algorithm>
#include <cmath>

#include "orthodual/error.hpp"
#include "orthodual/generators.hpp"

namespace orthodual {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Triplet = Eigen::Triplet<double>;

// Linear extension of e_kl -> (d_k/d_l) xi_l shift(l -> k), e_kk -> xi_k.
SparseOperator represent(const MatrixXd& x, const VectorXd& d, int two_j, const std::string& label) {
  const int n = static_cast<int>(x.rows()) - 1;
  const ConfigSpace site = single_site_sep(n, two_j);
  const CompositionIndexer& idx = site.local_indexer();
  std::vector<Triplet> trips;
  SiteConfig xi(static_cast<std::size_t>(n + 1));
  for (std::size_t r = 0; r < idx.size(); ++r) {
    idx.unrank(r, xi);
    for (int k = 0; k <= n; ++k) {
      for (int l = 0; l <= n; ++l) {
        const double a = x(k, l);
        if (a == 0.0 || xi[static_cast<std::size_t>(l)] == 0) continue;
        if (k == l) {
          trips.emplace_back(static_cast<int>(r), static_cast<int>(r), a * xi[static_cast<std::size_t>(l)]);
          continue;
        }
        const double v = a * d(k) / d(l) * xi[static_cast<std::size_t>(l)];
        --xi[static_cast<std::size_t>(l)];
        ++xi[static_cast<std::size_t>(k)];
        trips.emplace_back(static_cast<int>(r), static_cast<int>(idx.rank(xi)), v);
        ++xi[static_cast<std::size_t>(l)];
        --xi[static_cast<std::size_t>(k)];
      }
    }
  }
  const auto m = static_cast<Eigen::Index>(idx.size());
  SparseMatrix mat(m, m);
  mat.setFromTriplets(trips.begin(), trips.end());
  mat.prune(0.0);
  return SparseOperator(site, std::move(mat), label);
}

void require_size(const SlElement& x, Eigen::Index size) {
  if (x.matrix().rows() != size || x.matrix().cols() != size) {
    throw Error(ErrorCode::DimensionMismatch, "element size does not match n+1");
  }
}

double max_abs(const MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

std::vector<double> flatten_pairs(int n, const auto& terms, auto&& left, auto&& right) {
  const int m = n + 1;
  std::vector<double> out(static_cast<std::size_t>(m * m * m * m), 0.0);
  for (const auto& t : terms) {
    const MatrixXd& a = left(t);
    const MatrixXd& b = right(t);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        if (a(i, j) == 0.0) continue;
        for (int k = 0; k < m; ++k)
          for (int l = 0; l < m; ++l) out[static_cast<std::size_t>(((i * m + j) * m + k) * m + l)] += t.coef * a(i, j) * b(k, l);
      }
  }
  return out;
}

}  // namespace

SlElement::SlElement(MatrixXd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 2) throw Error(ErrorCode::DimensionMismatch, "sl element must be square, n >= 1");
}

SlElement SlElement::zero(int n) { return SlElement(MatrixXd::Zero(n + 1, n + 1)); }

SlElement SlElement::e(int n, int k, int l) {
  if (k < 0 || l < 0 || k > n || l > n) throw Error(ErrorCode::InvalidArgument, "e_kl index out of range");
  MatrixXd m = MatrixXd::Zero(n + 1, n + 1);
  m(k, l) = 1.0;
  return SlElement(std::move(m));
}

SlElement SlElement::h(int n, int l) {
  if (l < 1 || l > n) throw Error(ErrorCode::InvalidArgument, "h_l needs 1 <= l <= n");
  MatrixXd m = -MatrixXd::Identity(n + 1, n + 1) / (n + 1.0);
  m(l, l) += 1.0;
  return SlElement(std::move(m));
}

SlElement SlElement::h_dual(int n, int l) {
  if (l < 1 || l > n) throw Error(ErrorCode::InvalidArgument, "h_l needs 1 <= l <= n");
  MatrixXd m = MatrixXd::Zero(n + 1, n + 1);
  m(l, l) = 1.0;
  m(0, 0) = -1.0;
  return SlElement(std::move(m));
}

SlElement bracket(const SlElement& a, const SlElement& b) {
  return SlElement(a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

std::vector<SlElement> sl_basis(int n) {
  std::vector<SlElement> out;
  for (int k = 0; k <= n; ++k)
    for (int l = 0; l <= n; ++l)
      if (k != l) out.push_back(SlElement::e(n, k, l));
  for (int l = 1; l <= n; ++l) out.push_back(SlElement::h(n, l));
  return out;
}

SlElement antiautomorphism(const SlElement& x, const Kappa& kappa) {
  require_size(x, kappa.p().size());
  const VectorXd& ph = kappa.p_hat();
  return SlElement(ph.asDiagonal() * x.matrix().transpose() * ph.cwiseInverse().asDiagonal());
}

SlElement ad_R(const SlElement& x, const Kappa& kappa) {
  require_size(x, kappa.p().size());
  const RMatrix rq = r_matrix(kappa);
  return SlElement(rq.Q * x.matrix() * rq.R);
}

SparseOperator rho_p_matrix(const SlElement& x, const VectorXd& p, int two_j) {
  require_size(x, p.size());
  for (double v : p) {
    if (!(v > 0.0)) throw Error(ErrorCode::NotProbability, "rho_p needs a strictly positive p");
  }
  if (std::abs(p.sum() - 1.0) > 1e-12) throw Error(ErrorCode::NotProbability, "rho_p needs p summing to 1");
  return represent(x.matrix(), p.cwiseSqrt(), two_j, "rho_p");
}

SparseOperator rho_matrix(const SlElement& x, int two_j) {
  return represent(x.matrix(), VectorXd::Ones(x.matrix().rows()), two_j, "rho");
}

SigmaRoutes sigma_p_routes(const SlElement& x, const Kappa& kappa, int two_j) {
  const int n = kappa.n();
  require_size(x, n + 1);
  const RMatrix rq = r_matrix(kappa);
  const VectorXd d = kappa.p_hat().cwiseSqrt();
  const MatrixXd twisted = rq.Q * d.asDiagonal() * x.matrix() * d.cwiseInverse().asDiagonal() * rq.R;
  SparseOperator composed = represent(twisted, VectorXd::Ones(n + 1), two_j, "sigma_p");

  const ConfigSpace site = single_site_sep(n, two_j);
  const CompositionIndexer& idx = site.local_indexer();
  std::vector<Triplet> trips;
  SiteConfig eta(static_cast<std::size_t>(n + 1));
  for (std::size_t r = 0; r < idx.size(); ++r) {
    idx.unrank(r, eta);
    for (int i = 0; i <= n; ++i) {
      for (int m = 0; m <= n; ++m) {
        if (x.matrix()(i, m) == 0.0) continue;
        const double pref = x.matrix()(i, m) * std::sqrt(kappa.p_hat()(i) / kappa.p_hat()(m));
        for (int k = 0; k <= n; ++k) {
          for (int l = 0; l <= n; ++l) {
            const int el = eta[static_cast<std::size_t>(l)];
            if (el == 0) continue;
            const double v = pref * rq.Q(k, i) * rq.R(m, l) * el;
            --eta[static_cast<std::size_t>(l)];
            ++eta[static_cast<std::size_t>(k)];
            trips.emplace_back(static_cast<int>(r), static_cast<int>(idx.rank(eta)), v);
            ++eta[static_cast<std::size_t>(l)];
            --eta[static_cast<std::size_t>(k)];
          }
        }
      }
    }
  }
  const auto sz = static_cast<Eigen::Index>(idx.size());
  SparseMatrix mat(sz, sz);
  mat.setFromTriplets(trips.begin(), trips.end());
  SparseOperator explicit_sum(site, std::move(mat), "sigma_p");
  const double diff = max_abs(composed.dense() - explicit_sum.dense());
  return {std::move(composed), std::move(explicit_sum), diff};
}

SparseOperator sigma_p_matrix(const SlElement& x, const Kappa& kappa, int two_j) {
  SigmaRoutes routes = sigma_p_routes(x, kappa, two_j);
  const double scale = std::max(1.0, max_abs(routes.explicit_sum.dense()));
  if (routes.residual > 1e-12 * scale) {
    throw Error(ErrorCode::RouteDisagreement, "sigma_p routes differ by " + std::to_string(routes.residual));
  }
  return std::move(routes.explicit_sum);
}

double adjoint_defect(const SparseOperator& a, const SparseOperator& b, const VectorXd& w) {
  const MatrixXd adj = w.cwiseInverse().asDiagonal() * a.dense().transpose() * w.asDiagonal();
  const MatrixXd bd = b.dense();
  return max_abs(adj - bd) / std::max(1.0, max_abs(bd));
}

void QuadraticElement::add(double coef, const SlElement& a, const SlElement& b) {
  terms_.push_back({coef, a.matrix(), b.matrix()});
}

QuadraticElement QuadraticElement::star() const {
  QuadraticElement out(n_);
  for (const auto& t : terms_) out.terms_.push_back({t.coef, t.second.transpose(), t.first.transpose()});
  return out;
}

std::vector<double> QuadraticElement::coefficients() const {
  return flatten_pairs(n_, terms_, [](const ProductTerm& t) -> const MatrixXd& { return t.first; },
                       [](const ProductTerm& t) -> const MatrixXd& { return t.second; });
}

QuadraticElement QuadraticElement::conjugated(const MatrixXd& M, const MatrixXd& M_inv) const {
  QuadraticElement out(n_);
  for (const auto& t : terms_) out.terms_.push_back({t.coef, M_inv * t.first * M, M_inv * t.second * M});
  return out;
}

void TensorElement::add(double coef, const SlElement& a, const SlElement& b) {
  terms_.push_back({coef, a.matrix(), b.matrix()});
}

TensorElement TensorElement::star() const {
  TensorElement out(n_);
  for (const auto& t : terms_) out.terms_.push_back({t.coef, t.left.transpose(), t.right.transpose()});
  return out;
}

std::vector<double> TensorElement::coefficients() const {
  return flatten_pairs(n_, terms_, [](const TensorTerm& t) -> const MatrixXd& { return t.left; },
                       [](const TensorTerm& t) -> const MatrixXd& { return t.right; });
}

TensorElement TensorElement::conjugated(const MatrixXd& M, const MatrixXd& M_inv) const {
  TensorElement out(n_);
  for (const auto& t : terms_) out.terms_.push_back({t.coef, M_inv * t.left * M, M_inv * t.right * M});
  return out;
}

double max_coefficient_difference(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "coefficient vectors differ in size");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

QuadraticElement casimir_omega(int n) {
  QuadraticElement omega(n);
  for (int k = 0; k <= n; ++k) {
    for (int l = k + 1; l <= n; ++l) {
      omega.add(1.0, SlElement::e(n, k, l), SlElement::e(n, l, k));
      omega.add(1.0, SlElement::e(n, l, k), SlElement::e(n, k, l));
    }
  }
  for (int l = 1; l <= n; ++l) omega.add(1.0, SlElement::h(n, l), SlElement::h_dual(n, l));
  return omega;
}

TensorElement casimir_Y(int n) {
  // Delta(AB) = AB (x) 1 + A (x) B + B (x) A + 1 (x) AB, so only the cross terms survive.
  TensorElement y(n);
  const QuadraticElement omega = casimir_omega(n);
  for (const auto& t : omega.terms()) {
    y.add(t.coef, SlElement(t.first), SlElement(t.second));
    y.add(t.coef, SlElement(t.second), SlElement(t.first));
  }
  return y;
}

TensorElement casimir_Y_expanded(int n) {
  TensorElement y(n);
  for (int k = 0; k <= n; ++k) {
    for (int l = k + 1; l <= n; ++l) {
      y.add(2.0, SlElement::e(n, l, k), SlElement::e(n, k, l));
      y.add(2.0, SlElement::e(n, k, l), SlElement::e(n, l, k));
    }
  }
  for (int a = 0; a <= n; ++a) {
    MatrixXd d = -MatrixXd::Identity(n + 1, n + 1) / (n + 1.0);
    d(a, a) += 1.0;
    y.add(2.0, SlElement(d), SlElement(d));
  }
  return y;
}

SparseOperator represent_on_edge(const TensorElement& y, const ConfigSpace& space, const Edge& edge,
                                 const SiteRepresentation& rep) {
  if (space.kind() != ProcessKind::Sep || space.species() != y.n()) {
    throw Error(ErrorCode::SpaceMismatch, "tensor element and SEP space disagree on n");
  }
  const auto m = static_cast<Eigen::Index>(space.local_size());
  MatrixXd two_site = MatrixXd::Zero(m * m, m * m);
  for (const auto& t : y.terms()) {
    const MatrixXd a = rep(SlElement(t.left));
    const MatrixXd b = rep(SlElement(t.right));
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j) {
        if (a(i, j) == 0.0) continue;
        two_site.block(i * m, j * m, m, m) += t.coef * a(i, j) * b;
      }
  }
  const CompositionIndexer& idx = space.local_indexer();
  std::vector<Triplet> trips;
  for (std::size_t r = 0; r < space.size(); ++r) {
    Configuration c = space.unrank(r);
    const auto a = static_cast<Eigen::Index>(idx.rank(c.site(edge.x)));
    const auto b = static_cast<Eigen::Index>(idx.rank(c.site(edge.y)));
    for (Eigen::Index col = 0; col < m * m; ++col) {
      const double v = two_site(a * m + b, col);
      if (v == 0.0) continue;
      idx.unrank(static_cast<std::size_t>(col / m), c.site(edge.x));
      idx.unrank(static_cast<std::size_t>(col % m), c.site(edge.y));
      trips.emplace_back(static_cast<int>(r), static_cast<int>(space.rank(c)), v);
    }
  }
  const auto N = static_cast<Eigen::Index>(space.size());
  SparseMatrix mat(N, N);
  mat.setFromTriplets(trips.begin(), trips.end());
  return SparseOperator(space, std::move(mat), "two-site-representation");
}

namespace {

double shift_residual(const SparseMatrix& diff, double& c) {
  c = diff.coeff(0, 0);
  double worst = 0.0;
  for (Eigen::Index r = 0; r < diff.outerSize(); ++r) {
    bool saw_diag = false;
    for (SparseMatrix::InnerIterator it(diff, r); it; ++it) {
      const double target = it.col() == r ? c : 0.0;
      saw_diag = saw_diag || it.col() == r;
      worst = std::max(worst, std::abs(it.value() - target));
    }
    if (!saw_diag) worst = std::max(worst, std::abs(c));
  }
  return worst;
}

}  // namespace

CasimirShiftReport measure_sep_casimir_shift(const Kappa& kappa, int two_j, const Graph& graph, const Edge& edge) {
  const int n = kappa.n();
  const ConfigSpace space = enumerate_sep(graph, n, two_j);
  const SparseMatrix gen = sep_edge_generator(space, edge).matrix();
  const TensorElement y = casimir_Y(n);
  const SparseOperator rho_y = represent_on_edge(y, space, edge, [&](const SlElement& x) {
    return rho_p_matrix(x, kappa.p_hat(), two_j).dense();
  });
  const SparseOperator sigma_y = represent_on_edge(y, space, edge, [&](const SlElement& x) {
    return sigma_p_matrix(x, kappa, two_j).dense();
  });
  CasimirShiftReport rep;
  rep.residual_rho = shift_residual(SparseMatrix(0.5 * rho_y.matrix() - gen), rep.c_rho);
  rep.residual_sigma = shift_residual(SparseMatrix(0.5 * sigma_y.matrix() - gen), rep.c_sigma);
  rep.c_closed_form = static_cast<double>(two_j) * two_j * n / (n + 1.0);
  rep.pass = rep.residual_rho <= rep.tolerance && rep.residual_sigma <= rep.tolerance &&
             std::abs(rep.c_rho - rep.c_sigma) <= rep.tolerance;
  return rep;
}

CasimirShiftReport check_sep_casimir_shift(const Kappa& kappa, int two_j, const Graph& graph, const Edge& edge) {
  CasimirShiftReport rep = measure_sep_casimir_shift(kappa, two_j, graph, edge);
  if (!rep.pass) {
    throw Error(ErrorCode::NonConstantShift, "residuals " + std::to_string(rep.residual_rho) + ", " +
                                                 std::to_string(rep.residual_sigma));
  }
  return rep;
}

SparseOperator intertwiner_sep(const Kappa& kappa, int two_j) {
  const MatrixXd K = krawtchouk_table(kappa, two_j);
  const VectorXd wq = multinomial_weights(kappa.p_hat(), two_j);
  const double pref = std::pow(kappa.p()(0), -0.5 * two_j);
  const MatrixXd lambda = pref * K.transpose() * wq.asDiagonal();
  SparseOperator op(single_site_sep(kappa.n(), two_j), lambda.sparseView(0.0, 0.0), "intertwiner");
  const double defect = unitarity_defect(op, kappa, two_j);
  if (defect > 1e-10) throw Error(ErrorCode::UnitarityDefect, "defect " + std::to_string(defect));
  return op;
}

double unitarity_defect(const SparseOperator& lambda, const Kappa& kappa, int two_j) {
  const MatrixXd L = lambda.dense();
  const VectorXd wp = multinomial_weights(kappa.p(), two_j);
  const VectorXd wq_isqrt = multinomial_weights(kappa.p_hat(), two_j).cwiseSqrt().cwiseInverse();
  const MatrixXd G = wq_isqrt.asDiagonal() * L.transpose() * wp.asDiagonal() * L * wq_isqrt.asDiagonal();
  return max_abs(G - MatrixXd::Identity(G.rows(), G.cols()));
}

double intertwining_residual(const SparseOperator& lambda, const SlElement& x, const Kappa& kappa, int two_j) {
  const MatrixXd L = lambda.dense();
  const MatrixXd lhs = L * rho_p_matrix(x, kappa.p_hat(), two_j).dense();
  const MatrixXd rhs = sigma_p_matrix(x, kappa, two_j).dense() * L;
  return max_abs(lhs - rhs) / std::max(1.0, max_abs(lhs));
}

double kernel_relation_residual(const SlElement& x, const Kappa& kappa, int two_j) {
  const MatrixXd K = krawtchouk_table(kappa, two_j);
  const MatrixXd lhs = rho_p_matrix(x.star(), kappa.p_hat(), two_j).dense() * K;
  const MatrixXd rhs = K * sigma_p_matrix(x, kappa, two_j).dense().transpose();
  return max_abs(lhs - rhs) / std::max(1.0, max_abs(lhs));
}

}  // namespace orthodual
