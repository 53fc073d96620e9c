#include "orthodual/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "orthodual/charlier.hpp"
#include "orthodual/error.hpp"

namespace orthodual {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::shared_ptr<const ConfigSpace> share(const ConfigSpace& s) { return std::make_shared<const ConfigSpace>(s); }

// Per-site factor tables: value(i, j) = prod_x table_x(loc_a[i][x], loc_b[j][x]).
struct SiteProduct {
  int sites = 0;
  std::vector<std::size_t> loc_a;  // rows * sites
  std::vector<std::size_t> loc_b;  // cols * sites
  std::vector<MatrixXd> tables;    // one per site (may repeat)
  std::size_t rows = 0;
  std::size_t cols = 0;
  // Row ranks are the mixed radix of site states with site 0 most significant,
  // so a column is a Kronecker product of table columns.
  bool full_product = false;

  // out += scale * column j
  void add_column(std::size_t j, double scale, Eigen::Ref<VectorXd> out) const {
    if (full_product) {
      add_kron(j, scale, out);
      return;
    }
    for (std::size_t i = 0; i < rows; ++i) {
      double v = scale;
      for (int x = 0; x < sites; ++x) {
        v *= tables[static_cast<std::size_t>(x)](static_cast<Eigen::Index>(loc_a[i * sites + x]),
                                                 static_cast<Eigen::Index>(loc_b[j * sites + x]));
      }
      out(static_cast<Eigen::Index>(i)) += v;
    }
  }

  void add_kron(std::size_t j, double scale, Eigen::Ref<VectorXd> out) const {
    // prefix = kron of all but the last site's columns
    thread_local VectorXd prefix, next;
    prefix.resize(1);
    prefix(0) = scale;
    for (int x = 0; x + 1 < sites; ++x) {
      const MatrixXd& t = tables[static_cast<std::size_t>(x)];
      const auto col = t.col(static_cast<Eigen::Index>(loc_b[j * sites + x]));
      const Eigen::Index m = t.rows();
      next.resize(prefix.size() * m);
      for (Eigen::Index a = 0; a < prefix.size(); ++a) next.segment(a * m, m) = prefix(a) * col;
      prefix.swap(next);
    }
    const MatrixXd& t = tables[static_cast<std::size_t>(sites - 1)];
    const auto col = t.col(static_cast<Eigen::Index>(loc_b[j * sites + sites - 1]));
    const Eigen::Index m = t.rows();
    Eigen::Map<MatrixXd>(out.data(), m, prefix.size()).noalias() += col * prefix.transpose();
  }

  void row(std::size_t i, Eigen::Ref<VectorXd> out) const {
    if (full_product) {
      Eigen::Index len = 1;
      out(0) = 1.0;
      for (int x = 0; x < sites; ++x) {
        const MatrixXd& t = tables[static_cast<std::size_t>(x)];
        const auto r = t.row(static_cast<Eigen::Index>(loc_a[i * sites + x])).transpose();
        const Eigen::Index m = t.cols();
        for (Eigen::Index a = len - 1; a >= 0; --a) out.segment(a * m, m) = out(a) * r;
        len *= m;
      }
      return;
    }
    for (std::size_t j = 0; j < cols; ++j) {
      double v = 1.0;
      for (int x = 0; x < sites; ++x) {
        v *= tables[static_cast<std::size_t>(x)](static_cast<Eigen::Index>(loc_a[i * sites + x]),
                                                 static_cast<Eigen::Index>(loc_b[j * sites + x]));
      }
      out(static_cast<Eigen::Index>(j)) = v;
    }
  }

  void column(std::size_t j, Eigen::Ref<VectorXd> out) const {
    if (full_product) {
      Eigen::Index len = 1;
      out(0) = 1.0;
      for (int x = 0; x < sites; ++x) {
        const MatrixXd& t = tables[static_cast<std::size_t>(x)];
        const auto col = t.col(static_cast<Eigen::Index>(loc_b[j * sites + x]));
        const Eigen::Index m = t.rows();
        for (Eigen::Index a = len - 1; a >= 0; --a) out.segment(a * m, m) = out(a) * col;
        len *= m;
      }
      return;
    }
    for (std::size_t i = 0; i < rows; ++i) {
      double v = 1.0;
      for (int x = 0; x < sites; ++x) {
        v *= tables[static_cast<std::size_t>(x)](static_cast<Eigen::Index>(loc_a[i * sites + x]),
                                                 static_cast<Eigen::Index>(loc_b[j * sites + x]));
      }
      out(static_cast<Eigen::Index>(i)) = v;
    }
  }
};

DualityMatrix materialize(std::shared_ptr<const ConfigSpace> a, std::shared_ptr<const ConfigSpace> b,
                          std::shared_ptr<const SiteProduct> prod, DualityProvenance prov, std::size_t limit) {
  if (a->size() <= limit && b->size() <= limit) {
    MatrixXd d(static_cast<Eigen::Index>(a->size()), static_cast<Eigen::Index>(b->size()));
    for (std::size_t j = 0; j < b->size(); ++j) prod->column(j, d.col(static_cast<Eigen::Index>(j)));
    return DualityMatrix::dense(std::move(a), std::move(b), std::move(d), std::move(prov));
  }
  return DualityMatrix::lazy(
      std::move(a), std::move(b),
      [prod](std::size_t j, double scale, Eigen::Ref<VectorXd> out) { prod->add_column(j, scale, out); },
      [prod](std::size_t i, Eigen::Ref<VectorXd> out) { prod->row(i, out); }, std::move(prov));
}

std::string join(const VectorXd& v) {
  std::ostringstream os;
  os.precision(17);
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v(i);
  return os.str();
}

}  // namespace

DualityMatrix DualityMatrix::dense(std::shared_ptr<const ConfigSpace> rows, std::shared_ptr<const ConfigSpace> cols,
                                   MatrixXd d, DualityProvenance prov) {
  if (d.rows() != static_cast<Eigen::Index>(rows->size()) || d.cols() != static_cast<Eigen::Index>(cols->size())) {
    throw Error(ErrorCode::DimensionMismatch, "duality matrix does not match its spaces");
  }
  DualityMatrix m;
  m.rows_ = std::move(rows);
  m.cols_ = std::move(cols);
  m.dense_ = std::move(d);
  m.prov_ = std::move(prov);
  return m;
}

DualityMatrix DualityMatrix::lazy(std::shared_ptr<const ConfigSpace> rows, std::shared_ptr<const ConfigSpace> cols,
                                  ColumnFn columns, RowFn rows_fn, DualityProvenance prov) {
  DualityMatrix m;
  m.rows_ = std::move(rows);
  m.cols_ = std::move(cols);
  m.fn_ = std::move(columns);
  m.row_fn_ = std::move(rows_fn);
  m.prov_ = std::move(prov);
  return m;
}

const MatrixXd& DualityMatrix::matrix() const {
  if (!dense_) throw Error(ErrorCode::InvalidArgument, "duality matrix is held lazily");
  return *dense_;
}

void DualityMatrix::column(std::size_t col, Eigen::Ref<VectorXd> out) const {
  if (dense_) {
    out = dense_->col(static_cast<Eigen::Index>(col));
  } else {
    out.setZero();
    fn_(col, 1.0, out);
  }
}

void DualityMatrix::add_column(std::size_t col, double scale, Eigen::Ref<VectorXd> out) const {
  if (dense_) {
    out.noalias() += scale * dense_->col(static_cast<Eigen::Index>(col));
  } else {
    fn_(col, scale, out);
  }
}

VectorXd DualityMatrix::column(std::size_t col) const {
  VectorXd v(static_cast<Eigen::Index>(rows()));
  column(col, v);
  return v;
}

void DualityMatrix::row(std::size_t r, Eigen::Ref<VectorXd> out) const {
  if (dense_) {
    out = dense_->row(static_cast<Eigen::Index>(r)).transpose();
  } else if (row_fn_) {
    row_fn_(r, out);
  } else {
    for (std::size_t c = 0; c < cols(); ++c) out(static_cast<Eigen::Index>(c)) = entry(r, c);
  }
}

double DualityMatrix::entry(std::size_t row, std::size_t col) const {
  if (dense_) return (*dense_)(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  return column(col)(static_cast<Eigen::Index>(row));
}

DualityMatrix build_sep_duality_from_table(const ConfigSpace& space, const MatrixXd& site_table,
                                           DualityProvenance prov, std::size_t dense_limit) {
  if (space.kind() != ProcessKind::Sep) throw Error(ErrorCode::SpaceMismatch, "SEP duality needs a SEP space");
  const auto m = static_cast<Eigen::Index>(space.local_size());
  if (site_table.rows() != m || site_table.cols() != m) {
    throw Error(ErrorCode::DimensionMismatch, "site table does not match Omega_{2j}");
  }
  auto prod = std::make_shared<SiteProduct>();
  prod->sites = space.num_sites();
  prod->rows = prod->cols = space.size();
  prod->tables.assign(static_cast<std::size_t>(prod->sites), site_table);
  prod->loc_a.resize(space.size() * static_cast<std::size_t>(prod->sites));
  for (std::size_t r = 0; r < space.size(); ++r) {
    const Configuration c = space.unrank(r);
    for (int x = 0; x < prod->sites; ++x) {
      prod->loc_a[r * prod->sites + x] = space.local_indexer().rank(c.site(x));
    }
  }
  prod->loc_b = prod->loc_a;
  prod->full_product = true;
  auto s = share(space);
  return materialize(s, s, std::move(prod), std::move(prov), dense_limit);
}

DualityMatrix build_sep_duality(const ConfigSpace& space, const Kappa& kappa, std::size_t dense_limit) {
  if (space.kind() != ProcessKind::Sep || space.species() != kappa.n()) {
    throw Error(ErrorCode::SpaceMismatch, "kappa and SEP space disagree on n");
  }
  std::ostringstream params;
  params << "n=" << kappa.n() << " 2j=" << space.two_j() << " p=" << join(kappa.p())
         << " p_hat=" << join(kappa.p_hat()) << " graph=" << space.graph().describe();
  return build_sep_duality_from_table(space, krawtchouk_table(kappa, space.two_j()), {"krawtchouk", params.str()},
                                      dense_limit);
}

DualityMatrix build_irw_duality(const ConfigSpace& space_a, const ConfigSpace& space_b, double lambda,
                                std::size_t dense_limit) {
  if (space_a.kind() != ProcessKind::Irw || space_b.kind() != ProcessKind::Irw) {
    throw Error(ErrorCode::SpaceMismatch, "IRW duality needs IRW sectors");
  }
  if (space_a.species() != space_b.species() || !(space_a.graph() == space_b.graph())) {
    throw Error(ErrorCode::SpaceMismatch, "sectors on different graphs or species counts");
  }
  if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda must be positive");
  const int n = space_a.species();
  const int sites = space_a.num_sites();
  // Site states are indexed by the mixed radix of (xi_1..xi_n) bounded by the sector totals.
  std::vector<int> ra(static_cast<std::size_t>(n)), rb(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    ra[static_cast<std::size_t>(i)] = space_a.totals()[static_cast<std::size_t>(i)] + 1;
    rb[static_cast<std::size_t>(i)] = space_b.totals()[static_cast<std::size_t>(i)] + 1;
  }
  auto flat = [n](std::span<const int> s, const std::vector<int>& radix) {
    std::size_t r = 0;
    for (int i = 0; i < n; ++i) r = r * static_cast<std::size_t>(radix[static_cast<std::size_t>(i)]) + static_cast<std::size_t>(s[static_cast<std::size_t>(i)]);
    return r;
  };
  std::size_t ma = 1, mb = 1;
  for (int i = 0; i < n; ++i) {
    ma *= static_cast<std::size_t>(ra[static_cast<std::size_t>(i)]);
    mb *= static_cast<std::size_t>(rb[static_cast<std::size_t>(i)]);
  }
  MatrixXd table(static_cast<Eigen::Index>(ma), static_cast<Eigen::Index>(mb));
  SiteConfig xi(static_cast<std::size_t>(n)), eta(static_cast<std::size_t>(n));
  for (std::size_t a = 0; a < ma; ++a) {
    std::size_t rem = a;
    for (int i = n - 1; i >= 0; --i) {
      xi[static_cast<std::size_t>(i)] = static_cast<int>(rem % static_cast<std::size_t>(ra[static_cast<std::size_t>(i)]));
      rem /= static_cast<std::size_t>(ra[static_cast<std::size_t>(i)]);
    }
    for (std::size_t b = 0; b < mb; ++b) {
      rem = b;
      for (int i = n - 1; i >= 0; --i) {
        eta[static_cast<std::size_t>(i)] = static_cast<int>(rem % static_cast<std::size_t>(rb[static_cast<std::size_t>(i)]));
        rem /= static_cast<std::size_t>(rb[static_cast<std::size_t>(i)]);
      }
      table(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = product_kernel(xi, eta, lambda);
    }
  }
  auto prod = std::make_shared<SiteProduct>();
  prod->sites = sites;
  prod->rows = space_a.size();
  prod->cols = space_b.size();
  prod->tables.assign(static_cast<std::size_t>(sites), table);
  prod->loc_a.resize(prod->rows * static_cast<std::size_t>(sites));
  prod->loc_b.resize(prod->cols * static_cast<std::size_t>(sites));
  for (std::size_t r = 0; r < prod->rows; ++r) {
    const Configuration c = space_a.unrank(r);
    for (int x = 0; x < sites; ++x) prod->loc_a[r * sites + x] = flat(c.site(x), ra);
  }
  for (std::size_t r = 0; r < prod->cols; ++r) {
    const Configuration c = space_b.unrank(r);
    for (int x = 0; x < sites; ++x) prod->loc_b[r * sites + x] = flat(c.site(x), rb);
  }
  std::ostringstream params;
  params.precision(17);
  params << "n=" << n << " lambda=" << lambda << " graph=" << space_a.graph().describe();
  return materialize(share(space_a), share(space_b), std::move(prod), {"charlier", params.str()}, dense_limit);
}

DualityMatrix cheap_duality(const ConfigSpace& space, const StateWeight& weight) {
  const auto N = static_cast<Eigen::Index>(space.size());
  MatrixXd d = MatrixXd::Zero(N, N);
  for (Eigen::Index r = 0; r < N; ++r) d(r, r) = 1.0 / weight(space.unrank(static_cast<std::size_t>(r)));
  auto s = share(space);
  return DualityMatrix::dense(s, s, std::move(d), {"cheap", space.describe()});
}

double default_duality_tolerance(int two_j) { return two_j >= 4 ? 1e-8 : 1e-10; }

DualityReport duality_residual(const SparseOperator& left, const SparseOperator& right, const DualityMatrix& d,
                               double tolerance, bool timed) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto Na = static_cast<Eigen::Index>(d.rows());
  const auto Nb = static_cast<Eigen::Index>(d.cols());
  if (left.rows() != Na || left.cols() != Na || right.rows() != Nb || right.cols() != Nb) {
    throw Error(ErrorCode::DimensionMismatch, "generator and duality matrix sizes differ");
  }
  const SparseMatrix& La = left.matrix();
  const SparseMatrix& Lb = right.matrix();
  constexpr Eigen::Index kBlock = 16;
  using RowBlock = Eigen::Matrix<double, Eigen::Dynamic, kBlock, Eigen::RowMajor>;
  double residual = 0.0;
  double dmax = 0.0;
  // Column tiles of D: (L_a D)[:, J] row by row, (D L_b^T)[:, j] = sum_k L_b(j, k) D[:, k].
  MatrixXd cols = MatrixXd::Zero(Na, kBlock), mixed(Na, kBlock);
  RowBlock block(Na, kBlock), image(Na, kBlock);
  for (Eigen::Index j0 = 0; j0 < Nb; j0 += kBlock) {
    const Eigen::Index b = std::min(kBlock, Nb - j0);
    for (Eigen::Index j = 0; j < b; ++j) d.column(static_cast<std::size_t>(j0 + j), cols.col(j));
    dmax = std::max(dmax, cols.leftCols(b).cwiseAbs().maxCoeff());
    block = cols;
    for (Eigen::Index i = 0; i < Na; ++i) {
      auto row = image.row(i);
      row.setZero();
      for (SparseMatrix::InnerIterator it(La, i); it; ++it) row.noalias() += it.value() * block.row(it.col());
    }
    for (Eigen::Index j = 0; j < b; ++j) {
      auto col = mixed.col(j);
      col.setZero();
      for (SparseMatrix::InnerIterator it(Lb, j0 + j); it; ++it) {
        d.add_column(static_cast<std::size_t>(it.col()), it.value(), col);
      }
    }
    residual = std::max(residual, (image.leftCols(b) - mixed.leftCols(b)).cwiseAbs().maxCoeff());
  }
  DualityReport rep;
  rep.left_space = left.row_space().describe();
  rep.right_space = right.row_space().describe();
  rep.provenance = d.provenance();
  rep.residual = residual;
  rep.scale = std::max(left.inf_norm(), right.inf_norm()) * dmax;
  rep.tolerance = tolerance > 0.0 ? tolerance
                                  : default_duality_tolerance(left.row_space().kind() == ProcessKind::Sep
                                                                  ? left.row_space().two_j()
                                                                  : 0);
  rep.pass = rep.residual <= rep.tolerance * std::max(1.0, rep.scale);
  if (timed) rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

DualityReport perturbed_sep_residual(const Graph& graph, const Kappa& kappa, int two_j, int row, int col,
                                     double delta) {
  const int n = kappa.n();
  if (row < 0 || col < 0 || row > n || col > n) throw Error(ErrorCode::InvalidArgument, "U index out of range");
  MatrixXd U = kappa.U();
  U(row, col) += delta;
  const ConfigSpace space = enumerate_sep(graph, n, two_j);
  std::ostringstream params;
  params.precision(17);
  params << "n=" << n << " 2j=" << two_j << " U(" << row << "," << col << ")+=" << delta;
  const DualityMatrix d = build_sep_duality_from_table(space, krawtchouk_table_raw(U, two_j),
                                                       {"krawtchouk-perturbed", params.str()});
  const SparseOperator gen = sep_generator(space, graph);
  return duality_residual(gen, gen, d);
}

DualityReport perturbed_entry_residual(const Graph& graph, const Kappa& kappa, int two_j, std::size_t row,
                                       std::size_t col, double delta) {
  const ConfigSpace space = enumerate_sep(graph, kappa.n(), two_j);
  if (row >= space.size() || col >= space.size()) throw Error(ErrorCode::InvalidArgument, "entry out of range");
  auto base = std::make_shared<DualityMatrix>(build_sep_duality(space, kappa));
  std::ostringstream params;
  params.precision(17);
  params << base->provenance().parameters << " D(" << row << "," << col << ")+=" << delta;
  const DualityMatrix d = DualityMatrix::lazy(
      base->row_space_ptr(), base->col_space_ptr(),
      [base, row, col, delta](std::size_t c, double scale, Eigen::Ref<VectorXd> out) {
        base->add_column(c, scale, out);
        if (c == col) out(static_cast<Eigen::Index>(row)) += scale * delta;
      },
      [base, row, col, delta](std::size_t r, Eigen::Ref<VectorXd> out) {
        base->row(r, out);
        if (r == row) out(static_cast<Eigen::Index>(col)) += delta;
      },
      {"krawtchouk-perturbed", params.str()});
  const SparseOperator gen = sep_generator(space, graph);
  return duality_residual(gen, gen, d);
}

}  // namespace orthodual
