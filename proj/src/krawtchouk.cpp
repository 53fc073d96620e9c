#include "orthodual/krawtchouk.hpp"

#include <algorithm>
#include <cmath>

#include "orthodual/error.hpp"

namespace orthodual {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

template <class S>
using Forms = std::vector<std::vector<S>>;

// poly (homogeneous of `degree` in n+1 variables) times sum_v form[v] z_v.
template <class S>
std::vector<S> multiply_linear(const std::vector<S>& poly, int degree, const std::vector<S>& form, int n) {
  const CompositionIndexer from(degree, n + 1);
  const CompositionIndexer to(degree + 1, n + 1);
  std::vector<S> out(to.size(), S(0));
  SiteConfig a(static_cast<std::size_t>(n + 1));
  for (std::size_t r = 0; r < from.size(); ++r) {
    if (poly[r] == 0) continue;
    from.unrank(r, a);
    for (int v = 0; v <= n; ++v) {
      if (form[static_cast<std::size_t>(v)] == 0) continue;
      ++a[static_cast<std::size_t>(v)];
      out[to.rank(a)] += poly[r] * form[static_cast<std::size_t>(v)];
      --a[static_cast<std::size_t>(v)];
    }
  }
  return out;
}

// Coefficients of prod_k form_k^{powers_k}, by repeated linear multiplication.
template <class S>
std::vector<S> expand_by_multiplication(const Forms<S>& forms, std::span<const int> powers, int n) {
  std::vector<S> poly{S(1)};
  int degree = 0;
  for (std::size_t k = 0; k < forms.size(); ++k) {
    for (int rep = 0; rep < powers[k]; ++rep) poly = multiply_linear(poly, degree++, forms[k], n);
  }
  return poly;
}

// Same product, expanding each power with the multinomial theorem and
// convolving the resulting monomial lists.
std::vector<double> expand_by_multinomial(const Forms<double>& forms, std::span<const int> powers, int n) {
  struct Term {
    SiteConfig exponent;
    double coef;
  };
  std::vector<Term> acc{{SiteConfig(static_cast<std::size_t>(n + 1), 0), 1.0}};
  int degree = 0;
  for (std::size_t m = 0; m < forms.size(); ++m) {
    const int power = powers[m];
    if (power == 0) continue;
    const CompositionIndexer parts(power, n + 1);
    std::vector<Term> factor;
    for (std::size_t r = 0; r < parts.size(); ++r) {
      const SiteConfig alpha = parts.unrank(r);
      double c = multinomial(alpha);
      for (int k = 0; k <= n; ++k) c *= std::pow(forms[m][static_cast<std::size_t>(k)], alpha[static_cast<std::size_t>(k)]);
      if (c != 0.0) factor.push_back({alpha, c});
    }
    degree += power;
    const CompositionIndexer target(degree, n + 1);
    std::vector<double> dense(target.size(), 0.0);
    std::vector<char> used(target.size(), 0);
    SiteConfig e(static_cast<std::size_t>(n + 1));
    for (const auto& a : acc) {
      for (const auto& b : factor) {
        for (int k = 0; k <= n; ++k) e[static_cast<std::size_t>(k)] = a.exponent[static_cast<std::size_t>(k)] + b.exponent[static_cast<std::size_t>(k)];
        const std::size_t idx = target.rank(e);
        dense[idx] += a.coef * b.coef;
        used[idx] = 1;
      }
    }
    acc.clear();
    for (std::size_t idx = 0; idx < dense.size(); ++idx) {
      if (used[idx]) acc.push_back({target.unrank(idx), dense[idx]});
    }
  }
  const CompositionIndexer final_index(degree, n + 1);
  std::vector<double> out(final_index.size(), 0.0);
  for (const auto& t : acc) out[final_index.rank(t.exponent)] = t.coef;
  return out;
}

void check_site_state(std::span<const int> s, int n, int two_j, const char* what) {
  if (static_cast<int>(s.size()) != n + 1) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " must have n+1 entries");
  }
  int sum = 0;
  for (int v : s) {
    if (v < 0) throw Error(ErrorCode::InvalidArgument, std::string(what) + " has a negative entry");
    sum += v;
  }
  if (sum != two_j) throw Error(ErrorCode::InvalidArgument, std::string(what) + " does not sum to 2j");
}

void check_probability(const VectorXd& p, double tol, const char* what) {
  if (p.size() < 2) throw Error(ErrorCode::DimensionMismatch, std::string(what) + " needs at least two entries");
  for (double v : p) {
    if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorCode::NotProbability, std::string(what) + " has a non-positive entry");
  }
  if (std::abs(p.sum() - 1.0) > tol) throw Error(ErrorCode::NotProbability, std::string(what) + " does not sum to 1");
}

void check_probability(const std::vector<Rational>& p, const char* what) {
  if (p.size() < 2) throw Error(ErrorCode::DimensionMismatch, std::string(what) + " needs at least two entries");
  Rational s = 0;
  for (const auto& v : p) {
    if (v <= 0) throw Error(ErrorCode::NotProbability, std::string(what) + " has a non-positive entry");
    s += v;
  }
  if (s != 1) throw Error(ErrorCode::NotProbability, std::string(what) + " does not sum to 1");
}

template <class S>
struct GramSchmidtResult {
  std::vector<std::vector<S>> columns;  // columns of U
  std::vector<S> p_hat;
};

// Orthogonalizes (1, e_1, .., e_n) under <a,b> = nu sum_k p_k a_k b_k and
// rescales each vector to have 0-th entry 1.
template <class S>
GramSchmidtResult<S> gram_schmidt(const std::vector<S>& p, const S& nu, const S& degenerate_below) {
  const std::size_t m = p.size();
  auto inner = [&](const std::vector<S>& a, const std::vector<S>& b) {
    S acc = 0;
    for (std::size_t k = 0; k < m; ++k) acc += p[k] * a[k] * b[k];
    return S(nu * acc);
  };
  GramSchmidtResult<S> out;
  std::vector<S> norms;
  for (std::size_t l = 0; l < m; ++l) {
    std::vector<S> v(m, S(0));
    if (l == 0) {
      std::fill(v.begin(), v.end(), S(1));
    } else {
      v[l] = 1;
    }
    const S seed_norm = inner(v, v);
    for (std::size_t q = 0; q < l; ++q) {
      const S c = inner(v, out.columns[q]) / norms[q];
      for (std::size_t k = 0; k < m; ++k) v[k] -= c * out.columns[q][k];
    }
    const S norm = inner(v, v);
    if (!(norm > degenerate_below * seed_norm)) {
      throw Error(ErrorCode::DegenerateKappa, "numerical rank deficiency in Gram-Schmidt");
    }
    const S lead = v[0];
    const S lead_abs = lead < 0 ? S(-lead) : lead;
    if (!(lead_abs > degenerate_below)) throw Error(ErrorCode::DegenerateKappa, "zero 0-th entry while rescaling");
    for (auto& x : v) x /= lead;
    v[0] = 1;
    norms.push_back(inner(v, v));
    out.columns.push_back(std::move(v));
  }
  for (std::size_t l = 0; l < m; ++l) out.p_hat.push_back(S(1) / norms[l]);
  return out;
}

Rational exact_multinomial(std::span<const int> counts) {
  int total = 0;
  for (int v : counts) total += v;
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(total));
  for (int v : counts) {
    mpz_class g;
    mpz_fac_ui(g.get_mpz_t(), static_cast<unsigned long>(v));
    f /= g;
  }
  return Rational(f);
}

}  // namespace

double Kappa::gram_residual() const {
  const MatrixXd M = nu_ * p_.asDiagonal() * U_ * p_hat_.asDiagonal() * U_.transpose();
  return (M - MatrixXd::Identity(M.rows(), M.cols())).cwiseAbs().maxCoeff();
}

Kappa validate_kappa(double nu, VectorXd p, VectorXd p_hat, MatrixXd U, double tol) {
  const auto m = p.size();
  if (p_hat.size() != m || U.rows() != m || U.cols() != m) {
    throw Error(ErrorCode::DimensionMismatch, "p, p_hat and U must all have size n+1");
  }
  check_probability(p, tol, "p");
  check_probability(p_hat, tol, "p_hat");
  if (nu == 0.0 || std::abs(p(0) * nu - 1.0) > tol || std::abs(p_hat(0) * nu - 1.0) > tol) {
    throw Error(ErrorCode::KappaBorderWeight, "p_0=" + std::to_string(p(0)) + " p_hat_0=" + std::to_string(p_hat(0)) +
                                                " nu=" + std::to_string(nu));
  }
  for (Eigen::Index k = 0; k < m; ++k) {
    if (std::abs(U(k, 0) - 1.0) > tol || std::abs(U(0, k) - 1.0) > tol) {
      throw Error(ErrorCode::KappaBorderOnes, "U row/column 0 entry " + std::to_string(k));
    }
  }
  Kappa kappa;
  kappa.nu_ = nu;
  kappa.p_ = std::move(p);
  kappa.p_hat_ = std::move(p_hat);
  kappa.U_ = std::move(U);
  const double res = kappa.gram_residual();
  if (!(res <= tol)) throw Error(ErrorCode::KappaGramIdentity, "residual " + std::to_string(res));
  return kappa;
}

Kappa validate_kappa(const ExactKappa& e) {
  const auto m = static_cast<std::size_t>(e.n + 1);
  if (e.n < 1 || e.p.size() != m || e.p_hat.size() != m || e.U.size() != m * m) {
    throw Error(ErrorCode::DimensionMismatch, "p, p_hat and U must all have size n+1");
  }
  check_probability(e.p, "p");
  check_probability(e.p_hat, "p_hat");
  if (e.nu == 0 || e.p[0] * e.nu != 1 || e.p_hat[0] * e.nu != 1) {
    throw Error(ErrorCode::KappaBorderWeight, "p_0 = p_hat_0 = 1/nu fails");
  }
  for (int k = 0; k <= e.n; ++k) {
    if (e.u(k, 0) != 1 || e.u(0, k) != 1) throw Error(ErrorCode::KappaBorderOnes, "U row/column 0 entry " + std::to_string(k));
  }
  for (int a = 0; a <= e.n; ++a) {
    for (int b = 0; b <= e.n; ++b) {
      Rational s = 0;
      for (int l = 0; l <= e.n; ++l) s += e.u(a, l) * e.p_hat[static_cast<std::size_t>(l)] * e.u(b, l);
      s *= e.nu * e.p[static_cast<std::size_t>(a)];
      if (s != (a == b ? 1 : 0)) throw Error(ErrorCode::KappaGramIdentity, "exact residual nonzero");
    }
  }
  Kappa kappa;
  kappa.nu_ = to_double(e.nu);
  kappa.p_.resize(static_cast<Eigen::Index>(m));
  kappa.p_hat_.resize(static_cast<Eigen::Index>(m));
  kappa.U_.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (int k = 0; k <= e.n; ++k) {
    kappa.p_(k) = to_double(e.p[static_cast<std::size_t>(k)]);
    kappa.p_hat_(k) = to_double(e.p_hat[static_cast<std::size_t>(k)]);
    for (int l = 0; l <= e.n; ++l) kappa.U_(k, l) = to_double(e.u(k, l));
  }
  kappa.exact_ = e;
  return kappa;
}

Kappa kappa_from_p(const VectorXd& p) {
  check_probability(p, kKappaTolerance, "p");
  std::vector<double> pv(p.data(), p.data() + p.size());
  const double nu = 1.0 / p(0);
  const auto gs = gram_schmidt<double>(pv, nu, 1e-13);
  const auto m = p.size();
  MatrixXd U(m, m);
  VectorXd p_hat(m);
  for (Eigen::Index l = 0; l < m; ++l) {
    for (Eigen::Index k = 0; k < m; ++k) U(k, l) = gs.columns[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)];
    p_hat(l) = gs.p_hat[static_cast<std::size_t>(l)];
  }
  return validate_kappa(nu, p, p_hat, U);
}

Kappa kappa_from_p(const std::vector<Rational>& p) {
  check_probability(p, "p");
  ExactKappa e;
  e.n = static_cast<int>(p.size()) - 1;
  e.p = p;
  e.nu = Rational(1) / p[0];
  const auto gs = gram_schmidt<Rational>(p, e.nu, Rational(0));
  const auto m = p.size();
  e.U.assign(m * m, Rational(0));
  for (std::size_t l = 0; l < m; ++l) {
    for (std::size_t k = 0; k < m; ++k) e.U[k * m + l] = gs.columns[l][k];
  }
  e.p_hat = gs.p_hat;
  return validate_kappa(e);
}

Kappa kappa_from_p(const std::vector<ParsedScalar>& p) {
  const bool all_exact = std::all_of(p.begin(), p.end(), [](const ParsedScalar& s) { return s.exact.has_value(); });
  if (all_exact) {
    std::vector<Rational> q;
    for (const auto& s : p) q.push_back(*s.exact);
    return kappa_from_p(q);
  }
  VectorXd v(static_cast<Eigen::Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) v(static_cast<Eigen::Index>(i)) = p[i].value;
  return kappa_from_p(v);
}

Kappa swapped_kappa(const Kappa& kappa) {
  if (kappa.exact()) {
    const ExactKappa& e = *kappa.exact();
    ExactKappa s = e;
    std::swap(s.p, s.p_hat);
    for (int k = 0; k <= e.n; ++k)
      for (int l = 0; l <= e.n; ++l) s.u(k, l) = e.u(l, k);
    return validate_kappa(s);
  }
  return validate_kappa(kappa.nu(), kappa.p_hat(), kappa.p(), kappa.U().transpose(), 1e-10);
}

RMatrix r_matrix(const Kappa& kappa) {
  RMatrix r;
  r.R = kappa.p_hat().asDiagonal() * kappa.U().transpose();
  r.Q = (kappa.p().asDiagonal() * kappa.U()) / kappa.p()(0);
  r.inverse_residual = (r.R * r.Q - MatrixXd::Identity(r.R.rows(), r.R.cols())).cwiseAbs().maxCoeff();
  return r;
}

double multinomial_weight(std::span<const int> xi, std::span<const double> p, int two_j) {
  if (xi.size() != p.size()) throw Error(ErrorCode::DimensionMismatch, "xi and p sizes differ");
  int sum = 0;
  for (int v : xi) sum += v;
  if (sum != two_j) throw Error(ErrorCode::InvalidArgument, "xi does not sum to 2j");
  double w = multinomial(xi);
  for (std::size_t i = 0; i < xi.size(); ++i) w *= std::pow(p[i], xi[i]);
  return w;
}

double multinomial_weight(std::span<const int> xi, const VectorXd& p, int two_j) {
  return multinomial_weight(xi, std::span<const double>(p.data(), static_cast<std::size_t>(p.size())), two_j);
}

VectorXd multinomial_weights(const VectorXd& p, int two_j) {
  const int n = static_cast<int>(p.size()) - 1;
  const CompositionIndexer idx(two_j, n + 1);
  VectorXd w(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t r = 0; r < idx.size(); ++r) w(static_cast<Eigen::Index>(r)) = multinomial_weight(idx.unrank(r), p, two_j);
  return w;
}

std::vector<Rational> krawtchouk_table_exact(const ExactKappa& e, int two_j) {
  const int n = e.n;
  const CompositionIndexer idx(two_j, n + 1);
  const std::size_t m = idx.size();
  Forms<Rational> forms(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k)
    for (int l = 0; l <= n; ++l) forms[static_cast<std::size_t>(k)].push_back(e.u(k, l));
  std::vector<Rational> multinom(m);
  for (std::size_t r = 0; r < m; ++r) multinom[r] = exact_multinomial(idx.unrank(r));
  std::vector<Rational> table(m * m);
  for (std::size_t c = 0; c < m; ++c) {
    const SiteConfig eta = idx.unrank(c);
    const auto coef = expand_by_multiplication(forms, eta, n);
    for (std::size_t r = 0; r < m; ++r) {
      Rational v = coef[r] / multinom[r];
      v.canonicalize();
      table[r * m + c] = v;
    }
  }
  return table;
}

MatrixXd krawtchouk_table(const Kappa& kappa, int two_j) {
  const int n = kappa.n();
  const CompositionIndexer idx(two_j, n + 1);
  const auto m = static_cast<Eigen::Index>(idx.size());
  MatrixXd K(m, m);
  if (kappa.exact() && two_j <= kExactDegreeLimit) {
    const auto t = krawtchouk_table_exact(*kappa.exact(), two_j);
    for (Eigen::Index r = 0; r < m; ++r)
      for (Eigen::Index c = 0; c < m; ++c) K(r, c) = to_double(t[static_cast<std::size_t>(r * m + c)]);
    return K;
  }
  return krawtchouk_table_raw(kappa.U(), two_j);
}

MatrixXd krawtchouk_table_raw(const MatrixXd& U, int two_j) {
  const int n = static_cast<int>(U.rows()) - 1;
  if (n < 1 || U.cols() != U.rows()) throw Error(ErrorCode::DimensionMismatch, "U must be square with n >= 1");
  const CompositionIndexer idx(two_j, n + 1);
  const auto m = static_cast<Eigen::Index>(idx.size());
  MatrixXd K(m, m);
  Forms<double> forms(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k)
    for (int l = 0; l <= n; ++l) forms[static_cast<std::size_t>(k)].push_back(U(k, l));
  for (Eigen::Index c = 0; c < m; ++c) {
    const SiteConfig eta = idx.unrank(static_cast<std::size_t>(c));
    const auto coef = expand_by_multiplication(forms, eta, n);
    for (Eigen::Index r = 0; r < m; ++r) K(r, c) = coef[static_cast<std::size_t>(r)] / multinomial(idx.unrank(static_cast<std::size_t>(r)));
  }
  return K;
}

namespace {

struct BilinearSetup {
  Forms<double> zhat;  // zhat_m = sum_k r_km z_k
  double scale = 1.0;  // A
};

BilinearSetup bilinear_setup(const Kappa& kappa, int two_j) {
  const int n = kappa.n();
  const RMatrix rq = r_matrix(kappa);
  BilinearSetup s;
  s.zhat.assign(static_cast<std::size_t>(n + 1), {});
  for (int m = 0; m <= n; ++m)
    for (int k = 0; k <= n; ++k) s.zhat[static_cast<std::size_t>(m)].push_back(rq.R(k, m));
  // normalization from K((2j,0..0),(2j,0..0)) = 1
  SiteConfig zero(static_cast<std::size_t>(n + 1), 0);
  zero[0] = two_j;
  const auto c = expand_by_multinomial(s.zhat, zero, n);
  const double form = c[0] * std::tgamma(two_j + 1.0) / std::pow(kappa.p_hat()(0), two_j);
  s.scale = 1.0 / form;
  return s;
}

double bilinear_entry(const std::vector<double>& c, std::size_t rank, std::span<const int> xi, const Kappa& kappa,
                      double scale) {
  double form = c[rank];
  for (std::size_t k = 0; k < xi.size(); ++k) {
    form *= std::tgamma(xi[k] + 1.0) / std::pow(kappa.p_hat()(static_cast<Eigen::Index>(k)), xi[k]);
  }
  return scale * form;
}

}  // namespace

double krawtchouk_gf(std::span<const int> xi, std::span<const int> eta, const Kappa& kappa, int two_j) {
  const int n = kappa.n();
  check_site_state(xi, n, two_j, "xi");
  check_site_state(eta, n, two_j, "eta");
  const CompositionIndexer idx(two_j, n + 1);
  Forms<double> forms(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k)
    for (int l = 0; l <= n; ++l) forms[static_cast<std::size_t>(k)].push_back(kappa.U()(k, l));
  const auto coef = expand_by_multiplication(forms, eta, n);
  return coef[idx.rank(xi)] / multinomial(xi);
}

double krawtchouk_bilinear(std::span<const int> xi, std::span<const int> eta, const Kappa& kappa, int two_j) {
  const int n = kappa.n();
  check_site_state(xi, n, two_j, "xi");
  check_site_state(eta, n, two_j, "eta");
  const CompositionIndexer idx(two_j, n + 1);
  const BilinearSetup s = bilinear_setup(kappa, two_j);
  const auto c = expand_by_multinomial(s.zhat, eta, n);
  return bilinear_entry(c, idx.rank(xi), xi, kappa, s.scale);
}

MatrixXd krawtchouk_table_bilinear(const Kappa& kappa, int two_j) {
  const int n = kappa.n();
  const CompositionIndexer idx(two_j, n + 1);
  const auto m = static_cast<Eigen::Index>(idx.size());
  const BilinearSetup s = bilinear_setup(kappa, two_j);
  MatrixXd K(m, m);
  for (Eigen::Index col = 0; col < m; ++col) {
    const auto c = expand_by_multinomial(s.zhat, idx.unrank(static_cast<std::size_t>(col)), n);
    for (Eigen::Index row = 0; row < m; ++row) {
      K(row, col) = bilinear_entry(c, static_cast<std::size_t>(row), idx.unrank(static_cast<std::size_t>(row)), kappa, s.scale);
    }
  }
  return K;
}

OrthogonalityReport orthogonality_sums(const Kappa& kappa, int two_j) {
  OrthogonalityReport rep;
  rep.n = kappa.n();
  rep.two_j = two_j;
  const CompositionIndexer idx(two_j, rep.n + 1);
  const std::size_t m = idx.size();
  if (kappa.exact() && two_j <= kExactDegreeLimit) {
    const ExactKappa& e = *kappa.exact();
    const auto K = krawtchouk_table_exact(e, two_j);
    std::vector<Rational> wp(m), wq(m);
    for (std::size_t r = 0; r < m; ++r) {
      const SiteConfig xi = idx.unrank(r);
      Rational a = 1, b = 1;
      for (std::size_t i = 0; i < xi.size(); ++i) {
        for (int t = 0; t < xi[i]; ++t) {
          a *= e.p[i];
          b *= e.p_hat[i];
        }
      }
      const Rational c = exact_multinomial(xi);
      wp[r] = a * c;
      wq[r] = b * c;
    }
    Rational p0pow = 1;
    for (int t = 0; t < two_j; ++t) p0pow *= e.p[0];
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        Rational s1 = 0, s2 = 0;
        for (std::size_t x = 0; x < m; ++x) {
          s1 += K[x * m + a] * K[x * m + b] * wq[x];
          s2 += K[a * m + x] * K[b * m + x] * wp[x];
        }
        const Rational t1 = a == b ? Rational(p0pow / wp[a]) : Rational(0);
        const Rational t2 = a == b ? Rational(p0pow / wq[a]) : Rational(0);
        const double d1 = std::abs(to_double(Rational(s1 - t1)));
        const double d2 = std::abs(to_double(Rational(s2 - t2)));
        const double n1 = std::sqrt(to_double(Rational(p0pow / wp[a])) * to_double(Rational(p0pow / wp[b])));
        const double n2 = std::sqrt(to_double(Rational(p0pow / wq[a])) * to_double(Rational(p0pow / wq[b])));
        rep.residual_phat = std::max(rep.residual_phat, d1);
        rep.residual_p = std::max(rep.residual_p, d2);
        rep.normalized_residual_phat = std::max(rep.normalized_residual_phat, d1 / n1);
        rep.normalized_residual_p = std::max(rep.normalized_residual_p, d2 / n2);
      }
    }
    rep.exact = true;
    rep.tolerance = 1e-12;
  } else {
    const MatrixXd K = krawtchouk_table(kappa, two_j);
    const VectorXd wp = multinomial_weights(kappa.p(), two_j);
    const VectorXd wq = multinomial_weights(kappa.p_hat(), two_j);
    const double p0pow = std::pow(kappa.p()(0), two_j);
    const MatrixXd S1 = K.transpose() * wq.asDiagonal() * K;
    const MatrixXd S2 = K * wp.asDiagonal() * K.transpose();
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        const auto ia = static_cast<Eigen::Index>(a), ib = static_cast<Eigen::Index>(b);
        const double t1 = a == b ? p0pow / wp(ia) : 0.0;
        const double t2 = a == b ? p0pow / wq(ia) : 0.0;
        const double d1 = std::abs(S1(ia, ib) - t1);
        const double d2 = std::abs(S2(ia, ib) - t2);
        rep.residual_phat = std::max(rep.residual_phat, d1);
        rep.residual_p = std::max(rep.residual_p, d2);
        rep.normalized_residual_phat = std::max(rep.normalized_residual_phat, d1 / (p0pow / std::sqrt(wp(ia) * wp(ib))));
        rep.normalized_residual_p = std::max(rep.normalized_residual_p, d2 / (p0pow / std::sqrt(wq(ia) * wq(ib))));
      }
    }
    rep.tolerance = 1e-10;
  }
  rep.pass = rep.normalized_residual_phat <= rep.tolerance && rep.normalized_residual_p <= rep.tolerance;
  return rep;
}

double swap_symmetry_defect(const Kappa& kappa, int two_j) {
  const MatrixXd K = krawtchouk_table(kappa, two_j);
  const MatrixXd Ks = krawtchouk_table(swapped_kappa(kappa), two_j);
  return (K - Ks.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace orthodual
