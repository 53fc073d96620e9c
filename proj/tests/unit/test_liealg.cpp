#include <cmath>

#include "check_error.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "orthodual/generators.hpp"
#include "orthodual/simulate.hpp"
#include "orthodual/sl_algebra.hpp"
#include "orthodual/suites.hpp"

using namespace orthodual;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

std::vector<Kappa> kappas(int n, int count, std::uint64_t stream) {
  Philox4x32 rng(2024, stream);
  std::vector<Kappa> out;
  for (int i = 0; i < count; ++i) out.push_back(random_kappa(rng, n));
  return out;
}

SlElement random_element(Philox4x32& rng, int n) {
  MatrixXd m(n + 1, n + 1);
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b) m(a, b) = 2.0 * rng.uniform() - 1.0;
  m -= m.trace() / (n + 1.0) * MatrixXd::Identity(n + 1, n + 1);
  return SlElement(m);
}

double max_abs(const MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

// rho_p(e_kl) straight from the defining formula on the delta basis, e_kk as xi_k.
MatrixXd rho_oracle(const MatrixXd& x, const VectorXd& p, int two_j) {
  const int n = static_cast<int>(x.rows()) - 1;
  const auto states = oracle::site_states(n, two_j);
  const auto m = static_cast<Eigen::Index>(states.size());
  MatrixXd out = MatrixXd::Zero(m, m);
  for (Eigen::Index r = 0; r < m; ++r) {
    const auto& xi = states[static_cast<std::size_t>(r)];
    for (int k = 0; k <= n; ++k)
      for (int l = 0; l <= n; ++l) {
        if (x(k, l) == 0.0) continue;
        if (k == l) {
          out(r, r) += x(k, k) * xi[static_cast<std::size_t>(k)];
          continue;
        }
        if (xi[static_cast<std::size_t>(l)] == 0) continue;
        auto t = xi;
        --t[static_cast<std::size_t>(l)];
        ++t[static_cast<std::size_t>(k)];
        const auto c = std::find(states.begin(), states.end(), t) - states.begin();
        out(r, c) += x(k, l) * std::sqrt(p(k) / p(l)) * xi[static_cast<std::size_t>(l)];
      }
  }
  return out;
}

}  // namespace

TEST_CASE("rho_p of h_1 for one species and unit capacity") {
  VectorXd p(2);
  p << 0.5, 0.5;
  const MatrixXd h = rho_p_matrix(SlElement::h(1, 1), p, 1).dense();
  MatrixXd expected(2, 2);
  expected << -0.5, 0, 0, 0.5;
  CHECK(max_abs(h - expected) <= 1e-15);
  CHECK(rho_p_matrix(SlElement::zero(1), p, 1).matrix().nonZeros() == 0);
}

TEST_CASE("rho_p matches the defining formula") {
  Philox4x32 rng(3, 3);
  for (int n = 1; n <= 3; ++n)
    for (int two_j = 1; two_j <= 3; ++two_j) {
      const VectorXd p = random_probability(rng, n + 1);
      for (const auto& x : sl_basis(n)) {
        CHECK(max_abs(rho_p_matrix(x, p, two_j).dense() - rho_oracle(x.matrix(), p, two_j)) <= 1e-14);
      }
      const SlElement y = random_element(rng, n);
      CHECK(max_abs(rho_p_matrix(y, p, two_j).dense() - rho_oracle(y.matrix(), p, two_j)) <= 1e-13);
    }
}

TEST_CASE("rho_p and sigma_p are star representations") {
  for (int n = 1; n <= 2; ++n)
    for (const Kappa& k : kappas(n, 20, static_cast<std::uint64_t>(n)))
      for (int two_j = 1; two_j <= 2; ++two_j) {
        const VectorXd w = multinomial_weights(k.p(), two_j);
        for (const auto& x : sl_basis(n)) {
          CHECK(adjoint_defect(rho_p_matrix(x, k.p(), two_j), rho_p_matrix(x.star(), k.p(), two_j), w) <= 1e-12);
          CHECK(adjoint_defect(sigma_p_matrix(x, k, two_j), sigma_p_matrix(x.star(), k, two_j), w) <= 1e-12);
        }
      }
  VectorXd half(2);
  half << 0.5, 0.5;
  const Kappa k = kappa_from_p(half);
  const VectorXd w = multinomial_weights(half, 3);
  CHECK(adjoint_defect(sigma_p_matrix(SlElement::e(1, 0, 1), k, 3), sigma_p_matrix(SlElement::e(1, 1, 0), k, 3), w) <=
        1e-12);
}

TEST_CASE("rho_p reverses brackets") {
  Philox4x32 rng(8, 8);
  for (int n = 1; n <= 2; ++n)
    for (int two_j = 1; two_j <= 3; ++two_j) {
      const VectorXd p = random_probability(rng, n + 1);
      for (int trial = 0; trial < 5; ++trial) {
        const SlElement a = random_element(rng, n), b = random_element(rng, n);
        const MatrixXd ra = rho_p_matrix(a, p, two_j).dense(), rb = rho_p_matrix(b, p, two_j).dense();
        const MatrixXd lhs = rho_p_matrix(bracket(a, b), p, two_j).dense();
        CHECK(max_abs(lhs - (rb * ra - ra * rb)) <= 1e-12 * std::max(1.0, max_abs(lhs)));
      }
    }
  // e_01 and e_10 on one species with unit capacity: the commutator is -rho([e_01, e_10]).
  const MatrixXd a = rho_matrix(SlElement::e(1, 0, 1), 1).dense(), b = rho_matrix(SlElement::e(1, 1, 0), 1).dense();
  const MatrixXd br = rho_matrix(bracket(SlElement::e(1, 0, 1), SlElement::e(1, 1, 0)), 1).dense();
  CHECK(max_abs(a * b - b * a + br) == 0.0);
}

TEST_CASE("sigma_p routes agree") {
  for (int n = 1; n <= 2; ++n)
    for (const Kappa& k : kappas(n, 5, 10 + static_cast<std::uint64_t>(n)))
      for (int two_j = 1; two_j <= 2; ++two_j) {
        for (const auto& x : sl_basis(n)) {
          const SigmaRoutes r = sigma_p_routes(x, k, two_j);
          CHECK(r.residual <= 1e-12 * std::max(1.0, max_abs(r.explicit_sum.dense())));
        }
        CHECK(sigma_p_matrix(SlElement::zero(n), k, two_j).dense().cwiseAbs().maxCoeff() == 0.0);
      }
}

TEST_CASE("the literal composition with Ad_R is not a star representation") {
  double worst = 0.0;
  for (const Kappa& k : kappas(2, 5, 30)) {
    const VectorXd w = multinomial_weights(k.p(), 2);
    for (const auto& x : sl_basis(2)) {
      worst = std::max(worst, adjoint_defect(rho_p_matrix(ad_R(x, k), k.p_hat(), 2),
                                             rho_p_matrix(ad_R(x.star(), k), k.p_hat(), 2), w));
    }
  }
  CHECK(worst > 1e-6);
}

TEST_CASE("Ad_R is a trace-preserving automorphism that breaks the star") {
  Philox4x32 rng(4, 4);
  for (int n = 1; n <= 3; ++n)
    for (const Kappa& k : kappas(n, 10, 40 + static_cast<std::uint64_t>(n))) {
      const SlElement a = random_element(rng, n), b = random_element(rng, n);
      const MatrixXd lhs = ad_R(bracket(a, b), k).matrix();
      CHECK(max_abs(lhs - bracket(ad_R(a, k), ad_R(b, k)).matrix()) <= 1e-12 * std::max(1.0, max_abs(lhs)));
      CHECK(std::abs(ad_R(a, k).trace()) <= 1e-12 * std::max(1.0, max_abs(ad_R(a, k).matrix())));
      CHECK(max_abs(ad_R(SlElement::zero(n), k).matrix()) == 0.0);
      const RMatrix rq = r_matrix(k);
      CHECK(max_abs(ad_R(a, k).matrix() - rq.Q * a.matrix() * rq.R) <= 1e-12);
      double gap = 0.0;
      for (const auto& x : sl_basis(n)) gap = std::max(gap, max_abs(ad_R(x.star(), k).matrix() - ad_R(x, k).star().matrix()));
      CHECK(gap > 1e-6);
    }
}

TEST_CASE("antiautomorphism reverses brackets") {
  Philox4x32 rng(6, 6);
  for (const Kappa& k : kappas(2, 5, 50)) {
    const SlElement a = random_element(rng, 2), b = random_element(rng, 2);
    const MatrixXd lhs = antiautomorphism(bracket(a, b), k).matrix();
    const MatrixXd rhs = bracket(antiautomorphism(b, k), antiautomorphism(a, k)).matrix();
    CHECK(max_abs(lhs - rhs) <= 1e-12 * std::max(1.0, max_abs(lhs)));
  }
}

TEST_CASE("Casimir tensor") {
  TensorElement by_hand(1);
  by_hand.add(2.0, SlElement::e(1, 1, 0), SlElement::e(1, 0, 1));
  by_hand.add(2.0, SlElement::e(1, 0, 1), SlElement::e(1, 1, 0));
  by_hand.add(4.0, SlElement::h(1, 1), SlElement::h(1, 1));
  CHECK(max_coefficient_difference(casimir_Y(1).coefficients(), by_hand.coefficients()) <= 1e-15);
  for (int n = 1; n <= 3; ++n) {
    const TensorElement y = casimir_Y(n);
    CHECK(max_coefficient_difference(y.coefficients(), casimir_Y_expanded(n).coefficients()) <= 1e-14);
    CHECK(max_coefficient_difference(y.coefficients(), y.star().coefficients()) <= 1e-14);
    const QuadraticElement omega = casimir_omega(n);
    CHECK(max_coefficient_difference(omega.coefficients(), omega.star().coefficients()) <= 1e-14);
    TensorElement literal(n);
    for (int k = 0; k <= n; ++k)
      for (int l = k + 1; l <= n; ++l) {
        literal.add(2.0, SlElement::e(n, k, l), SlElement::e(n, l, k));
        literal.add(2.0, SlElement::e(n, l, k), SlElement::e(n, k, l));
      }
    for (int l = 1; l <= n; ++l) {
      literal.add(1.0, SlElement::h(n, l), SlElement::h_dual(n, l));
      literal.add(1.0, SlElement::h_dual(n, l), SlElement::h(n, l));
    }
    CHECK(max_coefficient_difference(y.coefficients(), literal.coefficients()) <= 1e-14);
    for (const Kappa& k : kappas(n, 5, 60 + static_cast<std::uint64_t>(n))) {
      const RMatrix rq = r_matrix(k);
      CHECK(max_coefficient_difference(y.conjugated(rq.R, rq.Q).coefficients(), y.coefficients()) <= 1e-11);
      CHECK(max_coefficient_difference(omega.conjugated(rq.R, rq.Q).coefficients(), omega.coefficients()) <= 1e-11);
    }
  }
}

TEST_CASE("Casimir of the edge reproduces the edge generator") {
  for (int n = 1; n <= 2; ++n)
    for (int two_j = 1; two_j <= 3; ++two_j) {
      const Graph g = preset_graph("path-3");
      const ConfigSpace s = enumerate_sep(g, n, two_j);
      const double c = two_j * two_j * n / (n + 1.0);
      for (const Edge& e : g.edges()) {
        const SparseOperator y =
            represent_on_edge(casimir_Y(n), s, e, [two_j](const SlElement& x) { return rho_matrix(x, two_j).dense(); });
        const MatrixXd diff = 0.5 * y.dense() - c * MatrixXd::Identity(y.rows(), y.cols()) - sep_edge_generator(s, e).dense();
        CHECK(max_abs(diff) <= 1e-12);
      }
    }
}

TEST_CASE("Casimir shift constant") {
  VectorXd half(2);
  half << 0.5, 0.5;
  const CasimirShiftReport unit = check_sep_casimir_shift(kappa_from_p(half), 1, preset_graph("edge"), Edge{0, 1});
  CHECK(unit.c_rho == doctest::Approx(0.5));
  CHECK(unit.pass);
  for (int n = 1; n <= 2; ++n)
    for (int two_j = 1; two_j <= 2; ++two_j)
      for (const Kappa& k : kappas(n, 3, 70 + static_cast<std::uint64_t>(n))) {
        const Graph g = preset_graph("triangle");
        for (const Edge& e : g.edges()) {
          const CasimirShiftReport r = check_sep_casimir_shift(k, two_j, g, e);
          CHECK(r.residual_rho <= 1e-10);
          CHECK(r.residual_sigma <= 1e-10);
          CHECK(std::abs(r.c_rho - r.c_sigma) <= 1e-10);
          CHECK(std::abs(r.c_rho - r.c_closed_form) <= 1e-10);
          CHECK(r.c_closed_form == doctest::Approx(two_j * two_j * n / (n + 1.0)));
        }
      }
}

TEST_CASE("intertwiner") {
  VectorXd half(2);
  half << 0.5, 0.5;
  const Kappa k = kappa_from_p(half);
  const MatrixXd lam = intertwiner_sep(k, 1).dense();
  MatrixXd expected(2, 2);
  expected << 1, 1, 1, -1;
  expected /= std::sqrt(2.0);
  CHECK(max_abs(lam - expected) <= 1e-15);

  for (int n = 1; n <= 2; ++n)
    for (int two_j = 1; two_j <= 3; ++two_j)
      for (const Kappa& kk : kappas(n, 5, 80 + static_cast<std::uint64_t>(n))) {
        const SparseOperator L = intertwiner_sep(kk, two_j);
        CHECK(unitarity_defect(L, kk, two_j) <= 1e-10);
        const MatrixXd D = L.dense();
        const VectorXd wp = multinomial_weights(kk.p(), two_j), wq = multinomial_weights(kk.p_hat(), two_j);
        for (Eigen::Index z = 0; z < D.cols(); ++z) {
          // Image of the dual delta delta_z / w_phat(z), that is p_0^{-j} K(z, .).
          const VectorXd image = D.col(z) / wq(z);
          const double norm2 = (image.array().square() * wp.array()).sum();
          CHECK(norm2 == doctest::Approx(1.0 / wq(z)).epsilon(1e-10));
        }
        for (const auto& x : sl_basis(n)) {
          CHECK(intertwining_residual(L, x, kk, two_j) <= 1e-10);
          CHECK(kernel_relation_residual(x, kk, two_j) <= 1e-10);
        }
      }
}
