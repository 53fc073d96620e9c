#include <cmath>

#include "check_error.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "orthodual/charlier.hpp"
#include "orthodual/generators.hpp"
#include "orthodual/heisenberg.hpp"

using namespace orthodual;
using Eigen::MatrixXd;

namespace {

double test_fn(const SiteConfig& s) {
  double v = 0.7;
  for (std::size_t i = 0; i < s.size(); ++i) v += std::sin(1.0 + s[i] * (i + 1.3)) * (s[i] + 1);
  return v;
}

double max_abs(const MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

TEST_CASE("letters act as weighted shifts") {
  const double lambda = 1.7;
  const SiteConfig at{3, 2};
  CHECK(heisenberg_eval(HeisenbergOp::Q(2, 1), test_fn, at, lambda).value == doctest::Approx(3 * test_fn({2, 2})));
  CHECK(heisenberg_eval(HeisenbergOp::Q(2, 2), test_fn, at, lambda).value == doctest::Approx(2 * test_fn({3, 1})));
  CHECK(heisenberg_eval(HeisenbergOp::P(2, 2), test_fn, at, lambda).value == doctest::Approx(lambda * test_fn({3, 3})));
  CHECK(heisenberg_eval(HeisenbergOp::Z(2), test_fn, at, lambda).value == doctest::Approx(lambda * test_fn(at)));
  CHECK(heisenberg_eval(HeisenbergOp::Q(2, 1), test_fn, {0, 4}, lambda).value == 0.0);
  CHECK(heisenberg_eval(HeisenbergOp::unit(2), test_fn, at, lambda).value == doctest::Approx(test_fn(at)));
  const HeisenbergOp theta_p = HeisenbergOp::P(2, 1).theta();
  CHECK(heisenberg_eval(theta_p, test_fn, at, lambda).value ==
        doctest::Approx(lambda * (test_fn(at) - test_fn({4, 2}))));
}

TEST_CASE("canonical commutation relations") {
  for (double lambda : {0.5, 1.0, 2.0})
    for (int n = 1; n <= 2; ++n) {
      const WindowFunction f = WindowFunction::from(n, 7, test_fn);
      for (int i = 1; i <= n; ++i)
        for (int l = 1; l <= n; ++l) {
          const HeisenbergOp c = HeisenbergOp::P(n, i) * HeisenbergOp::Q(n, l) - HeisenbergOp::Q(n, l) * HeisenbergOp::P(n, i);
          const WindowFunction out = heisenberg_apply(c, f, lambda);
          const WindowFunction z = heisenberg_apply(HeisenbergOp::Z(n), f, lambda);
          for (const auto& xi : std::vector<SiteConfig>(1, SiteConfig(static_cast<std::size_t>(n), 2))) {
            const double expected = i == l ? z.at(xi) : 0.0;
            CHECK(out.at(xi) == doctest::Approx(expected).epsilon(1e-12));
          }
        }
    }
}

TEST_CASE("star and theta") {
  const HeisenbergOp pq = HeisenbergOp::P(2, 1) * HeisenbergOp::Q(2, 2);
  const HeisenbergOp s = pq.star();
  REQUIRE(s.terms().size() == 1);
  CHECK(s.terms()[0].letters == std::vector<HLetter>{{HLetterKind::P, 2}, {HLetterKind::Q, 1}});
  CHECK(HeisenbergOp::Z(1).star().terms()[0].letters == std::vector<HLetter>{{HLetterKind::Z, 0}});
  const HeisenbergOp t = HeisenbergOp::P(1, 1).theta();
  CHECK(t.terms().size() == 2);
  CHECK(pq.raising_degree() == 1);
  CHECK((pq * pq).raising_degree() == 2);
  // theta preserves the commutator [P, Q] = Z.
  const int n = 1;
  const WindowFunction f = WindowFunction::from(n, 8, test_fn);
  const HeisenbergOp c = HeisenbergOp::P(n, 1).theta() * HeisenbergOp::Q(n, 1).theta() -
                         HeisenbergOp::Q(n, 1).theta() * HeisenbergOp::P(n, 1).theta();
  const WindowFunction out = heisenberg_apply(c, f, 1.3);
  const WindowFunction z = heisenberg_apply(HeisenbergOp::Z(n), f, 1.3);
  for (int x = 0; x <= out.M; ++x) CHECK(out.at({x}) == doctest::Approx(z.at({x})).epsilon(1e-12));
}

TEST_CASE("window bookkeeping") {
  const WindowFunction f = WindowFunction::from(1, 2, test_fn);
  CHECK(f.values.size() == 3);
  CHECK(f.inside({2}));
  CHECK_FALSE(f.inside({3}));
  const HeisenbergOp ppp = HeisenbergOp::P(1, 1) * HeisenbergOp::P(1, 1) * HeisenbergOp::P(1, 1);
  CHECK_ERROR_CODE(heisenberg_apply(ppp, f, 1.0), WindowExhausted);
  CHECK(heisenberg_apply(HeisenbergOp::P(1, 1), f, 1.0).M == 1);
}

TEST_CASE("kernel identities for the Charlier product kernel") {
  for (double lambda : {0.5, 1.0, 2.0}) {
    const KernelIdentityReport one = check_charlier_kernel_identities(lambda, 1, 6);
    CHECK(one.pass);
    CHECK(one.max_residual <= 1e-9);
    const KernelIdentityReport two = check_charlier_kernel_identities(lambda, 2, 5);
    CHECK(two.pass);
    CHECK(two.points > one.points);
  }
  const SiteConfig zero{0};
  const auto kernel_in_xi = [&](const SiteConfig& xi) { return product_kernel(xi, zero, 1.0); };
  CHECK(heisenberg_eval(HeisenbergOp::Q(1, 1), kernel_in_xi, zero, 1.0).value == 0.0);
  CHECK(heisenberg_eval(HeisenbergOp::Q(1, 1).star(), kernel_in_xi, zero, 1.0).value ==
        doctest::Approx(product_kernel(SiteConfig{1}, zero, 1.0)));
}

TEST_CASE("IRW Casimir tensor reproduces the edge generator") {
  CHECK(irw_Y(2).terms().size() == 8);
  const Graph edge = preset_graph("edge");
  const ConfigSpace one = enumerate_irw_sector(edge, 1, {1});
  const SectorAction a = represent_on_sector(irw_Y(1), one, Edge{0, 1}, 1.0);
  MatrixXd hop(2, 2);
  hop << -1, 1, 1, -1;
  CHECK(max_abs(a.op.dense() - hop) <= 1e-15);
  CHECK(a.leakage <= 1e-15);

  for (const char* name : {"edge", "path-3", "triangle"}) {
    const Graph g = preset_graph(name);
    for (const auto& totals : std::vector<std::vector<int>>{{0}, {2}, {4}, {1, 1}, {2, 1}, {0, 3}}) {
      const ConfigSpace s = enumerate_irw_sector(g, static_cast<int>(totals.size()), totals);
      for (const Edge& e : g.edges()) {
        const MatrixXd target = irw_edge_generator(s, e).dense();
        MatrixXd first;
        for (double lambda : {0.5, 1.0, 3.0}) {
          const SectorAction r = represent_on_sector(irw_Y(s.species()), s, e, lambda);
          const SectorAction t = represent_on_sector(irw_Y(s.species()).theta(), s, e, lambda);
          const MatrixXd scaled = r.op.dense() / lambda;
          CHECK(max_abs(scaled - target) <= 1e-12);
          CHECK(max_abs(t.op.dense() / lambda - target) <= 1e-12);
          if (first.size() == 0) first = scaled;
          CHECK(max_abs(scaled - first) <= 1e-12);
          const IrwCasimirReport rep = check_irw_casimir_generator(lambda, s, e);
          CHECK(rep.pass);
        }
      }
      if (totals == std::vector<int>{0}) {
        const SectorAction z = represent_on_sector(irw_Y(1), s, g.edges()[0], 1.0);
        CHECK(max_abs(z.op.dense()) == 0.0);
      }
    }
  }
}
