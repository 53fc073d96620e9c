#include <cmath>
#include <memory>

#include "check_error.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "orthodual/generators.hpp"
#include "orthodual/verify.hpp"

using namespace orthodual;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

VectorXd vec(std::initializer_list<double> v) {
  VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

std::vector<int> site_vec(const Configuration& c, int x) {
  const auto s = c.site(x);
  return {s.begin(), s.end()};
}

}  // namespace

TEST_CASE("SEP product duality entries") {
  const Kappa k = kappa_from_p(vec({0.5, 0.25, 0.25}));
  const Graph g = preset_graph("path-3");
  const ConfigSpace s = enumerate_sep(g, 2, 2);
  const DualityMatrix d = build_sep_duality(s, k);
  REQUIRE(d.is_dense());

  Configuration empty = s.unrank(0);
  for (int x = 0; x < g.num_sites(); ++x) {
    empty.at(x, 0) = 2;
    empty.at(x, 1) = 0;
    empty.at(x, 2) = 0;
  }
  const std::size_t col = s.rank(empty);
  for (std::size_t r = 0; r < s.size(); ++r) CHECK(d.entry(r, col) == doctest::Approx(1.0).epsilon(1e-14));

  for (std::size_t r = 0; r < s.size(); r += 7)
    for (std::size_t c = 0; c < s.size(); c += 5) {
      const Configuration a = s.unrank(r);
      const Configuration b = s.unrank(c);
      double expected = 1.0;
      for (int x = 0; x < g.num_sites(); ++x) expected *= oracle::krawtchouk(site_vec(a, x), site_vec(b, x), k.U());
      CHECK(d.entry(r, c) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("single site duality is the Krawtchouk table") {
  const Kappa k = kappa_from_p(vec({0.2, 0.3, 0.5}));
  const ConfigSpace s = single_site_sep(2, 3);
  const DualityMatrix d = build_sep_duality(s, k);
  const MatrixXd t = krawtchouk_table(k, 3);
  CHECK((d.matrix() - t).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("edge with two states per site is a Kronecker square") {
  const Kappa k = kappa_from_p(vec({0.5, 0.5}));
  const ConfigSpace s = enumerate_sep(preset_graph("edge"), 1, 1);
  const MatrixXd d = build_sep_duality(s, k).matrix();
  MatrixXd t(2, 2);
  t << 1, 1, 1, -1;
  MatrixXd expected(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int e = 0; e < 2; ++e) expected(2 * a + b, 2 * c + e) = t(a, c) * t(b, e);
  CHECK((d - expected).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("IRW duality entries") {
  const Graph g = preset_graph("edge");
  const double lambda = 1.3;
  const ConfigSpace zero = enumerate_irw_sector(g, 2, {0, 0});
  const DualityMatrix dz = build_irw_duality(zero, zero, lambda);
  REQUIRE(dz.rows() == 1);
  CHECK(dz.entry(0, 0) == doctest::Approx(std::exp(2 * lambda * 2)));

  const ConfigSpace one = enumerate_irw_sector(g, 1, {1});
  const DualityMatrix d = build_irw_duality(one, one, lambda);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) {
      const Configuration a = one.unrank(r);
      const Configuration b = one.unrank(c);
      double expected = 1.0;
      for (int x = 0; x < 2; ++x) expected *= std::exp(lambda) * oracle::charlier(a.at(x, 0), b.at(x, 0), lambda);
      CHECK(d.entry(r, c) == doctest::Approx(expected).epsilon(1e-13));
    }

  const ConfigSpace two_a = enumerate_irw_sector(g, 2, {1, 2});
  const ConfigSpace two_b = enumerate_irw_sector(g, 2, {2, 1});
  const DualityMatrix d2 = build_irw_duality(two_a, two_b, lambda);
  for (std::size_t r = 0; r < two_a.size(); ++r)
    for (std::size_t c = 0; c < two_b.size(); ++c) {
      const Configuration a = two_a.unrank(r);
      const Configuration b = two_b.unrank(c);
      double expected = 1.0;
      for (int x = 0; x < 2; ++x)
        for (int i = 0; i < 2; ++i) expected *= std::exp(lambda) * oracle::charlier(a.at(x, i), b.at(x, i), lambda);
      CHECK(d2.entry(r, c) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("cheap duality from a reversible measure") {
  const Graph g = preset_graph("triangle");
  const ConfigSpace s = enumerate_sep(g, 2, 2);
  const VectorXd p = vec({0.2, 0.5, 0.3});
  const StateWeight w = sep_product_measure({p, p, p}, 2);
  const SparseOperator gen = sep_generator(s, g);
  const DualityReport r = duality_residual(gen, gen, cheap_duality(s, w), 1e-12);
  CHECK(r.pass);
  CHECK(r.residual <= 1e-12 * std::max(1.0, r.scale));
}

TEST_CASE("duality residuals") {
  const Graph path = preset_graph("path-3");
  const Kappa k = kappa_from_p(vec({0.5, 0.25, 0.25}));
  const ConfigSpace s = enumerate_sep(path, 2, 2);
  const SparseOperator gen = sep_generator(s, path);
  const DualityReport r = duality_residual(gen, gen, build_sep_duality(s, k));
  CHECK(r.tolerance == 1e-10);
  CHECK(r.pass);
  CHECK_FALSE(r.wall_seconds.has_value());
  CHECK(duality_residual(gen, gen, build_sep_duality(s, k), 0.0, true).wall_seconds.has_value());

  const ConfigSpace c = enumerate_sep(path, 1, 1);
  const SparseOperator gc = sep_generator(c, path);
  CHECK(duality_residual(gc, gc, build_sep_duality(c, kappa_from_p(vec({0.3, 0.7})))).pass);

  const ConfigSpace irw = enumerate_irw_sector(path, 2, {1, 1});
  const SparseOperator gi = irw_generator(irw, path);
  const DualityReport ri = duality_residual(gi, gi, build_irw_duality(irw, irw, 1.0));
  CHECK(ri.pass);
  CHECK(ri.residual <= 1e-10 * std::max(1.0, ri.scale));
}

TEST_CASE("lazy and dense duality agree") {
  const Graph path = preset_graph("path-3");
  const Kappa k = kappa_from_p(vec({0.4, 0.6}));
  const ConfigSpace s = enumerate_sep(path, 1, 3);
  const DualityMatrix dense = build_sep_duality(s, k);
  const DualityMatrix lazy = build_sep_duality(s, k, 0);
  REQUIRE(dense.is_dense());
  REQUIRE_FALSE(lazy.is_dense());
  CHECK_ERROR_CODE(lazy.matrix(), InvalidArgument);
  VectorXd row(static_cast<Eigen::Index>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK((lazy.column(i) - dense.matrix().col(static_cast<Eigen::Index>(i))).cwiseAbs().maxCoeff() <= 1e-14);
    lazy.row(i, row);
    CHECK((row.transpose() - dense.matrix().row(static_cast<Eigen::Index>(i))).cwiseAbs().maxCoeff() <= 1e-14);
  }
  const SparseOperator gen = sep_generator(s, path);
  const DualityReport a = duality_residual(gen, gen, dense);
  const DualityReport b = duality_residual(gen, gen, lazy);
  CHECK(b.pass);
  CHECK(std::abs(a.residual - b.residual) <= 1e-12);

  const ConfigSpace irw = enumerate_irw_sector(path, 1, {3});
  const DualityMatrix di = build_irw_duality(irw, irw, 0.8);
  const DualityMatrix li = build_irw_duality(irw, irw, 0.8, 0);
  for (std::size_t i = 0; i < irw.size(); ++i)
    CHECK((li.column(i) - di.matrix().col(static_cast<Eigen::Index>(i))).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("perturbed controls") {
  const Graph path = preset_graph("path-3");
  const Kappa k = kappa_from_p(vec({0.5, 0.25, 0.25}));
  const DualityReport u = perturbed_sep_residual(path, k, 2, 1, 1, 1e-3);
  CHECK(u.residual <= 1e-10 * std::max(1.0, u.scale));
  const DualityReport e = perturbed_entry_residual(path, k, 2, 1, 1, 1e-3);
  CHECK_FALSE(e.pass);
  CHECK(e.residual > 1e-6);
}

TEST_CASE("default tolerance ladder") {
  CHECK(default_duality_tolerance(1) == 1e-10);
  CHECK(default_duality_tolerance(3) == 1e-10);
  CHECK(default_duality_tolerance(4) == 1e-8);
  CHECK(default_duality_tolerance(6) == 1e-8);
}
