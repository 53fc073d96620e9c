#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "orthodual/charlier.hpp"

using namespace orthodual;

namespace {

// Three-term recurrence -z C_m = lambda C_{m+1} - (m + lambda) C_m + m C_{m-1}.
double charlier_recurrence(int m, int z, double lambda) {
  double prev = 1.0, cur = 1.0 - z / lambda;
  if (m == 0) return prev;
  for (int k = 1; k < m; ++k) {
    const double next = ((k + lambda - z) * cur - k * prev) / lambda;
    prev = cur;
    cur = next;
  }
  return cur;
}

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

}  // namespace

TEST_CASE("Charlier anchor values") {
  for (double lambda : {0.5, 1.0, 2.0}) {
    for (int z = 0; z <= 20; ++z) CHECK(charlier(0, z, lambda) == 1.0);
    for (int m = 0; m <= 8; ++m) CHECK(charlier(m, 0, lambda) == 1.0);
  }
  CHECK(charlier(1, 2, 1.0) == -1.0);
}

TEST_CASE("Charlier matches the sum formula and the recurrence") {
  for (double lambda : {0.3, 0.5, 1.0, 2.0, 3.7})
    for (int m = 0; m <= 8; ++m)
      for (int z = 0; z <= 20; ++z) {
        const double v = charlier(m, z, lambda);
        CHECK(rel(v, oracle::charlier(m, z, lambda)) <= 1e-12);
        CHECK(std::abs(v - charlier_recurrence(m, z, lambda)) <= 1e-9 * std::max(1.0, std::abs(v)));
      }
}

TEST_CASE("Charlier duality in degree and argument") {
  for (double lambda : {0.5, 1.0, 2.0})
    for (int m = 0; m <= 8; ++m)
      for (int z = 0; z <= 8; ++z) CHECK(charlier(m, z, lambda) == doctest::Approx(charlier(z, m, lambda)));
}

TEST_CASE("raising and lowering identities") {
  for (double lambda : {0.5, 1.0, 2.0})
    for (int m = 0; m <= 8; ++m)
      for (int z = 0; z <= 20; ++z) {
        if (m >= 1) {
          const double lhs = m * charlier(m - 1, z, lambda);
          const double rhs = lambda * charlier(m, z, lambda) - lambda * charlier(m, z + 1, lambda);
          CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max({std::abs(lhs), lambda * std::abs(charlier(m, z, lambda)), 1.0}));
        }
        const double lhs = lambda * charlier(m + 1, z, lambda);
        const double down = z == 0 ? 0.0 : z * charlier(m, z - 1, lambda);
        const double rhs = lambda * charlier(m, z, lambda) - down;
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max({std::abs(lhs), std::abs(down), 1.0}));
      }
}

TEST_CASE("truncated orthogonality") {
  for (double lambda : {0.5, 1.0, 2.0}) {
    const int Z = charlier_truncation(8, lambda);
    CHECK(Z > 8);
    for (int m = 0; m <= 8; ++m)
      for (int mt = 0; mt <= 8; ++mt) {
        const double norm = std::sqrt(charlier_norm(m, lambda) * charlier_norm(mt, lambda));
        const double target = m == mt ? charlier_norm(m, lambda) : 0.0;
        CHECK(std::abs(charlier_orthogonality_sum(m, mt, lambda, Z) - target) / norm <= 1e-8);
      }
    CHECK(charlier_norm(3, lambda) == doctest::Approx(6.0 / std::pow(lambda, 3)));
  }
}

TEST_CASE("truncation bound is conservative") {
  for (double lambda : {0.5, 1.0, 2.0}) {
    const int Z = charlier_truncation(6, lambda);
    double tail = 0.0;
    double w = std::exp(-lambda);
    for (int z = 0; z <= Z + 200; ++z) {
      if (z > Z) tail += w * std::pow(1.0 + z / lambda, 12);
      w *= lambda / (z + 1);
    }
    CHECK(tail <= 1e-10);
  }
}

TEST_CASE("product kernel and Poisson weights") {
  const std::vector<int> zero1{0}, one{1}, zero2{0, 0}, a{1, 0}, b{2, 5}, two{2};
  for (double lambda : {0.5, 1.0, 2.0}) {
    CHECK(product_kernel(zero2, b, lambda) == doctest::Approx(std::exp(2 * lambda)));
  }
  CHECK(product_kernel(one, zero1, 1.0) == doctest::Approx(std::exp(1.0)));
  CHECK(product_kernel(a, b, 1.0) == doctest::Approx(-std::exp(2.0)));
  CHECK(poisson_weight(zero1, 1.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(poisson_weight(two, 2.0) == doctest::Approx(2.0 * std::exp(-2.0)));
  CHECK(poisson_weight(zero2, 1.0) == doctest::Approx(std::exp(-2.0)));
  for (int p = 0; p <= 3; ++p)
    for (int q = 0; q <= 3; ++q)
      for (int r = 0; r <= 4; ++r)
        for (int s = 0; s <= 4; ++s) {
          const std::vector<int> xi{p, q}, eta{r, s}, x1{p}, x2{q}, e1{r}, e2{s};
          CHECK(product_kernel(xi, eta, 1.3) ==
                doctest::Approx(product_kernel(x1, e1, 1.3) * product_kernel(x2, e2, 1.3)));
        }
}
