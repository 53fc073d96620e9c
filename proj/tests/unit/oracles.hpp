#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "orthodual/krawtchouk.hpp"
#include "orthodual/statespace.hpp"

namespace oracle {

inline double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

inline double multinomial_count(const std::vector<int>& c) {
  int total = 0;
  double denom = 1.0;
  for (int v : c) {
    total += v;
    denom *= factorial(v);
  }
  return factorial(total) / denom;
}

// Coefficient of z^xi in prod_k (sum_l U(k,l) z_l)^{eta_k}, summed over every
// ordered choice of one variable per linear factor, divided by the multinomial
// count of xi.
inline double krawtchouk(const std::vector<int>& xi, const std::vector<int>& eta, const Eigen::MatrixXd& U) {
  const int m = static_cast<int>(U.rows());
  std::vector<int> owner;
  for (int k = 0; k < m; ++k)
    for (int r = 0; r < eta[static_cast<std::size_t>(k)]; ++r) owner.push_back(k);
  const int deg = static_cast<int>(owner.size());
  std::vector<int> pick(static_cast<std::size_t>(deg), 0);
  double sum = 0.0;
  while (true) {
    std::vector<int> counts(static_cast<std::size_t>(m), 0);
    double prod = 1.0;
    for (int t = 0; t < deg; ++t) {
      ++counts[static_cast<std::size_t>(pick[static_cast<std::size_t>(t)])];
      prod *= U(owner[static_cast<std::size_t>(t)], pick[static_cast<std::size_t>(t)]);
    }
    if (counts == xi) sum += prod;
    int t = deg - 1;
    while (t >= 0 && pick[static_cast<std::size_t>(t)] == m - 1) pick[static_cast<std::size_t>(t--)] = 0;
    if (t < 0) break;
    ++pick[static_cast<std::size_t>(t)];
  }
  return sum / multinomial_count(xi);
}

inline double multinomial_weight(const std::vector<int>& xi, const Eigen::VectorXd& p) {
  double w = multinomial_count(xi);
  for (std::size_t k = 0; k < xi.size(); ++k) w *= std::pow(p(static_cast<Eigen::Index>(k)), xi[k]);
  return w;
}

// All site states (xi_0..xi_n) with sum two_j, in the library's local order.
inline std::vector<std::vector<int>> site_states(int n, int two_j) {
  const orthodual::CompositionIndexer idx(two_j, n + 1);
  std::vector<std::vector<int>> out;
  for (std::size_t r = 0; r < idx.size(); ++r) out.push_back(idx.unrank(r));
  return out;
}

// C_m(z, lambda) = sum_k binom(m,k) binom(z,k) k! (-1/lambda)^k.
inline double charlier(int m, int z, double lambda) {
  double sum = 0.0;
  for (int k = 0; k <= std::min(m, z); ++k) {
    double term = 1.0;
    for (int i = 0; i < k; ++i) term *= static_cast<double>((m - i) * (z - i)) / (i + 1);
    sum += term * std::pow(-1.0 / lambda, k);
  }
  return sum;
}

}  // namespace oracle
