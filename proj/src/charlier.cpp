#include "orthodual/charlier.hpp"

#include <algorithm>
#include <cmath>

#include "orthodual/error.hpp"

namespace orthodual {
namespace {

void check_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw Error(ErrorCode::InvalidArgument, "lambda must be positive");
}

}  // namespace

double charlier(int m, int z, double lambda) {
  check_lambda(lambda);
  if (m < 0 || z < 0) throw Error(ErrorCode::InvalidArgument, "Charlier degree and argument must be non-negative");
  // (-m)_k (-z)_k / k! = C(m,k) z!/(z-k)!
  long double coef = 1.0L;
  long double sum = 1.0L;
  long double power = 1.0L;
  const long double step = -1.0L / static_cast<long double>(lambda);
  for (int k = 1; k <= std::min(m, z); ++k) {
    coef = coef * static_cast<long double>(m - k + 1) / static_cast<long double>(k) * static_cast<long double>(z - k + 1);
    power *= step;
    sum += coef * power;
  }
  return static_cast<double>(sum);
}

double product_kernel(std::span<const int> xi, std::span<const int> eta, double lambda) {
  if (xi.size() != eta.size()) throw Error(ErrorCode::DimensionMismatch, "xi and eta must have the same length");
  double v = 1.0;
  for (std::size_t i = 0; i < xi.size(); ++i) v *= std::exp(lambda) * charlier(xi[i], eta[i], lambda);
  return v;
}

double poisson_weight(std::span<const int> xi, double lambda) {
  check_lambda(lambda);
  double w = 1.0;
  for (int v : xi) {
    if (v < 0) throw Error(ErrorCode::InvalidArgument, "counts must be non-negative");
    w *= std::exp(-lambda);
    for (int t = 1; t <= v; ++t) w *= lambda / t;
  }
  return w;
}

double charlier_norm(int m, double lambda) {
  check_lambda(lambda);
  double h = 1.0;
  for (int t = 1; t <= m; ++t) h *= t / lambda;
  return h;
}

int charlier_truncation(int m_max, double lambda, double bound) {
  check_lambda(lambda);
  if (m_max < 0 || !(bound > 0.0)) throw Error(ErrorCode::InvalidArgument, "charlier_truncation arguments");
  // |C_m(z)| <= (1 + z/lambda)^m, so the tail past Z is dominated by
  // g(z) = (1 + z/lambda)^{2 m_max} lambda^z e^{-lambda} / z!; once the ratio
  // g(z+1)/g(z) stays below 1/2 the tail is at most 2 g(Z+1).
  auto log_g = [&](int z) {
    return 2.0 * m_max * std::log1p(z / lambda) + z * std::log(lambda) - lambda - std::lgamma(z + 1.0);
  };
  for (int Z = 0; Z < 100000; ++Z) {
    const double ratio = std::exp(log_g(Z + 2) - log_g(Z + 1));
    if (ratio < 0.5 && std::log(2.0) + log_g(Z + 1) < std::log(bound)) return Z;
  }
  throw Error(ErrorCode::InvalidArgument, "no truncation found");
}

double charlier_orthogonality_sum(int m, int mt, double lambda, int Z) {
  check_lambda(lambda);
  long double sum = 0.0L;
  long double w = std::exp(-static_cast<long double>(lambda));
  for (int z = 0; z <= Z; ++z) {
    if (z > 0) w *= static_cast<long double>(lambda) / z;
    sum += static_cast<long double>(charlier(m, z, lambda)) * charlier(mt, z, lambda) * w;
  }
  return static_cast<double>(sum);
}

}  // namespace orthodual
