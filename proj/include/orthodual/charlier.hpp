#pragma once

#include <span>

namespace orthodual {

/// Charlier polynomial C_m(z, lambda) as the terminating 2F0 sum
/// sum_k (-m)_k (-z)_k / k! (-1/lambda)^k.
double charlier(int m, int z, double lambda);

/// prod_i e^lambda C_{xi_i}(eta_i, lambda).
double product_kernel(std::span<const int> xi, std::span<const int> eta, double lambda);

/// prod_i lambda^{xi_i} / xi_i! e^{-lambda}.
double poisson_weight(std::span<const int> xi, double lambda);

/// Orthogonality normalization lambda^{-m} m!.
double charlier_norm(int m, double lambda);

/// Smallest Z with the Poisson tail beyond Z, weighted by the growth bound
/// (1 + z/lambda)^{2 m_max} of C_m C_mt, below `bound`.
int charlier_truncation(int m_max, double lambda, double bound = 1e-10);

/// sum_{z=0}^{Z} C_m(z) C_mt(z) lambda^z e^{-lambda} / z!.
double charlier_orthogonality_sum(int m, int mt, double lambda, int Z);

}  // namespace orthodual
