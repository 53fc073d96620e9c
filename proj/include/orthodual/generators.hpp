#pragma once

#include <functional>
#include <string>
#include <vector>

#include "orthodual/sparse_operator.hpp"
#include "orthodual/statespace.hpp"

namespace orthodual {

struct Move {
  Configuration target;
  double rate = 0.0;
};

/// Moves out of `c` along `edges`: for each edge {x,y} and 0 <= k < l <= n,
/// swap an l at x with a k at y (rate xi_l^x xi_k^y) and an l at y with a k at
/// x (rate xi_l^y xi_k^x). Zero-rate moves are omitted.
std::vector<Move> sep_moves(const Configuration& c, const std::vector<Edge>& edges, int n);
/// Moves out of `c`: each species i hops x -> y at rate xi_i^x and y -> x at
/// rate xi_i^y.
std::vector<Move> irw_moves(const Configuration& c, const std::vector<Edge>& edges, int n);

SparseOperator sep_generator(const ConfigSpace& space, const Graph& graph);
SparseOperator irw_generator(const ConfigSpace& space, const Graph& graph);
/// The single-edge part L_{x,y}, acting on the full space.
SparseOperator sep_edge_generator(const ConfigSpace& space, const Edge& edge);
SparseOperator irw_edge_generator(const ConfigSpace& space, const Edge& edge);

using StateWeight = std::function<double(const Configuration&)>;

/// Product of multinomial weights; `p_by_site[x]` is the distribution at site x
/// (pass one vector to use it at every site).
StateWeight sep_product_measure(std::vector<Eigen::VectorXd> p_by_site, int two_j);
/// Product of Poisson(lambda) weights over sites and species.
StateWeight irw_product_measure(double lambda);

struct ReversibilityReport {
  double max_violation = 0.0;  // max |w(a) L(a,b) - w(b) L(b,a)|
  double scale = 0.0;          // max w(a) L(a,b)
  double tolerance = 0.0;
  std::string measure;
  bool pass = false;           // max_violation <= tolerance * scale
};

ReversibilityReport check_detailed_balance(const SparseOperator& gen, const StateWeight& weight, std::string measure,
                                           double tolerance = 1e-12);

}  // namespace orthodual
