#include "orthodual/generators.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "orthodual/error.hpp"
#include "orthodual/krawtchouk.hpp"
#include "orthodual/charlier.hpp"

namespace orthodual {
namespace {

using Triplet = Eigen::Triplet<double>;

template <class MoveFn>
SparseOperator assemble(const ConfigSpace& space, const std::vector<Edge>& edges, MoveFn moves, std::string label) {
  std::vector<Triplet> trips;
  const int n = space.species();
  for (std::size_t r = 0; r < space.size(); ++r) {
    const Configuration c = space.unrank(r);
    double out = 0.0;
    for (const Move& mv : moves(c, edges, n)) {
      assert(space.contains(mv.target));
      trips.emplace_back(static_cast<int>(r), static_cast<int>(space.rank(mv.target)), mv.rate);
      out += mv.rate;
    }
    if (out != 0.0) trips.emplace_back(static_cast<int>(r), static_cast<int>(r), -out);
  }
  const auto N = static_cast<Eigen::Index>(space.size());
  SparseMatrix m(N, N);
  m.setFromTriplets(trips.begin(), trips.end());
  return SparseOperator(space, std::move(m), std::move(label));
}

void require(const ConfigSpace& space, ProcessKind kind, const Graph& graph) {
  if (space.kind() != kind) throw Error(ErrorCode::SpaceMismatch, "space is for the other process");
  if (!(space.graph() == graph)) throw Error(ErrorCode::SpaceMismatch, "space was enumerated on a different graph");
}

void require_edge(const ConfigSpace& space, const Edge& edge) {
  const auto& es = space.graph().edges();
  if (std::find(es.begin(), es.end(), edge) == es.end()) throw Error(ErrorCode::SpaceMismatch, "edge is not in the graph");
}

}  // namespace

std::vector<Move> sep_moves(const Configuration& c, const std::vector<Edge>& edges, int n) {
  std::vector<Move> out;
  auto swap_move = [&](int from, int to, int l, int k) {
    // species l leaves `from` for `to`, species k goes the other way
    const double rate = static_cast<double>(c.at(from, l)) * c.at(to, k);
    if (rate == 0.0) return;
    Configuration t = c;
    --t.at(from, l);
    ++t.at(from, k);
    --t.at(to, k);
    ++t.at(to, l);
    out.push_back({std::move(t), rate});
  };
  for (const Edge& e : edges) {
    for (int k = 0; k <= n; ++k) {
      for (int l = k + 1; l <= n; ++l) {
        swap_move(e.x, e.y, l, k);
        swap_move(e.y, e.x, l, k);
      }
    }
  }
  return out;
}

std::vector<Move> irw_moves(const Configuration& c, const std::vector<Edge>& edges, int n) {
  std::vector<Move> out;
  auto hop = [&](int from, int to, int i) {
    const int count = c.at(from, i);
    if (count == 0) return;
    Configuration t = c;
    --t.at(from, i);
    ++t.at(to, i);
    out.push_back({std::move(t), static_cast<double>(count)});
  };
  for (const Edge& e : edges) {
    for (int i = 0; i < n; ++i) {
      hop(e.x, e.y, i);
      hop(e.y, e.x, i);
    }
  }
  return out;
}

SparseOperator sep_generator(const ConfigSpace& space, const Graph& graph) {
  require(space, ProcessKind::Sep, graph);
  return assemble(space, graph.edges(), sep_moves, "sep-generator");
}

SparseOperator irw_generator(const ConfigSpace& space, const Graph& graph) {
  require(space, ProcessKind::Irw, graph);
  return assemble(space, graph.edges(), irw_moves, "irw-generator");
}

SparseOperator sep_edge_generator(const ConfigSpace& space, const Edge& edge) {
  if (space.kind() != ProcessKind::Sep) throw Error(ErrorCode::SpaceMismatch, "expected a SEP space");
  require_edge(space, edge);
  return assemble(space, {edge}, sep_moves, "sep-edge-generator");
}

SparseOperator irw_edge_generator(const ConfigSpace& space, const Edge& edge) {
  if (space.kind() != ProcessKind::Irw) throw Error(ErrorCode::SpaceMismatch, "expected an IRW space");
  require_edge(space, edge);
  return assemble(space, {edge}, irw_moves, "irw-edge-generator");
}

StateWeight sep_product_measure(std::vector<Eigen::VectorXd> p_by_site, int two_j) {
  if (p_by_site.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one site distribution");
  return [p = std::move(p_by_site), two_j](const Configuration& c) {
    double w = 1.0;
    for (int x = 0; x < c.num_sites(); ++x) {
      const auto& px = p.size() == 1 ? p.front() : p.at(static_cast<std::size_t>(x));
      w *= multinomial_weight(c.site(x), px, two_j);
    }
    return w;
  };
}

StateWeight irw_product_measure(double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda must be positive");
  return [lambda](const Configuration& c) {
    double w = 1.0;
    for (int x = 0; x < c.num_sites(); ++x) w *= poisson_weight(c.site(x), lambda);
    return w;
  };
}

ReversibilityReport check_detailed_balance(const SparseOperator& gen, const StateWeight& weight, std::string measure,
                                           double tolerance) {
  ReversibilityReport rep;
  rep.measure = std::move(measure);
  rep.tolerance = tolerance;
  const auto& space = gen.row_space();
  const auto& m = gen.matrix();
  std::vector<double> w(space.size());
  for (std::size_t r = 0; r < space.size(); ++r) w[r] = weight(space.unrank(r));
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
      const Eigen::Index c = it.col();
      if (c == r) continue;
      const double fwd = w[static_cast<std::size_t>(r)] * it.value();
      const double bwd = w[static_cast<std::size_t>(c)] * m.coeff(c, r);
      rep.max_violation = std::max(rep.max_violation, std::abs(fwd - bwd));
      rep.scale = std::max(rep.scale, std::abs(fwd));
    }
  }
  rep.pass = rep.max_violation <= tolerance * std::max(rep.scale, 1e-300);
  return rep;
}

}  // namespace orthodual
