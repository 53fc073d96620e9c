#include "orthodual/heisenberg.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "orthodual/charlier.hpp"
#include "orthodual/error.hpp"
#include "orthodual/generators.hpp"

namespace orthodual {
namespace {

HeisenbergOp single(int n, HLetter l) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "h_n needs n >= 1");
  if (l.kind != HLetterKind::Z && (l.species < 1 || l.species > n)) {
    throw Error(ErrorCode::InvalidArgument, "species index out of range");
  }
  HeisenbergOp op(n);
  op.add({1.0, {l}});
  return op;
}

void require_same(const HeisenbergOp& a, const HeisenbergOp& b) {
  if (a.n() != b.n()) throw Error(ErrorCode::DimensionMismatch, "elements of different h_n");
}

// Moves the evaluation point through one letter: multiplies `weight` and
// shifts `point` at offset `base`. Returns false when the term vanishes.
bool step(const HLetter& l, std::vector<int>& point, std::size_t base, double lambda, double& weight) {
  switch (l.kind) {
    case HLetterKind::Z:
      weight *= lambda;
      return true;
    case HLetterKind::P:
      weight *= lambda;
      ++point[base + static_cast<std::size_t>(l.species - 1)];
      return true;
    case HLetterKind::Q: {
      int& c = point[base + static_cast<std::size_t>(l.species - 1)];
      if (c == 0) return false;
      weight *= c;
      --c;
      return true;
    }
  }
  return false;
}

}  // namespace

HeisenbergOp HeisenbergOp::P(int n, int i) { return single(n, {HLetterKind::P, i}); }
HeisenbergOp HeisenbergOp::Q(int n, int i) { return single(n, {HLetterKind::Q, i}); }
HeisenbergOp HeisenbergOp::Z(int n) { return single(n, {HLetterKind::Z, 0}); }

HeisenbergOp HeisenbergOp::unit(int n) {
  HeisenbergOp op(n);
  op.add({1.0, {}});
  return op;
}

void HeisenbergOp::add(HWord w) { terms_.push_back(std::move(w)); }

HeisenbergOp HeisenbergOp::operator+(const HeisenbergOp& o) const {
  require_same(*this, o);
  HeisenbergOp out = *this;
  out.terms_.insert(out.terms_.end(), o.terms_.begin(), o.terms_.end());
  return out;
}

HeisenbergOp HeisenbergOp::operator-(const HeisenbergOp& o) const { return *this + o * -1.0; }

HeisenbergOp HeisenbergOp::operator*(const HeisenbergOp& o) const {
  require_same(*this, o);
  HeisenbergOp out(n_);
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      HWord w{a.coef * b.coef, a.letters};
      w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
      out.terms_.push_back(std::move(w));
    }
  }
  return out;
}

HeisenbergOp HeisenbergOp::operator*(double s) const {
  HeisenbergOp out = *this;
  for (auto& w : out.terms_) w.coef *= s;
  return out;
}

HeisenbergOp HeisenbergOp::star() const {
  HeisenbergOp out(n_);
  for (const auto& w : terms_) {
    HWord s{w.coef, {w.letters.rbegin(), w.letters.rend()}};
    for (auto& l : s.letters) {
      if (l.kind == HLetterKind::P) {
        l.kind = HLetterKind::Q;
      } else if (l.kind == HLetterKind::Q) {
        l.kind = HLetterKind::P;
      }
    }
    out.terms_.push_back(std::move(s));
  }
  return out;
}

HeisenbergOp HeisenbergOp::theta() const {
  HeisenbergOp out(n_);
  for (const auto& w : terms_) {
    HeisenbergOp prod = unit(n_) * w.coef;
    for (const auto& l : w.letters) {
      HeisenbergOp image = l.kind == HLetterKind::Z ? Z(n_) : Z(n_) - single(n_, l);
      prod = prod * image;
    }
    out = out + prod;
  }
  return out;
}

int HeisenbergOp::raising_degree() const {
  int best = 0;
  for (const auto& w : terms_) {
    best = std::max(best, static_cast<int>(std::count_if(w.letters.begin(), w.letters.end(),
                                                         [](const HLetter& l) { return l.kind == HLetterKind::P; })));
  }
  return best;
}

PointValue heisenberg_eval(const HeisenbergOp& op, const std::function<double(const SiteConfig&)>& f,
                           const SiteConfig& xi, double lambda) {
  if (static_cast<int>(xi.size()) != op.n()) throw Error(ErrorCode::DimensionMismatch, "point has wrong length");
  PointValue out;
  for (const auto& w : op.terms()) {
    SiteConfig point = xi;
    double weight = w.coef;
    bool alive = true;
    for (const auto& l : w.letters) {
      if (!step(l, point, 0, lambda, weight)) {
        alive = false;
        break;
      }
    }
    if (!alive || weight == 0.0) continue;
    const double term = weight * f(point);
    out.value += term;
    out.magnitude += std::abs(term);
  }
  return out;
}

WindowFunction WindowFunction::from(int n, int M, const std::function<double(const SiteConfig&)>& f) {
  if (n < 1 || M < 0) throw Error(ErrorCode::InvalidArgument, "window needs n >= 1 and M >= 0");
  WindowFunction w{n, M, {}};
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(M + 1);
  w.values.resize(total);
  SiteConfig xi(static_cast<std::size_t>(n), 0);
  for (std::size_t r = 0; r < total; ++r) {
    std::size_t rem = r;
    for (int i = n - 1; i >= 0; --i) {
      xi[static_cast<std::size_t>(i)] = static_cast<int>(rem % static_cast<std::size_t>(M + 1));
      rem /= static_cast<std::size_t>(M + 1);
    }
    w.values[r] = f(xi);
  }
  return w;
}

bool WindowFunction::inside(const SiteConfig& xi) const {
  if (static_cast<int>(xi.size()) != n) return false;
  return std::all_of(xi.begin(), xi.end(), [&](int v) { return v >= 0 && v <= M; });
}

std::size_t WindowFunction::index(const SiteConfig& xi) const {
  if (!inside(xi)) throw Error(ErrorCode::WindowExhausted, "point outside the window");
  std::size_t r = 0;
  for (int v : xi) r = r * static_cast<std::size_t>(M + 1) + static_cast<std::size_t>(v);
  return r;
}

WindowFunction heisenberg_apply(const HeisenbergOp& op, const WindowFunction& f, double lambda) {
  if (op.n() != f.n) throw Error(ErrorCode::DimensionMismatch, "operator and window differ in n");
  const int interior = f.M - op.raising_degree();
  if (interior < 0) throw Error(ErrorCode::WindowExhausted, "raising degree exceeds the window");
  auto lookup = [&](const SiteConfig& xi) { return f.at(xi); };
  return WindowFunction::from(f.n, interior, [&](const SiteConfig& xi) {
    return heisenberg_eval(op, lookup, xi, lambda).value;
  });
}

void HeisenbergTensor::add(double coef, const HeisenbergOp& a, const HeisenbergOp& b) {
  if (a.n() != n_ || b.n() != n_) throw Error(ErrorCode::DimensionMismatch, "tensor legs of different h_n");
  for (const auto& wa : a.terms()) {
    for (const auto& wb : b.terms()) {
      terms_.push_back({coef * wa.coef * wb.coef, {1.0, wa.letters}, {1.0, wb.letters}});
    }
  }
}

HeisenbergTensor HeisenbergTensor::theta() const {
  HeisenbergTensor out(n_);
  for (const auto& t : terms_) {
    HeisenbergOp a(n_), b(n_);
    a.add(t.left);
    b.add(t.right);
    out.add(t.coef, a.theta(), b.theta());
  }
  return out;
}

HeisenbergTensor irw_Y(int n) {
  // (1 (x) Q - Q (x) 1)(P (x) 1 - 1 (x) P) = P (x) Q - 1 (x) QP - QP (x) 1 + Q (x) P.
  HeisenbergTensor y(n);
  const HeisenbergOp one = HeisenbergOp::unit(n);
  for (int i = 1; i <= n; ++i) {
    const HeisenbergOp p = HeisenbergOp::P(n, i);
    const HeisenbergOp q = HeisenbergOp::Q(n, i);
    y.add(1.0, p, q);
    y.add(-1.0, one, q * p);
    y.add(-1.0, q * p, one);
    y.add(1.0, q, p);
  }
  return y;
}

SectorAction represent_on_sector(const HeisenbergTensor& t, const ConfigSpace& space, const Edge& edge,
                                 double lambda) {
  if (space.kind() != ProcessKind::Irw || space.species() != t.n()) {
    throw Error(ErrorCode::SpaceMismatch, "tensor element and IRW sector disagree on n");
  }
  const int w = space.site_width();
  const auto base_x = static_cast<std::size_t>(edge.x * w);
  const auto base_y = static_cast<std::size_t>(edge.y * w);
  std::vector<Eigen::Triplet<double>> trips;
  double leakage = 0.0;
  for (std::size_t r = 0; r < space.size(); ++r) {
    const Configuration c = space.unrank(r);
    std::map<std::vector<int>, double> functional;
    for (const auto& term : t.terms()) {
      std::vector<int> point = c.counts();
      double weight = term.coef;
      bool alive = true;
      for (const auto& l : term.left.letters) alive = alive && step(l, point, base_x, lambda, weight);
      for (const auto& l : term.right.letters) alive = alive && step(l, point, base_y, lambda, weight);
      if (alive) functional[point] += weight;
    }
    Configuration target(space.num_sites(), w);
    for (const auto& [point, v] : functional) {
      for (int x = 0; x < space.num_sites(); ++x)
        for (int i = 0; i < w; ++i) target.at(x, i) = point[static_cast<std::size_t>(x * w + i)];
      if (space.contains(target)) {
        if (v != 0.0) trips.emplace_back(static_cast<int>(r), static_cast<int>(space.rank(target)), v);
      } else {
        leakage = std::max(leakage, std::abs(v));
      }
    }
  }
  const auto N = static_cast<Eigen::Index>(space.size());
  SparseMatrix m(N, N);
  m.setFromTriplets(trips.begin(), trips.end());
  return {SparseOperator(space, std::move(m), "heisenberg-two-site"), leakage};
}

KernelIdentityReport check_charlier_kernel_identities(double lambda, int n, int M) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda must be positive");
  KernelIdentityReport rep;
  rep.lambda = lambda;
  rep.n = n;
  rep.M = M;
  std::vector<HeisenbergOp> elements;
  for (int i = 1; i <= n; ++i) {
    elements.push_back(HeisenbergOp::P(n, i));
    elements.push_back(HeisenbergOp::Q(n, i));
  }
  elements.push_back(HeisenbergOp::Z(n));
  for (int i = 1; i <= n; ++i) {
    for (int l = 1; l <= n; ++l) {
      elements.push_back(HeisenbergOp::P(n, i) * HeisenbergOp::Q(n, l));
      elements.push_back(HeisenbergOp::Q(n, i) * HeisenbergOp::P(n, l) * 2.0 - HeisenbergOp::Z(n));
    }
  }
  const WindowFunction grid = WindowFunction::from(n, M, [](const SiteConfig&) { return 0.0; });
  SiteConfig xi(static_cast<std::size_t>(n)), eta(static_cast<std::size_t>(n));
  auto unrank = [&](std::size_t r, SiteConfig& out) {
    for (int i = n - 1; i >= 0; --i) {
      out[static_cast<std::size_t>(i)] = static_cast<int>(r % static_cast<std::size_t>(M + 1));
      r /= static_cast<std::size_t>(M + 1);
    }
  };
  for (const auto& x : elements) {
    const HeisenbergOp lhs_op = x.star();
    const HeisenbergOp rhs_op = x.theta();
    for (std::size_t a = 0; a < grid.values.size(); ++a) {
      unrank(a, xi);
      for (std::size_t b = 0; b < grid.values.size(); ++b) {
        unrank(b, eta);
        const PointValue lhs = heisenberg_eval(
            lhs_op, [&](const SiteConfig& s) { return product_kernel(s, eta, lambda); }, xi, lambda);
        const PointValue rhs = heisenberg_eval(
            rhs_op, [&](const SiteConfig& s) { return product_kernel(xi, s, lambda); }, eta, lambda);
        const double scale = std::max(lhs.magnitude, rhs.magnitude);
        if (scale > 0.0) rep.max_residual = std::max(rep.max_residual, std::abs(lhs.value - rhs.value) / scale);
        ++rep.points;
      }
    }
  }
  rep.pass = rep.max_residual <= rep.tolerance;
  return rep;
}

IrwCasimirReport check_irw_casimir_generator(double lambda, const ConfigSpace& space, const Edge& edge) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda must be positive");
  const HeisenbergTensor y = irw_Y(space.species());
  const SparseMatrix gen = irw_edge_generator(space, edge).matrix();
  SectorAction rho = represent_on_sector(y, space, edge, lambda);
  SectorAction theta = represent_on_sector(y.theta(), space, edge, lambda);
  auto max_diff = [&](const SparseMatrix& a) {
    const SparseMatrix d = a / lambda - gen;
    double m = 0.0;
    for (Eigen::Index k = 0; k < d.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(d, k); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
  };
  IrwCasimirReport rep;
  rep.lambda = lambda;
  rep.residual_rho = max_diff(rho.op.matrix());
  rep.residual_theta = max_diff(theta.op.matrix());
  rep.leakage_rho = rho.leakage / lambda;
  rep.leakage_theta = theta.leakage / lambda;
  rep.pass = std::max({rep.residual_rho, rep.residual_theta, rep.leakage_rho, rep.leakage_theta}) <= rep.tolerance;
  return rep;
}

}  // namespace orthodual
