#include "orthodual/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "orthodual/charlier.hpp"
#include "orthodual/error.hpp"
#include "orthodual/generators.hpp"
#include "orthodual/heisenberg.hpp"
#include "orthodual/sl_algebra.hpp"
#include "orthodual/verify.hpp"

namespace orthodual {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Params = std::vector<std::pair<std::string, std::string>>;

std::string str(int v) { return std::to_string(v); }

std::string str(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

double max_abs(const MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

struct Recorder {
  std::string suite;
  std::vector<CheckRecord> records;

  CheckRecord& add(std::string check, Params params, std::string metric, double value, double threshold,
                   Comparison cmp = Comparison::AtMost, std::string note = {}) {
    CheckRecord r;
    r.suite = suite;
    r.check = std::move(check);
    r.parameters = std::move(params);
    r.metric = std::move(metric);
    r.value = value;
    r.threshold = threshold;
    r.comparison = cmp;
    r.note = std::move(note);
    r.decide();
    records.push_back(std::move(r));
    return records.back();
  }
};

std::vector<Graph> acceptance_graphs() {
  return {preset_graph("edge"), preset_graph("path-3"), preset_graph("triangle")};
}

std::string graph_name(const Graph& g) {
  if (g == preset_graph("edge")) return "edge";
  if (g == preset_graph("path-3")) return "path-3";
  if (g == preset_graph("triangle")) return "triangle";
  return g.describe();
}

Kappa uniform_exact_kappa(int n) {
  std::vector<Rational> p(static_cast<std::size_t>(n + 1), Rational(1, n + 1));
  return kappa_from_p(p);
}

// 1
void kappa_validity(Recorder& rec, const SuiteOptions& opt) {
  Philox4x32 rng(opt.seed, 1);
  struct Worst {
    double c1 = 0, c2 = 0, c3 = 0, sum = 0;
    int count = 0;
  };
  std::vector<Worst> worst(4);
  for (int i = 0; i < 50; ++i) {
    const int n = 1 + i % 3;
    const Kappa k = kappa_from_p(random_probability(rng, n + 1));
    Worst& w = worst[static_cast<std::size_t>(n)];
    w.c1 = std::max({w.c1, std::abs(k.p()(0) * k.nu() - 1.0), std::abs(k.p_hat()(0) * k.nu() - 1.0)});
    for (int l = 0; l <= n; ++l) w.c2 = std::max({w.c2, std::abs(k.U()(0, l) - 1.0), std::abs(k.U()(l, 0) - 1.0)});
    MatrixXd g = k.nu() * k.p().asDiagonal() * k.U() * k.p_hat().asDiagonal() * k.U().transpose();
    w.c3 = std::max(w.c3, max_abs(g - MatrixXd::Identity(n + 1, n + 1)));
    w.sum = std::max(w.sum, std::abs(k.p_hat().sum() - 1.0));
    ++w.count;
  }
  for (int n = 1; n <= 3; ++n) {
    const Worst& w = worst[static_cast<std::size_t>(n)];
    const Params p{{"n", str(n)}, {"kappas", str(w.count)}};
    rec.add("border_nu", p, "residual", w.c1, 1e-12);
    rec.add("border_ones", p, "residual", w.c2, 1e-12);
    rec.add("gram_identity", p, "residual", w.c3, 1e-12);
    rec.add("p_hat_sum", p, "residual", w.sum, 1e-12);
  }
}

std::vector<Kappa> grid_kappas(Philox4x32& rng, int n, int count) {
  std::vector<Kappa> out;
  out.push_back(uniform_exact_kappa(n));
  for (int i = 0; i < count; ++i) out.push_back(random_kappa(rng, n));
  return out;
}

// 2
void route_equivalence(Recorder& rec, const SuiteOptions& opt) {
  Philox4x32 rng(opt.seed, 2);
  for (int n = 1; n <= 3; ++n) {
    for (int two_j = 1; two_j <= 4; ++two_j) {
      double worst = 0.0;
      const auto kappas = grid_kappas(rng, n, 4);
      for (const Kappa& k : kappas) {
        const MatrixXd a = krawtchouk_table(k, two_j);
        const MatrixXd b = krawtchouk_table_bilinear(k, two_j);
        const MatrixXd scale = a.cwiseAbs().cwiseMax(1.0);
        worst = std::max(worst, ((a - b).cwiseAbs().array() / scale.array()).maxCoeff());
      }
      rec.add("gf_vs_bilinear", {{"n", str(n)}, {"2j", str(two_j)}, {"kappas", str(static_cast<int>(kappas.size()))}},
              "relative", worst, 1e-10);
    }
  }
}

// 3
void orthogonality(Recorder& rec, const SuiteOptions& opt) {
  Philox4x32 rng(opt.seed, 3);
  for (int n = 1; n <= 3; ++n) {
    for (int two_j = 1; two_j <= 4; ++two_j) {
      double worst_hat = 0.0, worst_p = 0.0;
      const auto kappas = grid_kappas(rng, n, 4);
      for (const Kappa& k : kappas) {
        const OrthogonalityReport r = orthogonality_sums(k, two_j);
        worst_hat = std::max(worst_hat, r.normalized_residual_phat);
        worst_p = std::max(worst_p, r.normalized_residual_p);
      }
      const Params p{{"n", str(n)}, {"2j", str(two_j)}, {"kappas", str(static_cast<int>(kappas.size()))}};
      rec.add("sum_over_w_phat", p, "normalized", worst_hat, 1e-10);
      rec.add("sum_over_w_p", p, "normalized", worst_p, 1e-10);
    }
  }
}

// 4
void reversibility(Recorder& rec, const SuiteOptions& opt) {
  Philox4x32 rng(opt.seed, 4);
  for (const Graph& g : acceptance_graphs()) {
    double worst = 0.0;
    int runs = 0;
    for (int n = 1; n <= 3; ++n) {
      for (int two_j = 1; two_j <= 3; ++two_j) {
        const ConfigSpace space = enumerate_sep(g, n, two_j);
        const SparseOperator gen = sep_generator(space, g);
        for (int rep = 0; rep < 2; ++rep) {
          const VectorXd p = random_probability(rng, n + 1);
          const ReversibilityReport r = check_detailed_balance(gen, sep_product_measure({p}, two_j), "w_p");
          worst = std::max(worst, r.scale > 0 ? r.max_violation / r.scale : r.max_violation);
          ++runs;
        }
      }
    }
    rec.add("sep_detailed_balance", {{"graph", graph_name(g)}, {"n", "1..3"}, {"2j", "1..3"}, {"runs", str(runs)}},
            "relative", worst, 1e-12);
  }
  const std::vector<std::vector<int>> sectors{{1}, {3}, {4}, {1, 1}, {2, 1}, {1, 3}, {4, 4}};
  for (const Graph& g : acceptance_graphs()) {
    double worst = 0.0;
    int runs = 0;
    for (const auto& totals : sectors) {
      const ConfigSpace space = enumerate_irw_sector(g, static_cast<int>(totals.size()), totals);
      const SparseOperator gen = irw_generator(space, g);
      for (double lambda : {0.5, 1.0, 2.0}) {
        const ReversibilityReport r = check_detailed_balance(gen, irw_product_measure(lambda), "mu_lambda");
        worst = std::max(worst, r.scale > 0 ? r.max_violation / r.scale : r.max_violation);
        ++runs;
      }
    }
    rec.add("irw_detailed_balance", {{"graph", graph_name(g)}, {"lambda", "0.5,1,2"}, {"runs", str(runs)}},
            "relative", worst, 1e-12);
  }
}

// 5
void sep_duality(Recorder& rec, const SuiteOptions& opt) {
  Philox4x32 rng(opt.seed, 5);
  for (int n = 1; n <= 3; ++n) {
    for (int two_j = 1; two_j <= 3; ++two_j) {
      std::vector<Kappa> kappas;
      for (int i = 0; i < 20; ++i) kappas.push_back(random_kappa(rng, n));
      for (const Graph& g : acceptance_graphs()) {
        const ConfigSpace space = enumerate_sep(g, n, two_j);
        const SparseOperator gen = sep_generator(space, g);
        double worst = 0.0, worst_abs = 0.0;
        const double tol = default_duality_tolerance(two_j);
        for (const Kappa& k : kappas) {
          const DualityReport r = duality_residual(gen, gen, build_sep_duality(space, k), tol);
          worst = std::max(worst, r.residual / std::max(1.0, r.scale));
          worst_abs = std::max(worst_abs, r.residual);
        }
        std::ostringstream note;
        note << "max absolute " << format_value("residual", worst_abs);
        rec.add("self_duality",
                {{"n", str(n)}, {"2j", str(two_j)}, {"graph", graph_name(g)}, {"states", str(static_cast<int>(space.size()))},
                 {"kappas", "20"}},
                "relative", worst, tol, Comparison::AtMost, note.str());
      }
      const Params control_p{{"n", str(n)}, {"2j", str(two_j)}, {"graph", "path-3"}};
      const DualityReport u_shift = perturbed_sep_residual(preset_graph("path-3"), kappas.front(), two_j, 1, 1, 1e-3);
      Params up = control_p;
      up.emplace_back("perturbation", "U(1,1)+=1e-3");
      rec.add("perturbed_U_remains_dual", up, "relative", u_shift.residual / std::max(1.0, u_shift.scale),
              default_duality_tolerance(two_j));
      const DualityReport control = perturbed_entry_residual(preset_graph("path-3"), kappas.front(), two_j, 1, 1, 1e-3);
      Params cp = control_p;
      cp.emplace_back("perturbation", "D(1,1)+=1e-3");
      rec.add("negative_control", cp, "residual", control.residual, 1e-6, Comparison::Above);
    }
  }
}

// 6
void irw_duality(Recorder& rec, const SuiteOptions&) {
  std::vector<std::vector<int>> one, two;
  for (int a = 0; a <= 4; ++a) one.push_back({a});
  two = {{0, 0}, {1, 1}, {2, 1}, {1, 3}, {4, 4}, {4, 0}, {2, 2}};
  for (const Graph& g : acceptance_graphs()) {
    for (double lambda : {0.5, 1.0, 2.0}) {
      for (const auto* list : {&one, &two}) {
        double worst = 0.0;
        int pairs = 0;
        std::vector<ConfigSpace> spaces;
        std::vector<SparseOperator> gens;
        for (const auto& t : *list) {
          spaces.push_back(enumerate_irw_sector(g, static_cast<int>(t.size()), t));
          gens.push_back(irw_generator(spaces.back(), g));
        }
        for (std::size_t a = 0; a < spaces.size(); ++a) {
          for (std::size_t b = 0; b < spaces.size(); ++b) {
            const DualityReport r = duality_residual(gens[a], gens[b], build_irw_duality(spaces[a], spaces[b], lambda));
            worst = std::max(worst, r.residual / std::max(1.0, r.scale));
            ++pairs;
          }
        }
        rec.add("self_duality",
                {{"n", str(static_cast<int>(list->front().size()))}, {"graph", graph_name(g)}, {"lambda", str(lambda)},
                 {"sector_pairs", str(pairs)}},
                "relative", worst, 1e-10);
      }
    }
  }
}

// 7
void lie_suite(Recorder& rec, const SuiteOptions& opt) {
  Philox4x32 rng(opt.seed, 7);
  auto random_element = [&](int n) {
    MatrixXd m(n + 1, n + 1);
    for (int a = 0; a <= n; ++a)
      for (int b = 0; b <= n; ++b) m(a, b) = 2.0 * rng.uniform() - 1.0;
    m -= (m.trace() / (n + 1.0)) * MatrixXd::Identity(n + 1, n + 1);
    return SlElement(m);
  };

  double rho_adj = 0, sigma_adj = 0, routes = 0, hom = 0, bracket_defect = 0, trace_defect = 0, y_inv = 0;
  double star_gap = INFINITY;
  double unit = 0, inter = 0, kern = 0;
  for (int n = 1; n <= 2; ++n) {
    std::vector<Kappa> kappas;
    for (int i = 0; i < 20; ++i) kappas.push_back(random_kappa(rng, n));
    const auto basis = sl_basis(n);
    const TensorElement y = casimir_Y(n);
    for (const Kappa& k : kappas) {
      for (int two_j = 1; two_j <= 2; ++two_j) {
        const VectorXd wp = multinomial_weights(k.p(), two_j);
        for (const auto& x : basis) {
          rho_adj = std::max(rho_adj, adjoint_defect(rho_p_matrix(x, k.p(), two_j), rho_p_matrix(x.star(), k.p(), two_j), wp));
          const SigmaRoutes r = sigma_p_routes(x, k, two_j);
          routes = std::max(routes, r.residual / std::max(1.0, max_abs(r.explicit_sum.dense())));
          sigma_adj = std::max(sigma_adj, adjoint_defect(sigma_p_matrix(x, k, two_j), sigma_p_matrix(x.star(), k, two_j), wp));
        }
        const SlElement a = random_element(n), b = random_element(n);
        const MatrixXd lhs = rho_p_matrix(bracket(a, b), k.p(), two_j).dense();
        const MatrixXd ra = rho_p_matrix(a, k.p(), two_j).dense(), rb = rho_p_matrix(b, k.p(), two_j).dense();
        hom = std::max(hom, max_abs(lhs - (rb * ra - ra * rb)) / std::max(1.0, max_abs(lhs)));
      }
      const SlElement a = random_element(n), b = random_element(n);
      const MatrixXd lhs = ad_R(bracket(a, b), k).matrix();
      const MatrixXd rhs = bracket(ad_R(a, k), ad_R(b, k)).matrix();
      bracket_defect = std::max(bracket_defect, max_abs(lhs - rhs) / std::max(1.0, max_abs(lhs)));
      trace_defect = std::max(trace_defect, std::abs(ad_R(a, k).trace()) / std::max(1.0, max_abs(ad_R(a, k).matrix())));
      const RMatrix rq = r_matrix(k);
      const auto cy = y.coefficients();
      const auto cyr = y.conjugated(rq.R, rq.Q).coefficients();
      double ymax = 0.0;
      for (double v : cy) ymax = std::max(ymax, std::abs(v));
      y_inv = std::max(y_inv, max_coefficient_difference(cy, cyr) / std::max(1.0, ymax));
      double gap = 0.0;
      for (const auto& x : basis) gap = std::max(gap, max_abs(ad_R(x.star(), k).matrix() - ad_R(x, k).star().matrix()));
      star_gap = std::min(star_gap, gap);
      for (int two_j = 1; two_j <= 3; ++two_j) {
        const SparseOperator lambda = intertwiner_sep(k, two_j);
        unit = std::max(unit, unitarity_defect(lambda, k, two_j));
        for (const auto& x : basis) {
          inter = std::max(inter, intertwining_residual(lambda, x, k, two_j));
          kern = std::max(kern, kernel_relation_residual(x, k, two_j));
        }
      }
    }
  }
  const Params small{{"n", "1..2"}, {"2j", "1..2"}, {"kappas", "20 per n"}};
  rec.add("rho_p_star_adjoint", small, "relative", rho_adj, 1e-12);
  rec.add("sigma_p_star_adjoint", small, "relative", sigma_adj, 1e-12);
  rec.add("sigma_p_route_agreement", small, "relative", routes, 1e-12);
  rec.add("rho_p_reversed_bracket", small, "relative", hom, 1e-12);
  rec.add("ad_R_bracket", {{"n", "1..2"}, {"kappas", "20 per n"}}, "relative", bracket_defect, 1e-12);
  rec.add("ad_R_trace", {{"n", "1..2"}, {"kappas", "20 per n"}}, "relative", trace_defect, 1e-12);
  rec.add("ad_R_tensor_Y_invariant", {{"n", "1..2"}, {"kappas", "20 per n"}}, "relative", y_inv, 1e-12);
  rec.add("ad_R_breaks_star", {{"n", "1..2"}, {"kappas", "20 per n"}}, "min_gap", star_gap, 1e-6, Comparison::Above);
  const Params inter_p{{"n", "1..2"}, {"2j", "1..3"}, {"kappas", "20 per n"}};
  rec.add("intertwiner_unitary", inter_p, "residual", unit, 1e-10);
  rec.add("intertwiner_relation", inter_p, "relative", inter, 1e-10);
  rec.add("kernel_relation", inter_p, "relative", kern, 1e-10);

  double omega_star = 0, y_star = 0, y_forms = 0;
  for (int n = 1; n <= 3; ++n) {
    const QuadraticElement omega = casimir_omega(n);
    omega_star = std::max(omega_star, max_coefficient_difference(omega.coefficients(), omega.star().coefficients()));
    const TensorElement y = casimir_Y(n);
    y_star = std::max(y_star, max_coefficient_difference(y.coefficients(), y.star().coefficients()));
    y_forms = std::max(y_forms, max_coefficient_difference(y.coefficients(), casimir_Y_expanded(n).coefficients()));
  }
  rec.add("omega_self_adjoint", {{"n", "1..3"}}, "residual", omega_star, 1e-14);
  rec.add("Y_self_adjoint", {{"n", "1..3"}}, "residual", y_star, 1e-14);
  rec.add("Y_coproduct_vs_expanded", {{"n", "1..3"}}, "residual", y_forms, 1e-14);

  for (int n = 1; n <= 2; ++n) {
    for (int two_j = 1; two_j <= 2; ++two_j) {
      double res_rho = 0, res_sigma = 0, c_routes = 0, c_closed = 0, c_value = 0;
      for (int i = 0; i < 5; ++i) {
        const Kappa k = random_kappa(rng, n);
        for (const Graph& g : {preset_graph("edge"), preset_graph("path-3")}) {
          for (const Edge& e : g.edges()) {
            const CasimirShiftReport r = measure_sep_casimir_shift(k, two_j, g, e);
            res_rho = std::max(res_rho, r.residual_rho);
            res_sigma = std::max(res_sigma, r.residual_sigma);
            c_routes = std::max(c_routes, std::abs(r.c_rho - r.c_sigma));
            c_closed = std::max(c_closed, std::abs(r.c_rho - r.c_closed_form));
            c_value = r.c_rho;
          }
        }
      }
      const Params p{{"n", str(n)}, {"2j", str(two_j)}, {"kappas", "5"}, {"graphs", "edge,path-3"}};
      rec.add("casimir_shift_rho", p, "residual", res_rho, 1e-10);
      rec.add("casimir_shift_sigma", p, "residual", res_sigma, 1e-10);
      rec.add("casimir_shift_routes_agree", p, "residual", c_routes, 1e-10);
      rec.add("casimir_shift_closed_form", p, "residual", c_closed, 1e-10, Comparison::AtMost,
              "c = " + format_value("c", c_value) + ", (2j)^2 n/(n+1)");
    }
  }

  for (int n = 1; n <= 2; ++n) {
    for (double lambda : {0.5, 1.0, 2.0}) {
      const KernelIdentityReport r = check_charlier_kernel_identities(lambda, n, 8);
      rec.add("charlier_kernel_relation", {{"n", str(n)}, {"lambda", str(lambda)}, {"M", "8"}}, "relative",
              r.max_residual, 1e-9);
    }
  }
  double comm = 0.0;
  for (int n = 1; n <= 2; ++n) {
    for (int i = 1; i <= n; ++i) {
      const HeisenbergOp c = HeisenbergOp::P(n, i) * HeisenbergOp::Q(n, i) - HeisenbergOp::Q(n, i) * HeisenbergOp::P(n, i) -
                             HeisenbergOp::Z(n);
      const auto f = WindowFunction::from(n, 6, [](const SiteConfig& s) {
        double v = 1.0;
        for (int t : s) v = v * (t + 1.5) - 0.25 * t * t;
        return v;
      });
      const WindowFunction out = heisenberg_apply(c, f, 1.7);
      for (double v : out.values) comm = std::max(comm, std::abs(v) / std::max(1.0, *std::max_element(f.values.begin(), f.values.end())));
    }
  }
  rec.add("heisenberg_commutator", {{"n", "1..2"}, {"lambda", "1.7"}, {"M", "6"}}, "relative", comm, 1e-12);

  const std::vector<std::vector<int>> sectors{{0}, {1}, {2}, {4}, {1, 1}, {2, 1}, {0, 3}};
  for (const Graph& g : acceptance_graphs()) {
    double rho = 0, theta = 0, leak = 0;
    for (const auto& t : sectors) {
      const ConfigSpace space = enumerate_irw_sector(g, static_cast<int>(t.size()), t);
      for (double lambda : {0.5, 1.0, 3.0}) {
        for (const Edge& e : g.edges()) {
          const IrwCasimirReport r = check_irw_casimir_generator(lambda, space, e);
          rho = std::max(rho, r.residual_rho);
          theta = std::max(theta, r.residual_theta);
          leak = std::max({leak, r.leakage_rho, r.leakage_theta});
        }
      }
    }
    const Params p{{"graph", graph_name(g)}, {"lambda", "0.5,1,3"}, {"sectors", str(static_cast<int>(sectors.size()))}};
    rec.add("irw_generator_from_Y", p, "residual", rho, 1e-12);
    rec.add("irw_generator_from_theta_Y", p, "residual", theta, 1e-12);
    rec.add("irw_out_of_sector_terms", p, "residual", leak, 1e-12);
  }
}

// 8
void charlier_suite(Recorder& rec, const SuiteOptions&) {
  for (double lambda : {0.5, 1.0, 2.0}) {
    const int Z = charlier_truncation(8, lambda, 1e-10);
    double orth = 0.0;
    for (int m = 0; m <= 8; ++m) {
      for (int mt = 0; mt <= 8; ++mt) {
        const double target = m == mt ? charlier_norm(m, lambda) : 0.0;
        const double s = charlier_orthogonality_sum(m, mt, lambda, Z);
        orth = std::max(orth, std::abs(s - target) / std::sqrt(charlier_norm(m, lambda) * charlier_norm(mt, lambda)));
      }
    }
    rec.add("orthogonality", {{"lambda", str(lambda)}, {"m", "0..8"}, {"Z", str(Z)}}, "normalized", orth, 1e-8);
    double raise = 0.0, lower = 0.0;
    for (int m = 0; m <= 8; ++m) {
      for (int z = 0; z <= 20; ++z) {
        if (m >= 1) {
          const double a = m * charlier(m - 1, z, lambda);
          const double b = lambda * charlier(m, z, lambda);
          const double c = lambda * charlier(m, z + 1, lambda);
          raise = std::max(raise, std::abs(a - (b - c)) / std::max({std::abs(a), std::abs(b), std::abs(c), 1e-300}));
        }
        const double a = lambda * charlier(m + 1, z, lambda);
        const double b = lambda * charlier(m, z, lambda);
        const double c = z == 0 ? 0.0 : z * charlier(m, z - 1, lambda);
        lower = std::max(lower, std::abs(a - (b - c)) / std::max({std::abs(a), std::abs(b), std::abs(c), 1e-300}));
      }
    }
    rec.add("raising", {{"lambda", str(lambda)}, {"m", "1..8"}, {"z", "0..20"}}, "relative", raise, 1e-12);
    rec.add("lowering", {{"lambda", str(lambda)}, {"m", "0..8"}, {"z", "0..20"}}, "relative", lower, 1e-12);
  }
}

// 9
void mc_suite(Recorder& rec, const SuiteOptions& opt) {
  struct Case {
    std::string name;
    ProcessSpec process;
    std::function<DualityMatrix()> build;
    std::size_t xi0, eta0;
    double T;
  };
  const Graph edge = preset_graph("edge");
  const Kappa k1 = kappa_from_p(std::vector<Rational>{Rational(1, 3), Rational(2, 3)});
  std::vector<Case> cases;
  for (int two_j : {1, 2}) {
    cases.push_back({"sep_n1_2j" + str(two_j), {ProcessKind::Sep, 1, edge},
                     [=] { return build_sep_duality(enumerate_sep(edge, 1, two_j), k1); }, 1, 2, 0.5});
  }
  cases.push_back({"irw_n1_N1", {ProcessKind::Irw, 1, edge},
                   [=] {
                     const ConfigSpace s = enumerate_irw_sector(edge, 1, {1});
                     return build_irw_duality(s, s, 1.0);
                   },
                   0, 1, 1.0});
  cases.push_back({"irw_n2_N11", {ProcessKind::Irw, 2, edge},
                   [=] {
                     const ConfigSpace s = enumerate_irw_sector(edge, 2, {1, 1});
                     return build_irw_duality(s, s, 1.0);
                   },
                   0, 3, 1.0});
  std::uint64_t salt = 0;
  for (const Case& c : cases) {
    const DualityMatrix d = c.build();
    const McDualityResult r = mc_duality_test(c.process, d, c.xi0, c.eta0, c.T, opt.mc_samples, opt.seed + 1000 * ++salt,
                                              opt.threads);
    const Params p{{"case", c.name}, {"T", str(c.T)}, {"xi0", d.row_space().unrank(c.xi0).to_string()},
                   {"eta0", d.col_space().unrank(c.eta0).to_string()}, {"samples", std::to_string(opt.mc_samples)}};
    std::ostringstream note;
    note.precision(6);
    note << "forward " << r.mean_forward << " +- " << r.stderr_forward << ", dual " << r.mean_dual << " +- "
         << r.stderr_dual;
    if (r.exact) note << ", exact " << *r.exact;
    rec.add("forward_vs_dual", p, "z", r.z, 4.0, Comparison::AtMost, note.str());
    rec.add("forward_vs_exact", p, "z", r.z_forward_exact.value_or(INFINITY), 4.0);
    rec.add("dual_vs_exact", p, "z", r.z_dual_exact.value_or(INFINITY), 4.0);
  }
}

// 10
void determinism(Recorder& rec, const SuiteOptions& opt) {
  SuiteOptions small = opt;
  small.mc_samples = std::min<std::size_t>(opt.mc_samples, 4000);
  small.timings = false;
  for (int id : {1, 4, 8, 9}) {
    std::string first[3], second[3];
    for (int pass = 0; pass < 2; ++pass) {
      SuiteOptions o = small;
      if (id == 9) o.threads = pass == 0 ? 1 : 3;
      const SuiteResult r = run_suite(id, o);
      int f = 0;
      for (ReportFormat fmt : {ReportFormat::Table, ReportFormat::Csv, ReportFormat::JsonLines}) {
        std::ostringstream os;
        write_report(os, r.records, fmt);
        (pass == 0 ? first : second)[f++] = os.str();
      }
    }
    int mismatches = 0;
    for (int f = 0; f < 3; ++f) mismatches += first[f] != second[f];
    Params p{{"suite", str(id)}, {"formats", "table,csv,json-lines"}};
    if (id == 9) p.emplace_back("threads", "1 vs 3");
    rec.add("byte_identical", p, "mismatches", mismatches, 0.0);
  }
}

struct SuiteDef {
  const char* name;
  double budget;
  void (*run)(Recorder&, const SuiteOptions&);
};

const SuiteDef kSuites[kSuiteCount] = {
    {"kappa-validity", 1.0, kappa_validity},         {"krawtchouk-routes", 10.0, route_equivalence},
    {"orthogonality", 10.0, orthogonality},          {"reversibility", 5.0, reversibility},
    {"sep-self-duality", 60.0, sep_duality},         {"irw-self-duality", 30.0, irw_duality},
    {"lie-algebra", 60.0, lie_suite},                {"charlier", 1.0, charlier_suite},
    {"monte-carlo-duality", 120.0, mc_suite},        {"determinism", 0.0, determinism},
};

}  // namespace

Eigen::VectorXd random_probability(Philox4x32& rng, int m, int shape) {
  if (m < 1 || shape < 1) throw Error(ErrorCode::InvalidArgument, "random_probability arguments");
  VectorXd v(m);
  for (int i = 0; i < m; ++i) {
    double g = 0.0;
    for (int s = 0; s < shape; ++s) g += rng.exponential();
    v(i) = g;
  }
  return v / v.sum();
}

Kappa random_kappa(Philox4x32& rng, int n) { return kappa_from_p(random_probability(rng, n + 1, 2)); }

std::string suite_name(int id) {
  if (id < 1 || id > kSuiteCount) throw Error(ErrorCode::InvalidArgument, "no suite " + std::to_string(id));
  return kSuites[id - 1].name;
}

SuiteResult run_suite(int id, const SuiteOptions& options) {
  const SuiteDef& def = kSuites[static_cast<std::size_t>(id - 1 < 0 ? 0 : id - 1)];
  if (id < 1 || id > kSuiteCount) throw Error(ErrorCode::InvalidArgument, "no suite " + std::to_string(id));
  Recorder rec{def.name, {}};
  const auto t0 = std::chrono::steady_clock::now();
  def.run(rec, options);
  SuiteResult res;
  res.id = id;
  res.name = def.name;
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  res.time_budget = def.budget;
  res.records = std::move(rec.records);
  res.pass = std::all_of(res.records.begin(), res.records.end(), [](const CheckRecord& r) { return r.pass; });
  if (options.timings) {
    for (auto& r : res.records) r.seconds = res.seconds;
  }
  return res;
}

}  // namespace orthodual
