#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "orthodual/error.hpp"
#include "orthodual/generators.hpp"
#include "orthodual/heisenberg.hpp"
#include "orthodual/kappa_io.hpp"
#include "orthodual/rational.hpp"
#include "orthodual/report.hpp"
#include "orthodual/simulate.hpp"
#include "orthodual/sl_algebra.hpp"
#include "orthodual/suites.hpp"
#include "orthodual/verify.hpp"

namespace {

using namespace orthodual;
using Params = std::vector<std::pair<std::string, std::string>>;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct RunConfig {
  std::string command;
  std::string graph = "edge";
  std::optional<int> n;
  int two_j = 1;
  std::string totals;
  std::string dual_totals;
  std::string from_p;
  std::string kappa_file;
  std::optional<double> lambda;
  std::optional<double> tol;
  std::uint64_t seed = 20240917;
  std::size_t samples = 0;
  double time = 1.0;
  std::string process = "sep";
  std::size_t initial = 0;
  std::size_t dual_initial = 0;
  std::string trajectory;
  std::string suites;
  int threads = 0;
  std::string output;
  std::string format = "table";
  bool timings = false;
};

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); }

std::string to_text(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

Graph load_graph(const std::string& spec) {
  if (std::filesystem::is_regular_file(spec)) return read_graph_file(spec);
  return preset_graph(spec);
}

std::vector<int> parse_counts(const std::string& text, const char* flag) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      config_error(std::string(flag) + ": expected non-negative integers, got '" + text + "'");
    }
  }
  if (out.empty()) config_error(std::string(flag) + " is required");
  return out;
}

Kappa load_kappa(const RunConfig& cfg) {
  if (!cfg.from_p.empty() && !cfg.kappa_file.empty()) config_error("--from-p and --kappa are exclusive");
  Kappa k = [&] {
    if (!cfg.from_p.empty()) return kappa_from_p(parse_scalar_list(cfg.from_p));
    if (!cfg.kappa_file.empty()) return read_kappa_file(cfg.kappa_file);
    config_error("a kappa source is required: --from-p or --kappa");
  }();
  if (cfg.n && *cfg.n != k.n()) config_error("--n does not match the kappa dimension");
  return k;
}

double require_lambda(const RunConfig& cfg) {
  if (!cfg.lambda) config_error("--lambda is required");
  if (!(*cfg.lambda > 0.0)) config_error("--lambda must be positive");
  return *cfg.lambda;
}

void check_tolerance(const RunConfig& cfg) {
  if (cfg.tol && !(*cfg.tol > 0.0)) config_error("--tol must be positive");
  if (cfg.two_j < 1) config_error("--two-j must be at least 1");
  if (cfg.time < 0.0) config_error("--time must be non-negative");
}

Params echo(const RunConfig& cfg, const std::vector<std::string>& keys) {
  Params p{{"command", cfg.command}};
  for (const auto& key : keys) {
    if (key == "graph") p.emplace_back("graph", cfg.graph);
    if (key == "n" && cfg.n) p.emplace_back("n", std::to_string(*cfg.n));
    if (key == "2j") p.emplace_back("2j", std::to_string(cfg.two_j));
    if (key == "totals") p.emplace_back("totals", cfg.totals);
    if (key == "dual_totals") p.emplace_back("dual_totals", cfg.dual_totals.empty() ? cfg.totals : cfg.dual_totals);
    if (key == "kappa") {
      if (!cfg.from_p.empty()) p.emplace_back("from_p", cfg.from_p);
      if (!cfg.kappa_file.empty()) p.emplace_back("kappa", cfg.kappa_file);
    }
    if (key == "lambda" && cfg.lambda) p.emplace_back("lambda", to_text(*cfg.lambda));
    if (key == "tol" && cfg.tol) p.emplace_back("tol", to_text(*cfg.tol));
    if (key == "seed") p.emplace_back("seed", std::to_string(cfg.seed));
    if (key == "samples") p.emplace_back("samples", std::to_string(cfg.samples));
    if (key == "time") p.emplace_back("time", to_text(cfg.time));
    if (key == "process") p.emplace_back("process", cfg.process);
    if (key == "initial") p.emplace_back("initial", std::to_string(cfg.initial));
    if (key == "dual_initial") p.emplace_back("dual_initial", std::to_string(cfg.dual_initial));
  }
  return p;
}

CheckRecord record(const std::string& suite, const std::string& check, Params params, const std::string& metric,
                   double value, double threshold, Comparison cmp = Comparison::AtMost, std::string note = {}) {
  CheckRecord r;
  r.suite = suite;
  r.check = check;
  r.parameters = std::move(params);
  r.metric = metric;
  r.value = value;
  r.threshold = threshold;
  r.comparison = cmp;
  r.note = std::move(note);
  r.decide();
  return r;
}

std::vector<CheckRecord> run_verify_sep(RunConfig& cfg) {
  check_tolerance(cfg);
  const Kappa k = load_kappa(cfg);
  cfg.n = k.n();
  const Graph g = load_graph(cfg.graph);
  const ConfigSpace space = enumerate_sep(g, k.n(), cfg.two_j);
  const SparseOperator gen = sep_generator(space, g);
  const double tol = cfg.tol.value_or(default_duality_tolerance(cfg.two_j));
  const DualityReport r = duality_residual(gen, gen, build_sep_duality(space, k), tol, cfg.timings);
  Params p = echo(cfg, {"graph", "n", "2j", "kappa", "tol"});
  p.emplace_back("states", std::to_string(space.size()));
  std::vector<CheckRecord> out;
  out.push_back(record("verify-sep", "self_duality", p, "relative", r.residual / std::max(1.0, r.scale), tol,
                       Comparison::AtMost, "absolute " + format_value("residual", r.residual)));
  if (r.wall_seconds) out.back().seconds = *r.wall_seconds;
  const ReversibilityReport rev = check_detailed_balance(gen, sep_product_measure({k.p()}, cfg.two_j), "w_p");
  out.push_back(record("verify-sep", "detailed_balance", p, "relative",
                       rev.scale > 0 ? rev.max_violation / rev.scale : rev.max_violation, 1e-12));
  return out;
}

std::vector<CheckRecord> run_verify_irw(RunConfig& cfg) {
  check_tolerance(cfg);
  const double lambda = require_lambda(cfg);
  const std::vector<int> ta = parse_counts(cfg.totals, "--totals");
  const std::vector<int> tb = cfg.dual_totals.empty() ? ta : parse_counts(cfg.dual_totals, "--dual-totals");
  if (ta.size() != tb.size()) config_error("--totals and --dual-totals differ in species count");
  const int n = static_cast<int>(ta.size());
  if (cfg.n && *cfg.n != n) config_error("--n does not match --totals");
  cfg.n = n;
  const Graph g = load_graph(cfg.graph);
  const ConfigSpace a = enumerate_irw_sector(g, n, ta);
  const ConfigSpace b = enumerate_irw_sector(g, n, tb);
  const SparseOperator ga = irw_generator(a, g), gb = irw_generator(b, g);
  const double tol = cfg.tol.value_or(1e-10);
  const DualityReport r = duality_residual(ga, gb, build_irw_duality(a, b, lambda), tol, cfg.timings);
  Params p = echo(cfg, {"graph", "n", "totals", "dual_totals", "lambda", "tol"});
  std::vector<CheckRecord> out;
  out.push_back(record("verify-irw", "self_duality", p, "relative", r.residual / std::max(1.0, r.scale), tol,
                       Comparison::AtMost, "absolute " + format_value("residual", r.residual)));
  if (r.wall_seconds) out.back().seconds = *r.wall_seconds;
  const ReversibilityReport rev = check_detailed_balance(ga, irw_product_measure(lambda), "mu_lambda");
  out.push_back(record("verify-irw", "detailed_balance", p, "relative",
                       rev.scale > 0 ? rev.max_violation / rev.scale : rev.max_violation, 1e-12));
  return out;
}

std::vector<CheckRecord> run_orthogonality(RunConfig& cfg) {
  check_tolerance(cfg);
  const Kappa k = load_kappa(cfg);
  cfg.n = k.n();
  const OrthogonalityReport r = orthogonality_sums(k, cfg.two_j);
  const double tol = cfg.tol.value_or(1e-10);
  Params p = echo(cfg, {"n", "2j", "kappa", "tol"});
  p.emplace_back("arithmetic", r.exact ? "exact" : "double");
  return {record("orthogonality", "sum_over_w_phat", p, "normalized", r.normalized_residual_phat, tol),
          record("orthogonality", "sum_over_w_p", p, "normalized", r.normalized_residual_p, tol)};
}

std::vector<CheckRecord> run_lie_checks(RunConfig& cfg) {
  check_tolerance(cfg);
  std::vector<CheckRecord> out;
  const bool have_kappa = !cfg.from_p.empty() || !cfg.kappa_file.empty();
  if (!have_kappa && !cfg.lambda) config_error("lie-checks needs a kappa source or --lambda");
  const Graph g = load_graph(cfg.graph);
  if (have_kappa) {
    const Kappa k = load_kappa(cfg);
    cfg.n = k.n();
    const int n = k.n(), two_j = cfg.two_j;
    const double tol = cfg.tol.value_or(1e-12);
    const Params p = echo(cfg, {"graph", "n", "2j", "kappa", "tol"});
    const Eigen::VectorXd wp = multinomial_weights(k.p(), two_j);
    double rho_adj = 0, sigma_adj = 0, routes = 0;
    for (const auto& x : sl_basis(n)) {
      rho_adj = std::max(rho_adj, adjoint_defect(rho_p_matrix(x, k.p(), two_j), rho_p_matrix(x.star(), k.p(), two_j), wp));
      sigma_adj =
          std::max(sigma_adj, adjoint_defect(sigma_p_matrix(x, k, two_j), sigma_p_matrix(x.star(), k, two_j), wp));
      const SigmaRoutes r = sigma_p_routes(x, k, two_j);
      routes = std::max(routes, r.residual / std::max(1.0, r.explicit_sum.dense().cwiseAbs().maxCoeff()));
    }
    out.push_back(record("lie-checks", "rho_p_star_adjoint", p, "relative", rho_adj, tol));
    out.push_back(record("lie-checks", "sigma_p_star_adjoint", p, "relative", sigma_adj, tol));
    out.push_back(record("lie-checks", "sigma_p_route_agreement", p, "relative", routes, tol));
    double res = 0, c_gap = 0, c = 0, closed = 0;
    for (const Edge& e : g.edges()) {
      const CasimirShiftReport r = measure_sep_casimir_shift(k, two_j, g, e);
      res = std::max({res, r.residual_rho, r.residual_sigma});
      c_gap = std::max(c_gap, std::abs(r.c_rho - r.c_sigma));
      c = r.c_rho;
      closed = r.c_closed_form;
    }
    out.push_back(record("lie-checks", "casimir_shift", p, "residual", res, cfg.tol.value_or(1e-10)));
    out.push_back(record("lie-checks", "casimir_shift_routes_agree", p, "residual", c_gap, cfg.tol.value_or(1e-10),
                         Comparison::AtMost,
                         "c = " + format_value("c", c) + ", closed form " + format_value("c", closed)));
    const SparseOperator lam = intertwiner_sep(k, two_j);
    double inter = 0.0;
    for (const auto& x : sl_basis(n)) inter = std::max(inter, intertwining_residual(lam, x, k, two_j));
    out.push_back(record("lie-checks", "intertwiner_unitary", p, "residual", unitarity_defect(lam, k, two_j),
                         cfg.tol.value_or(1e-10)));
    out.push_back(record("lie-checks", "intertwiner_relation", p, "relative", inter, cfg.tol.value_or(1e-10)));
  }
  if (cfg.lambda) {
    const double lambda = require_lambda(cfg);
    const std::vector<int> totals = cfg.totals.empty() ? std::vector<int>{1} : parse_counts(cfg.totals, "--totals");
    const int n = static_cast<int>(totals.size());
    if (!have_kappa && cfg.n && *cfg.n != n) config_error("--n does not match --totals");
    Params p = echo(cfg, {"graph", "lambda", "tol"});
    p.emplace_back("totals", cfg.totals.empty() ? "1" : cfg.totals);
    const KernelIdentityReport pr = check_charlier_kernel_identities(lambda, n, 8);
    out.push_back(record("lie-checks", "charlier_kernel_relation", p, "relative", pr.max_residual,
                         cfg.tol.value_or(1e-9)));
    const ConfigSpace space = enumerate_irw_sector(g, n, totals);
    double rho = 0, theta = 0;
    for (const Edge& e : g.edges()) {
      const IrwCasimirReport r = check_irw_casimir_generator(lambda, space, e);
      rho = std::max({rho, r.residual_rho, r.leakage_rho});
      theta = std::max({theta, r.residual_theta, r.leakage_theta});
    }
    out.push_back(record("lie-checks", "irw_generator_from_Y", p, "residual", rho, cfg.tol.value_or(1e-12)));
    out.push_back(record("lie-checks", "irw_generator_from_theta_Y", p, "residual", theta, cfg.tol.value_or(1e-12)));
  }
  return out;
}

std::vector<CheckRecord> run_simulate(RunConfig& cfg) {
  check_tolerance(cfg);
  const Graph g = load_graph(cfg.graph);
  ProcessSpec process;
  process.graph = g;
  std::shared_ptr<ConfigSpace> space;
  std::vector<std::string> keys{"process", "graph", "n", "time", "seed", "initial"};
  std::optional<Kappa> kappa;
  if (cfg.process == "sep") {
    if (!cfg.from_p.empty() || !cfg.kappa_file.empty()) kappa = load_kappa(cfg);
    if (kappa) cfg.n = kappa->n();
    if (!cfg.n) config_error("--n or a kappa source is required");
    process.kind = ProcessKind::Sep;
    process.n = *cfg.n;
    space = std::make_shared<ConfigSpace>(enumerate_sep(g, *cfg.n, cfg.two_j));
    keys.insert(keys.begin() + 3, "2j");
    keys.push_back("kappa");
  } else if (cfg.process == "irw") {
    const std::vector<int> totals = parse_counts(cfg.totals, "--totals");
    if (cfg.n && *cfg.n != static_cast<int>(totals.size())) config_error("--n does not match --totals");
    cfg.n = static_cast<int>(totals.size());
    process.kind = ProcessKind::Irw;
    process.n = *cfg.n;
    space = std::make_shared<ConfigSpace>(enumerate_irw_sector(g, *cfg.n, totals));
    keys.insert(keys.begin() + 3, "totals");
    keys.push_back("lambda");
  } else {
    config_error("--process must be sep or irw");
  }
  if (cfg.initial >= space->size()) config_error("--initial is not a state rank");
  std::vector<CheckRecord> out;
  if (!cfg.trajectory.empty()) {
    std::ofstream f(cfg.trajectory);
    if (!f) config_error("cannot write " + cfg.trajectory);
    write_trajectory(f, gillespie_run(process, space->unrank(cfg.initial), cfg.time, cfg.seed), *space);
  }
  if (cfg.samples == 0) return out;
  if (cfg.dual_initial >= space->size()) config_error("--dual-initial is not a state rank");
  const DualityMatrix d = [&] {
    if (process.kind == ProcessKind::Sep) {
      if (!kappa) config_error("--samples needs a kappa source for sep");
      return build_sep_duality(*space, *kappa);
    }
    return build_irw_duality(*space, *space, require_lambda(cfg));
  }();
  keys.insert(keys.end(), {"dual_initial", "samples"});
  Params p = echo(cfg, keys);
  p.emplace_back("xi0", space->unrank(cfg.initial).to_string());
  p.emplace_back("eta0", space->unrank(cfg.dual_initial).to_string());
  const McDualityResult r =
      mc_duality_test(process, d, cfg.initial, cfg.dual_initial, cfg.time, cfg.samples, cfg.seed, cfg.threads);
  std::ostringstream note;
  note.precision(6);
  note << "forward " << r.mean_forward << " +- " << r.stderr_forward << ", dual " << r.mean_dual << " +- "
       << r.stderr_dual;
  if (r.exact) note << ", exact " << *r.exact;
  out.push_back(record("simulate", "forward_vs_dual", p, "z", r.z, 4.0, Comparison::AtMost, note.str()));
  if (r.z_forward_exact) out.push_back(record("simulate", "forward_vs_exact", p, "z", *r.z_forward_exact, 4.0));
  if (r.z_dual_exact) out.push_back(record("simulate", "dual_vs_exact", p, "z", *r.z_dual_exact, 4.0));
  return out;
}

std::vector<CheckRecord> run_all(const RunConfig& cfg) {
  std::vector<int> ids;
  if (cfg.suites.empty()) {
    for (int i = 1; i <= kSuiteCount; ++i) ids.push_back(i);
  } else {
    for (int id : parse_counts(cfg.suites, "--suites")) {
      if (id < 1 || id > kSuiteCount) config_error("--suites: no criterion " + std::to_string(id));
      ids.push_back(id);
    }
  }
  SuiteOptions opt;
  opt.seed = cfg.seed;
  if (cfg.samples > 0) opt.mc_samples = cfg.samples;
  opt.threads = cfg.threads;
  opt.timings = cfg.timings;
  std::vector<CheckRecord> out, summary;
  for (int id : ids) {
    SuiteResult r = run_suite(id, opt);
    const auto failed = std::count_if(r.records.begin(), r.records.end(), [](const CheckRecord& c) { return !c.pass; });
    out.insert(out.end(), r.records.begin(), r.records.end());
    CheckRecord s = record("summary", "criterion_" + std::to_string(id),
                           {{"suite", r.name}, {"checks", std::to_string(r.records.size())}, {"seed", std::to_string(cfg.seed)}},
                           "failed_checks", static_cast<double>(failed), 0.0);
    if (cfg.timings) {
      s.seconds = r.seconds;
      s.note = "budget " + to_text(r.time_budget) + " s";
    }
    summary.push_back(std::move(s));
  }
  out.insert(out.end(), summary.begin(), summary.end());
  return out;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--output", cfg.output, "Report path (default stdout)");
  sub->add_option("--format", cfg.format, "table, csv or json-lines")->check(CLI::IsMember({"table", "csv", "json-lines", "jsonl"}));
  sub->add_option("--seed", cfg.seed, "Random seed");
  sub->add_option("--threads", cfg.threads, "Worker threads (default ORTHODUAL_THREADS or 1)");
  sub->add_flag("--timings", cfg.timings, "Include wall-clock seconds in reports");
}

void add_kappa(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--from-p", cfg.from_p, "Probability vector p_0,...,p_n (rationals accepted)");
  sub->add_option("--kappa", cfg.kappa_file, "Kappa tuple file");
}

std::vector<CheckRecord> dispatch(RunConfig& cfg) {
  if (cfg.command == "verify-sep") return run_verify_sep(cfg);
  if (cfg.command == "verify-irw") return run_verify_irw(cfg);
  if (cfg.command == "orthogonality") return run_orthogonality(cfg);
  if (cfg.command == "lie-checks") return run_lie_checks(cfg);
  if (cfg.command == "simulate") return run_simulate(cfg);
  return run_all(cfg);
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Orthogonal self-duality verification for multi-species exclusion and random walks"};
  app.require_subcommand(1);
  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {{"verify-sep", "Self-duality residual of the multi-species exclusion process"},
                      {"verify-irw", "Self-duality residual of independent random walkers"},
                      {"orthogonality", "Orthogonality sums of the single-site kernel"},
                      {"lie-checks", "Representation, Casimir and intertwiner checks"},
                      {"simulate", "Gillespie trajectories and Monte Carlo duality"},
                      {"all", "Every acceptance suite with a per-criterion summary"}};
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(sub, cfg);
    sub->callback([&cfg, name = std::string(s.name)] { cfg.command = name; });
    if (std::string(s.name) == "all") {
      sub->add_option("--suites", cfg.suites, "Comma-separated criterion numbers");
      sub->add_option("--samples", cfg.samples, "Monte Carlo samples per configuration");
      continue;
    }
    sub->add_option("--graph", cfg.graph, "Preset (edge, triangle, path-k, cycle-k, complete-k) or edge-list file");
    if (std::string(s.name) != "simulate") sub->add_option("--tol", cfg.tol, "Pass threshold");
    if (std::string(s.name) != "verify-irw") sub->add_option("--two-j", cfg.two_j, "Sites hold 2j particles");
    sub->add_option("--n", cfg.n, "Number of species");
    if (std::string(s.name) != "orthogonality") {
      sub->add_option("--totals", cfg.totals, "Particles per species, comma-separated");
    }
    if (std::string(s.name) != "verify-irw") add_kappa(sub, cfg);
    if (std::string(s.name) != "verify-sep" && std::string(s.name) != "orthogonality") {
      sub->add_option("--lambda", cfg.lambda, "Poisson intensity");
    }
    if (std::string(s.name) == "verify-irw") sub->add_option("--dual-totals", cfg.dual_totals, "Dual sector totals");
    if (std::string(s.name) == "simulate") {
      sub->add_option("--process", cfg.process, "sep or irw")->check(CLI::IsMember({"sep", "irw"}));
      sub->add_option("--time", cfg.time, "Horizon T");
      sub->add_option("--initial", cfg.initial, "Rank of the starting state");
      sub->add_option("--dual-initial", cfg.dual_initial, "Rank of the dual starting state");
      sub->add_option("--samples", cfg.samples, "Monte Carlo samples (0: no duality test)");
      sub->add_option("--trajectory", cfg.trajectory, "Write one trajectory as time,rank lines");
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  try {
    if (cfg.threads < 0) config_error("--threads must be non-negative");
    const ReportFormat format = parse_report_format(cfg.format);
    const std::vector<CheckRecord> records = dispatch(cfg);
    std::ofstream file;
    if (!cfg.output.empty()) {
      file.open(cfg.output, std::ios::binary);
      if (!file) config_error("cannot write " + cfg.output);
    }
    std::ostream& out = cfg.output.empty() ? std::cout : file;
    write_report(out, records, format);
    const bool pass = std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
    return pass ? kExitPass : kExitFail;
  } catch (const Error& e) {
    std::cerr << "orthodual: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "orthodual: " << e.what() << "\n";
    return kExitConfig;
  }
}
