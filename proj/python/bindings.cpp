#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "orthodual/charlier.hpp"
#include "orthodual/error.hpp"
#include "orthodual/generators.hpp"
#include "orthodual/kappa_io.hpp"
#include "orthodual/rational.hpp"
#include "orthodual/suites.hpp"
#include "orthodual/verify.hpp"

namespace py = pybind11;
using namespace orthodual;

namespace {

py::dict record_dict(const CheckRecord& r) {
  py::dict d;
  d["suite"] = r.suite;
  d["check"] = r.check;
  d["parameters"] = r.parameters;
  d["metric"] = r.metric;
  d["value"] = r.value;
  d["threshold"] = r.threshold;
  d["pass"] = r.pass;
  d["note"] = r.note;
  return d;
}

Kappa kappa_from_text(const std::string& p) { return kappa_from_p(parse_scalar_list(p)); }

py::dict duality_dict(const DualityReport& r) {
  py::dict d;
  d["residual"] = r.residual;
  d["scale"] = r.scale;
  d["tolerance"] = r.tolerance;
  d["pass"] = r.pass;
  return d;
}

}  // namespace

PYBIND11_MODULE(_orthodual, m) {
  m.doc() = "Orthogonal duality kernels and verification for multi-species SEP and IRW";

  py::register_exception<Error>(m, "OrthodualError", PyExc_ValueError);

  py::class_<Kappa>(m, "Kappa")
      .def_property_readonly("n", &Kappa::n)
      .def_property_readonly("nu", &Kappa::nu)
      .def_property_readonly("p", &Kappa::p)
      .def_property_readonly("p_hat", &Kappa::p_hat)
      .def_property_readonly("U", &Kappa::U)
      .def_property_readonly("exact", [](const Kappa& k) { return k.exact().has_value(); })
      .def("gram_residual", &Kappa::gram_residual)
      .def("__str__", [](const Kappa& k) { return format_kappa(k); });

  m.def("kappa_from_p", py::overload_cast<const Eigen::VectorXd&>(&kappa_from_p), py::arg("p"));
  m.def("kappa_from_p_text", &kappa_from_text, py::arg("p"), "p as comma-separated rationals or decimals");
  m.def("krawtchouk_table", &krawtchouk_table, py::arg("kappa"), py::arg("two_j"));
  m.def("krawtchouk_table_bilinear", &krawtchouk_table_bilinear, py::arg("kappa"), py::arg("two_j"));
  m.def("multinomial_weights", &multinomial_weights, py::arg("p"), py::arg("two_j"));
  m.def(
      "orthogonality",
      [](const Kappa& k, int two_j) {
        const OrthogonalityReport r = orthogonality_sums(k, two_j);
        py::dict d;
        d["normalized_residual_phat"] = r.normalized_residual_phat;
        d["normalized_residual_p"] = r.normalized_residual_p;
        d["exact"] = r.exact;
        d["pass"] = r.pass;
        return d;
      },
      py::arg("kappa"), py::arg("two_j"));

  m.def("charlier", &charlier, py::arg("m"), py::arg("z"), py::arg("lam"));
  m.def("charlier_norm", &charlier_norm, py::arg("m"), py::arg("lam"));

  m.def(
      "sep_generator",
      [](const std::string& graph, int n, int two_j) {
        const Graph g = preset_graph(graph);
        return sep_generator(enumerate_sep(g, n, two_j), g).dense();
      },
      py::arg("graph"), py::arg("n"), py::arg("two_j"));
  m.def(
      "irw_generator",
      [](const std::string& graph, const std::vector<int>& totals) {
        const Graph g = preset_graph(graph);
        return irw_generator(enumerate_irw_sector(g, static_cast<int>(totals.size()), totals), g).dense();
      },
      py::arg("graph"), py::arg("totals"));
  m.def(
      "verify_sep",
      [](const std::string& graph, const Kappa& k, int two_j) {
        const Graph g = preset_graph(graph);
        const ConfigSpace space = enumerate_sep(g, k.n(), two_j);
        const SparseOperator gen = sep_generator(space, g);
        return duality_dict(duality_residual(gen, gen, build_sep_duality(space, k)));
      },
      py::arg("graph"), py::arg("kappa"), py::arg("two_j"));
  m.def(
      "verify_irw",
      [](const std::string& graph, const std::vector<int>& a, const std::vector<int>& b, double lambda) {
        const Graph g = preset_graph(graph);
        const ConfigSpace sa = enumerate_irw_sector(g, static_cast<int>(a.size()), a);
        const ConfigSpace sb = enumerate_irw_sector(g, static_cast<int>(b.size()), b);
        return duality_dict(
            duality_residual(irw_generator(sa, g), irw_generator(sb, g), build_irw_duality(sa, sb, lambda)));
      },
      py::arg("graph"), py::arg("totals"), py::arg("dual_totals"), py::arg("lam"));

  m.def(
      "philox_block",
      [](std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) { return Philox4x32::block(ctr, key); },
      py::arg("counter"), py::arg("key"));

  m.def("suite_count", [] { return kSuiteCount; });
  m.def("suite_name", &suite_name, py::arg("id"));
  m.def(
      "run_suite",
      [](int id, std::uint64_t seed, std::size_t mc_samples) {
        SuiteOptions opt;
        opt.seed = seed;
        opt.mc_samples = mc_samples;
        SuiteResult r;
        {
          py::gil_scoped_release release;
          r = run_suite(id, opt);
        }
        py::list recs;
        for (const auto& c : r.records) recs.append(record_dict(c));
        py::dict d;
        d["name"] = r.name;
        d["pass"] = r.pass;
        d["records"] = recs;
        return d;
      },
      py::arg("id"), py::arg("seed") = SuiteOptions{}.seed, py::arg("mc_samples") = SuiteOptions{}.mc_samples);
}
