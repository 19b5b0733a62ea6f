#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "monoband/bands.hpp"
#include "monoband/betting.hpp"
#include "monoband/distributions.hpp"
#include "monoband/divergences.hpp"
#include "monoband/errors.hpp"
#include "monoband/psi.hpp"
#include "monoband/sample_store.hpp"
#include "monoband/simulate.hpp"

namespace py = pybind11;
using namespace monoband;

namespace {

DistributionSpec make_distribution(const std::string& name) {
  return DistributionSpec::parse(name);
}

py::dict band_to_dict(const BandResult& band) {
  py::dict d;
  d["method"] = method_name(band.method);
  d["sample_size"] = band.sample_size;
  d["anytime"] = band.anytime;
  d["y"] = band.points;
  d["lower"] = band.lower;
  d["upper"] = band.upper;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Anytime-valid confidence bands for monotone means and CDFs";

  m.def("kl", &kl, py::arg("p"), py::arg("q"),
        "Binary relative entropy with boundary conventions");
  m.def(
      "kl_inverse_upper",
      [](double p, double budget) { return kl_inverse_upper(p, KlBudget(budget)); },
      py::arg("p"), py::arg("budget"));
  m.def(
      "kl_inverse_lower",
      [](double p, double budget) { return kl_inverse_lower(p, KlBudget(budget)); },
      py::arg("p"), py::arg("budget"));
  m.def(
      "pinsker_radius",
      [](double budget, std::size_t t) { return pinsker_radius(KlBudget(budget), t); },
      py::arg("budget"), py::arg("t"));
  m.def(
      "variance_radius",
      [](double v_hat, std::size_t t, double budget) {
        return variance_radius(v_hat, t, KlBudget(budget));
      },
      py::arg("v_hat"), py::arg("t"), py::arg("budget"));

  m.def(
      "psi",
      [](const std::vector<double>& values, double mu) {
        return psi(PsiCurve(values), mu);
      },
      py::arg("values"), py::arg("mu"),
      "Log-wealth of the best constant bet against the hypothesised mean");
  m.def(
      "psi_inverse_upper",
      [](const std::vector<double>& values, double budget) {
        return psi_inverse_upper(PsiCurve(values), KlBudget(budget));
      },
      py::arg("values"), py::arg("budget"));
  m.def(
      "psi_inverse_lower",
      [](const std::vector<double>& values, double budget) {
        return psi_inverse_lower(PsiCurve(values), KlBudget(budget));
      },
      py::arg("values"), py::arg("budget"));

  m.def(
      "kt_bet",
      [](const std::vector<double>& history, double max_loss, double max_gain) {
        return kt_bet(history, CoinRange(max_loss, max_gain));
      },
      py::arg("history"), py::arg("max_loss") = 1.0, py::arg("max_gain") = 1.0);

  m.def("dkw_radius", &dkw_radius, py::arg("t"), py::arg("delta"));
  m.def("anytime_baseline_radius", &anytime_baseline_radius, py::arg("t"),
        py::arg("delta"));

  py::class_<SampleStore>(m, "SampleStore")
      .def(py::init<>())
      .def("insert", &SampleStore::insert, py::arg("x"))
      .def("extend",
           [](SampleStore& store, const std::vector<double>& xs) {
             for (const double x : xs) store.insert(x);
           })
      .def("rank", &SampleStore::rank, py::arg("y"))
      .def("order_statistic", &SampleStore::order_statistic, py::arg("t"))
      .def("empirical_cdf", &SampleStore::empirical_cdf, py::arg("y"))
      .def("sorted", &SampleStore::sorted)
      .def("__len__", &SampleStore::size);

  m.def(
      "band",
      [](const SampleStore& store, const std::string& method,
         const std::vector<double>& points, double delta) {
        BandQuery query{points, delta, parse_method(method)};
        return band_to_dict(compute_band(store, query));
      },
      py::arg("store"), py::arg("method"), py::arg("points"),
      py::arg("delta") = 0.05,
      "Confidence band of the stored observations on a query grid");

  m.def(
      "sample",
      [](const std::string& dist, std::size_t n, std::uint64_t seed) {
        return sample(make_distribution(dist), n, seed);
      },
      py::arg("dist"), py::arg("n"), py::arg("seed"));

  m.def(
      "run_coverage",
      [](const std::string& dist, const std::string& method, double delta,
         std::size_t t_max, std::size_t n_runs, std::uint64_t seed,
         std::size_t grid_size, unsigned threads) {
        SimConfig config;
        config.dist = make_distribution(dist);
        config.method = parse_method(method);
        config.delta = delta;
        config.t_max = t_max;
        config.n_runs = n_runs;
        config.seed = seed;
        config.grid_size = grid_size;
        config.threads = threads;
        const CoverageReport report = run_coverage(config);
        py::dict d;
        d["method"] = report.method;
        d["distribution"] = report.distribution;
        d["delta"] = report.delta;
        d["t_max"] = report.t_max;
        d["n_runs"] = report.n_runs;
        d["anytime"] = report.anytime;
        d["miss_count"] = report.miss_count;
        d["miss_rate"] = report.miss_rate;
        py::list widths;
        for (std::size_t i = 0; i < report.checkpoints.size(); ++i) {
          py::dict row;
          row["T"] = report.checkpoints[i];
          row["width_p50"] = report.width_quantiles[i][0];
          row["width_p90"] = report.width_quantiles[i][1];
          widths.append(row);
        }
        d["widths"] = widths;
        return d;
      },
      py::arg("dist") = "uniform", py::arg("method") = "kl-cdf",
      py::arg("delta") = 0.05, py::arg("t_max") = 200,
      py::arg("n_runs") = 1000, py::arg("seed") = 0, py::arg("grid_size") = 21,
      py::arg("threads") = 0);

  py::register_exception<input_error>(m, "InputError", PyExc_ValueError);
}
