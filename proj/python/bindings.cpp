// Apache License, Version 2.0, refer to LICENSE.txt

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pymentropy/count_data.hpp"
#include "pymentropy/dirichlet_nsb.hpp"
#include "pymentropy/entropy_estimate.hpp"
#include "pymentropy/errors.hpp"
#include "pymentropy/pitman_yor.hpp"
#include "pymentropy/pym.hpp"
#include "pymentropy/rng.hpp"
#include "pymentropy/sampler.hpp"
#include "pymentropy/special_functions.hpp"
#include "pymentropy/synthetic.hpp"

namespace py = pybind11;
using namespace pymentropy;

namespace {

PymConfig config_from_kwargs(int grid_size, double std_span,
                             const std::string& gamma_prior) {
  PymConfig cfg;
  cfg.grid_size = grid_size;
  cfg.std_span = std_span;
  cfg.gamma_prior =
      gamma_prior == "flat" ? GammaPrior::kFlat : GammaPrior::kDefaultExp;
  cfg.validate();
  return cfg;
}

py::dict estimate_to_dict(const EntropyEstimate& est) {
  py::dict d;
  d["mean"] = est.mean;
  d["std"] = est.std_dev ? py::object(py::float_(*est.std_dev))
                         : py::object(py::none());
  d["map_d"] = est.map_d ? py::object(py::float_(*est.map_d))
                         : py::object(py::none());
  d["map_alpha"] = est.map_alpha ? py::object(py::float_(*est.map_alpha))
                                 : py::object(py::none());
  d["log_evidence_at_map"] =
      est.log_evidence_at_map ? py::object(py::float_(*est.log_evidence_at_map))
                              : py::object(py::none());
  py::dict diag;
  diag["node_count"] = est.diagnostics.node_count;
  diag["mass_captured"] = est.diagnostics.mass_captured;
  diag["fallback_grid"] = est.diagnostics.fallback_grid;
  d["diagnostics"] = diag;
  return d;
}

}  // namespace

PYBIND11_MODULE(_pymentropy, m) {
  m.doc() = "Bayesian entropy estimation for undersampled discrete data";

  py::register_exception<EmptyDataError>(m, "EmptyDataError",
                                         PyExc_ValueError);
  py::register_exception<InconsistentAlphabetError>(
      m, "InconsistentAlphabetError", PyExc_ValueError);
  py::register_exception<NoCoincidencesError>(m, "NoCoincidencesError",
                                              PyExc_RuntimeError);
  py::register_exception<NumericalError>(m, "NumericalError",
                                         PyExc_RuntimeError);

  py::class_<Multiplicities>(m, "Multiplicities")
      .def_static(
          "from_entries",
          [](const std::vector<std::pair<std::uint64_t, std::uint64_t>>& e) {
            return Multiplicities::from_entries(e);
          },
          py::arg("entries"), "build from (frequency, m_k) pairs")
      .def_property_readonly("N", &Multiplicities::total)
      .def_property_readonly("K", &Multiplicities::distinct)
      .def_property_readonly("M", &Multiplicities::max_frequency)
      .def("coincidences", &Multiplicities::coincidences)
      .def("entries", [](const Multiplicities& self) {
        return std::vector<std::pair<std::uint64_t, std::uint64_t>>(
            self.entries().begin(), self.entries().end());
      });

  py::class_<CountData>(m, "CountData")
      .def_static("from_samples", &CountData::from_samples, py::arg("symbols"))
      .def_static(
          "from_counts",
          [](const std::vector<std::pair<std::string, std::uint64_t>>& p) {
            return CountData::from_counts(p);
          },
          py::arg("pairs"))
      .def_property_readonly("N", &CountData::total)
      .def_property_readonly("K", &CountData::distinct)
      .def("coincidences", &CountData::coincidences)
      .def("to_multiplicities", &CountData::to_multiplicities)
      .def("counts", [](const CountData& self) {
        return std::map<std::string, std::uint64_t>(self.counts().begin(),
                                                    self.counts().end());
      });

  py::class_<PYParams>(m, "PYParams")
      .def(py::init<double, double>(), py::arg("d"), py::arg("alpha"))
      .def_readonly("d", &PYParams::discount)
      .def_readonly("alpha", &PYParams::concentration);

  // special functions
  m.def("log_gamma", &log_gamma, py::arg("x"));
  m.def("digamma", &digamma, py::arg("x"));
  m.def("trigamma", &trigamma, py::arg("x"));
  m.def("inverse_digamma", &inverse_digamma, py::arg("y"));
  m.def("log_beta", &log_beta, py::arg("a"), py::arg("b"));

  // simple estimators
  m.def("plugin_entropy",
        py::overload_cast<const Multiplicities&>(&plugin_entropy),
        py::arg("m"));
  m.def("miller_madow",
        py::overload_cast<const Multiplicities&>(&miller_madow), py::arg("m"));
  m.def(
      "ansb_estimate",
      [](const Multiplicities& m) { return estimate_to_dict(ansb_estimate(m)); },
      py::arg("m"));
  m.def(
      "nsb_estimate",
      [](const Multiplicities& m, std::uint64_t alphabet_size) {
        return estimate_to_dict(nsb_estimate(m, alphabet_size));
      },
      py::arg("m"), py::arg("alphabet_size"));

  // Pitman-Yor closed forms
  m.def("py_prior_mean", &py_prior_mean, py::arg("params"));
  m.def("py_prior_variance", &py_prior_variance, py::arg("params"));
  m.def("py_posterior_mean",
        py::overload_cast<const Multiplicities&, const PYParams&>(
            &py_posterior_mean),
        py::arg("m"), py::arg("params"));
  m.def("py_posterior_variance",
        py::overload_cast<const Multiplicities&, const PYParams&>(
            &py_posterior_variance),
        py::arg("m"), py::arg("params"));
  m.def("py_log_evidence",
        py::overload_cast<const Multiplicities&, const PYParams&>(
            &py_log_evidence),
        py::arg("m"), py::arg("params"));

  // reparametrization
  m.def(
      "to_hgamma",
      [](const PYParams& p) {
        const HGammaParams hg = to_hgamma(p);
        return std::make_pair(hg.h, hg.gamma);
      },
      py::arg("params"));
  m.def(
      "to_dalpha",
      [](double h, double gamma) { return to_dalpha({h, gamma}); },
      py::arg("h"), py::arg("gamma"));

  // mixture estimators
  m.def(
      "pym_estimate",
      [](const Multiplicities& m, int grid_size, double std_span,
         const std::string& gamma_prior) {
        return estimate_to_dict(
            pym_estimate(m, config_from_kwargs(grid_size, std_span,
                                               gamma_prior)));
      },
      py::arg("m"), py::arg("grid_size") = 30, py::arg("std_span") = 6.0,
      py::arg("gamma_prior") = "default");
  m.def(
      "dpm_estimate",
      [](const Multiplicities& m, int grid_size, double std_span,
         const std::string& gamma_prior) {
        return estimate_to_dict(
            dpm_estimate(m, config_from_kwargs(grid_size, std_span,
                                               gamma_prior)));
      },
      py::arg("m"), py::arg("grid_size") = 30, py::arg("std_span") = 6.0,
      py::arg("gamma_prior") = "default");
  m.def(
      "map_fit",
      [](const Multiplicities& m) { return map_fit(m); },
      py::arg("m"));

  // sampling
  m.def(
      "stick_break",
      [](const PYParams& p, std::size_t n_sticks, std::uint64_t seed) {
        Rng rng(seed);
        const WeightSample w = stick_break(p, n_sticks, rng);
        return std::make_pair(w.weights, w.remaining_mass);
      },
      py::arg("params"), py::arg("n_sticks"), py::arg("seed"));
  m.def(
      "sample_prior_entropy",
      [](const PYParams& p, std::size_t n_draws, std::uint64_t seed,
         double tail_var_tol) {
        Rng rng(seed);
        std::vector<double> out(n_draws);
        for (auto& h : out) {
          h = sample_prior_entropy(p, tail_var_tol, rng);
        }
        return out;
      },
      py::arg("params"), py::arg("n_draws"), py::arg("seed"),
      py::arg("tail_var_tol") = 1e-4);
  m.def(
      "sample_pym_posterior",
      [](const Multiplicities& m, std::size_t n_draws, std::uint64_t seed,
         int grid_size, double std_span, const std::string& gamma_prior) {
        Rng rng(seed);
        return sample_pym_posterior(
            m, config_from_kwargs(grid_size, std_span, gamma_prior), n_draws,
            rng);
      },
      py::arg("m"), py::arg("n_draws"), py::arg("seed"),
      py::arg("grid_size") = 30, py::arg("std_span") = 6.0,
      py::arg("gamma_prior") = "default");

  // synthetic sources
  m.def(
      "draw_counts",
      [](const std::string& spec, std::uint64_t n, std::uint64_t seed) {
        Rng rng(seed);
        const KnownDistribution dist =
            realize(parse_distribution_spec(spec), rng);
        return std::make_pair(draw_counts(dist, n, rng), dist.true_entropy);
      },
      py::arg("spec"), py::arg("n"), py::arg("seed"),
      "draw n samples from a distribution spec; returns (counts, "
      "true_entropy)");
}
