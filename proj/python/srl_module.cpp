#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "srl/bss.hpp"
#include "srl/config.hpp"
#include "srl/csv.hpp"
#include "srl/errors.hpp"
#include "srl/ets.hpp"
#include "srl/harness.hpp"
#include "srl/lasso.hpp"
#include "srl/screening.hpp"
#include "srl/stats.hpp"
#include "srl/verify.hpp"

namespace py = pybind11;
using namespace srl;

namespace {

std::vector<std::size_t> to_list(const SupportSet& s) { return {s.begin(), s.end()}; }

SparsityRule s_rule(std::optional<std::size_t> s) {
  if (s) return ExplicitS{*s};
  return TwoLogP{};
}

py::dict params_dict(const AurwmParams& p) {
  py::dict d;
  d["p"] = p.p;
  d["n"] = p.n;
  d["k"] = p.k;
  d["r"] = p.r;
  d["s"] = p.s;
  d["sigma"] = p.sigma;
  d["a"] = p.a();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bindings for the sparse support recovery library";

  // pybind11 tries the most recently registered translator first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

  m.def(
      "aurwm_derive",
      [](std::size_t p, double k, double r, std::optional<std::size_t> s, double sigma) {
        return params_dict(aurwm_derive(p, k, r, s_rule(s), sigma));
      },
      py::arg("p"), py::arg("k") = 0.9, py::arg("r") = 2.0, py::arg("s") = py::none(), py::arg("sigma") = 1.0,
      "n = floor(p^k), a = sqrt(2 r log p / n); s defaults to floor(2 log p).");

  m.def(
      "spike_value",
      [](std::size_t p, double k, double r, std::size_t s, std::size_t n_spike, double snr) {
        return spike_value(aurwm_derive(p, k, r, ExplicitS{s}), n_spike, snr);
      },
      py::arg("p"), py::arg("k"), py::arg("r"), py::arg("s"), py::arg("n_spike"), py::arg("snr"));

  m.def(
      "generate_design",
      [](std::size_t n, std::size_t p, std::uint64_t seed, std::uint64_t stream_id, std::uint64_t rep) {
        return generate_design(n, p, SeedStream(seed, stream_id, rep));
      },
      py::arg("n"), py::arg("p"), py::arg("seed") = 1, py::arg("stream_id") = 0, py::arg("rep") = 0);

  m.def("marginal_correlations", &marginal_correlations, py::arg("x"), py::arg("y"));
  m.def(
      "ms_select", [](const Vector& mu, std::size_t s) { return to_list(ms_select(mu, {MsTopS{s}})); },
      py::arg("mu"), py::arg("s"));
  m.def(
      "bss_exhaustive",
      [](const Matrix& x, const Vector& y, std::size_t s, std::uint64_t budget) {
        return to_list(bss_exhaustive(x, y, s, budget));
      },
      py::arg("x"), py::arg("y"), py::arg("s"), py::arg("budget") = kDefaultBssBudget);
  m.def("hard_threshold", &hard_threshold, py::arg("v"), py::arg("s_hat"));
  m.def(
      "iht",
      [](const Matrix& x, const Vector& y, std::size_t s_hat, double step, std::size_t max_iters, double rel_tol) {
        IhtConfig cfg;
        cfg.s_hat = s_hat;
        cfg.step = step;
        cfg.max_iters = max_iters;
        cfg.rel_tol = rel_tol;
        const IhtResult r = iht(x, y, cfg);
        return py::make_tuple(r.beta, r.iters, r.obj_trace);
      },
      py::arg("x"), py::arg("y"), py::arg("s_hat"), py::arg("step") = 0.5, py::arg("max_iters") = 500,
      py::arg("rel_tol") = 1e-8, "Returns (beta, iterations, objective trace).");
  m.def("ets_deltas", &ets_deltas, py::arg("x2"), py::arg("y2"), py::arg("beta_iht"));
  m.def(
      "ets_select",
      [](const Matrix& x, const Vector& y, std::size_t s, std::optional<std::size_t> s_hat, double step,
         std::uint64_t seed) {
        EtsConfig cfg;
        cfg.output = EtsTopS{s};
        cfg.iht.step = step;
        if (s_hat) {
          cfg.iht.s_hat = *s_hat;
        } else {
          cfg.iht.s_hat_selection =
              CrossValidateSHat{default_s_hat_grid(s, static_cast<std::size_t>(x.rows())), 5};
        }
        return to_list(ets_select(x, y, cfg, SeedStream(seed, 0, 0)));
      },
      py::arg("x"), py::arg("y"), py::arg("s"), py::arg("s_hat") = py::none(), py::arg("step") = 0.5,
      py::arg("seed") = 1, "Full-data ETS selecting exactly s columns; s_hat=None cross-validates.");
  m.def(
      "lasso_select",
      [](const Matrix& x, const Vector& y, std::size_t s) {
        LassoConfig cfg;
        cfg.target_sparsity = s;
        return to_list(lasso_select(x, y, cfg));
      },
      py::arg("x"), py::arg("y"), py::arg("s"));
  m.def(
      "wilson_interval",
      [](std::size_t k, std::size_t n) {
        const Interval ci = wilson_interval(k, n);
        return py::make_tuple(ci.lo, ci.hi);
      },
      py::arg("successes"), py::arg("trials"));

  m.def(
      "run_config",
      [](const std::string& yaml, std::size_t workers, bool omit_timing) {
        const RunConfig cfg = parse_run_config(yaml);
        ExperimentResult res;
        {
          py::gil_scoped_release release;
          res = run_experiment(cfg.grid, workers);
        }
        std::ostringstream records, summary;
        csv::write_records(records, res.records, omit_timing);
        csv::write_summary(summary, res.summaries);
        return py::make_tuple(records.str(), summary.str());
      },
      py::arg("yaml"), py::arg("workers") = 1, py::arg("omit_timing") = false,
      "Runs a YAML experiment config; returns (records_csv, summary_csv).");

  m.def(
      "verify",
      [](const std::string& suite) {
        py::list out;
        for (const SuiteReport& r : run_verify(suite)) {
          for (const PropertyResult& p : r.properties) {
            py::dict d;
            d["suite"] = r.suite;
            d["property"] = p.property;
            d["passed"] = p.passed;
            d["detail"] = p.detail;
            out.append(d);
          }
        }
        return out;
      },
      py::arg("suite") = "all");
}
