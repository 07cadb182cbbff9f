#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hbnum/cli.hpp"
#include "hbnum/dataset.hpp"
#include "hbnum/diagnostics.hpp"
#include "hbnum/inference.hpp"
#include "hbnum/rca.hpp"
#include "hbnum/sampler.hpp"
#include "hbnum/simulate.hpp"

namespace py = pybind11;
using namespace hbnum;

namespace {

RegressionData make_data(const std::vector<std::string>& subjects, const std::vector<double>& x,
                         const std::vector<double>& y) {
    if (subjects.size() != x.size() || x.size() != y.size()) {
        throw std::invalid_argument("subjects, x and y must have equal lengths");
    }
    RegressionData d;
    for (std::size_t k = 0; k < x.size(); ++k) d.add(subjects[k], x[k], y[k]);
    return d;
}

py::dict summary_dict(const ParameterSummary& s) {
    py::dict d;
    d["parameter"] = s.parameter;
    d["mode"] = s.mode;
    d["mean"] = s.mean;
    d["sd"] = s.sd;
    d["hpdi"] = py::make_tuple(s.hpdi.lower, s.hpdi.upper);
    d["p_below_zero"] = s.p_below_zero;
    return d;
}

py::dict bf_dict(const BayesFactorResult& r) {
    py::dict d;
    d["bf10"] = r.bf10;
    d["prior_density_at_null"] = r.prior_density_at_null;
    d["posterior_density_at_null"] = r.posterior_density_at_null;
    d["method"] = to_string(r.method);
    d["posterior_underflow"] = r.posterior_underflow;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hierarchical Bayesian regression for SNARC and numerical distance effects";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<DegenerateSampleError>(m, "DegenerateSampleError", PyExc_ValueError);
    py::register_exception<DegenerateDesignError>(m, "DegenerateDesignError", PyExc_ValueError);

    py::class_<Bounds>(m, "Bounds")
        .def(py::init<double, double>(), py::arg("lo"), py::arg("hi"))
        .def_readwrite("lo", &Bounds::lo)
        .def_readwrite("hi", &Bounds::hi)
        .def("__repr__", [](const Bounds& b) {
            std::ostringstream ss;
            ss << "Bounds(" << b.lo << ", " << b.hi << ")";
            return ss.str();
        });

    py::class_<ModelSpec>(m, "ModelSpec")
        .def_readwrite("name", &ModelSpec::name)
        .def_readwrite("intercept_bounds", &ModelSpec::intercept_bounds)
        .def_readwrite("slope_mean_bounds", &ModelSpec::slope_mean_bounds)
        .def_readwrite("gamma_shape", &ModelSpec::gamma_shape)
        .def_readwrite("gamma_rate", &ModelSpec::gamma_rate)
        .def_readwrite("predictor_values", &ModelSpec::predictor_values);
    m.def("snarc_spec", &snarc_spec_default);
    m.def("nde_spec", &nde_spec_default);

    py::class_<SamplerConfig>(m, "SamplerConfig")
        .def(py::init([](std::size_t chains, std::size_t iterations, std::size_t burnin, std::size_t thin,
                         std::uint64_t seed, std::size_t threads) {
                 SamplerConfig c;
                 c.n_chains = chains;
                 c.n_iterations = iterations;
                 c.n_burnin = burnin;
                 c.thin = thin;
                 c.seed = seed;
                 c.max_threads = threads;
                 c.validate();
                 return c;
             }),
             py::arg("chains") = 3, py::arg("iterations") = 100000, py::arg("burnin") = 5000, py::arg("thin") = 10,
             py::arg("seed") = 42, py::arg("threads") = 0)
        .def_readwrite("chains", &SamplerConfig::n_chains)
        .def_readwrite("iterations", &SamplerConfig::n_iterations)
        .def_readwrite("burnin", &SamplerConfig::n_burnin)
        .def_readwrite("thin", &SamplerConfig::thin)
        .def_readwrite("seed", &SamplerConfig::seed)
        .def_readwrite("threads", &SamplerConfig::max_threads)
        .def_property_readonly("retained_per_chain", &SamplerConfig::retained_per_chain);

    py::class_<Posterior>(m, "Posterior")
        .def_readonly("subjects", &Posterior::subjects)
        .def_property_readonly("parameter_names", [](const Posterior& p) { return p.layout().names(); })
        .def_property_readonly("n_chains", [](const Posterior& p) { return p.chains.size(); })
        .def_property_readonly("draws_per_chain", &Posterior::draws_per_chain)
        .def("pooled", py::overload_cast<const std::string&>(&Posterior::pooled, py::const_), py::arg("name"))
        .def("chain", [](const Posterior& p, std::size_t chain, const std::string& name) {
                 const auto& c = p.chains.at(chain);
                 const auto col = c.column(p.layout().index_of(name));
                 return std::vector<double>(col.begin(), col.end());
             }, py::arg("chain"), py::arg("name"))
        .def("rhat", [](const Posterior& p, double threshold) {
                 py::dict out;
                 for (const auto& row : rhat_report(p, threshold).rows) out[py::str(row.parameter)] = row.rhat;
                 return out;
             }, py::arg("threshold") = 1.01)
        .def("summary", [](const Posterior& p, double mass) {
                 py::list out;
                 for (const auto& s : summarize(p, mass)) out.append(summary_dict(s));
                 return out;
             }, py::arg("mass") = 0.95)
        .def("to_csv", [](const Posterior& p) {
            std::ostringstream ss;
            write_samples_csv(ss, p);
            return ss.str();
        });

    m.def("fit",
          [](const std::vector<std::string>& subjects, const std::vector<double>& x, const std::vector<double>& y,
             const ModelSpec& spec, const SamplerConfig& config) {
              const auto data = make_data(subjects, x, y);
              py::gil_scoped_release release;
              return run_chains(spec, data, config);
          },
          py::arg("subjects"), py::arg("x"), py::arg("y"), py::arg("spec") = snarc_spec_default(),
          py::arg("config") = SamplerConfig{},
          "Fit the hierarchical model to aggregated cells given as parallel lists.");

    m.def("load_trials",
          [](const std::string& text, const std::string& kind, std::optional<double> rt_cutoff) {
              const TaskKind k = task_kind_from_string(kind);
              const auto filtered =
                  filter_trials(parse_trials(text, k), rt_cutoff.value_or(k == TaskKind::Snarc ? 3000.0 : 5000.0));
              const auto data = k == TaskKind::Snarc
                                    ? to_regression_data(aggregate_snarc(filtered.trials))
                                    : to_regression_data(aggregate_nde(filtered.trials, default_ratio_bins()));
              py::list subjects, xs, ys;
              for (std::size_t i = 0; i < data.subject_count(); ++i) {
                  for (std::size_t j = 0; j < data.cells[i].size(); ++j) {
                      subjects.append(data.subjects[i]);
                      xs.append(data.cells[i].x[j]);
                      ys.append(data.cells[i].y[j]);
                  }
              }
              py::dict stats;
              stats["total"] = filtered.stats.total;
              stats["removed_errors"] = filtered.stats.removed_errors;
              stats["removed_slow"] = filtered.stats.removed_slow;
              stats["retained"] = filtered.stats.retained;
              stats["exclusion_fraction"] = filtered.stats.exclusion_fraction;
              py::dict out;
              out["subjects"] = subjects;
              out["x"] = xs;
              out["y"] = ys;
              out["filter"] = stats;
              return out;
          },
          py::arg("text"), py::arg("kind") = "snarc", py::arg("rt_cutoff") = py::none(),
          "Parse, filter and aggregate a trial CSV; returns cells and filter counts.");

    m.def("simulate",
          [](std::size_t n_subjects, double slope_mean, double slope_sd, double noise_sd, std::vector<int> predictors,
             std::uint64_t seed) {
              SimConfig c;
              c.n_subjects = n_subjects;
              c.slope_mean = slope_mean;
              c.slope_sd = slope_sd;
              c.noise_sd = noise_sd;
              c.predictor_values = std::move(predictors);
              c.seed = seed;
              const auto sim = generate_snarc_sim(c);
              py::list subjects, xs, ys;
              for (const auto& cell : sim.dataset.cells) {
                  subjects.append(cell.subject);
                  xs.append(static_cast<double>(cell.number));
                  ys.append(cell.drt_ms);
              }
              py::dict out;
              out["subjects"] = subjects;
              out["x"] = xs;
              out["y"] = ys;
              out["true_intercepts"] = sim.truth.intercepts;
              out["true_slopes"] = sim.truth.slopes;
              return out;
          },
          py::arg("n_subjects") = 15, py::arg("slope_mean") = -10.0, py::arg("slope_sd") = 1.0,
          py::arg("noise_sd") = 100.0, py::arg("predictors") = std::vector<int>{1, 2, 8, 9}, py::arg("seed") = 1);

    m.def("hpdi", [](const std::vector<double>& s, double mass) {
        const auto h = hpdi(s, mass);
        return py::make_tuple(h.lower, h.upper);
    }, py::arg("samples"), py::arg("mass") = 0.95);
    m.def("posterior_mode", [](const std::vector<double>& s) { return posterior_mode(s); }, py::arg("samples"));
    m.def("kde_density", [](const std::vector<double>& s, double x) { return kde_density(s, x); }, py::arg("samples"),
          py::arg("x"));
    m.def("tail_prob", [](const std::vector<double>& s, double t) { return tail_prob(s, t); }, py::arg("samples"),
          py::arg("threshold") = 0.0);
    m.def("savage_dickey_bf",
          [](const std::vector<double>& s, double prior_density, const std::string& method) {
              return bf_dict(savage_dickey_bf(s, prior_density, density_method_from_string(method)));
          },
          py::arg("samples"), py::arg("prior_density_at_null"), py::arg("method") = "normal");
    m.def("rhat", [](const std::vector<std::vector<double>>& chains) {
        std::vector<std::span<const double>> views(chains.begin(), chains.end());
        return rhat(views);
    }, py::arg("chains"));

    m.def("ols_fit", [](const std::vector<double>& x, const std::vector<double>& y) {
        const auto f = ols_fit(x, y);
        return py::make_tuple(f.intercept, f.slope);
    }, py::arg("x"), py::arg("y"));
    m.def("one_sample_t", [](const std::vector<double>& v, double mu0) {
        const auto r = one_sample_t(v, mu0);
        return py::make_tuple(r.t, r.df, r.p);
    }, py::arg("values"), py::arg("mu0") = 0.0);
    m.def("mean_ci", [](const std::vector<double>& v, double level) {
        const auto ci = mean_ci(v, level);
        return py::make_tuple(ci.lower, ci.upper);
    }, py::arg("values"), py::arg("level") = 0.95);

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int status;
        {
            py::gil_scoped_release release;
            status = run_cli(args, out, err);
        }
        return py::make_tuple(status, out.str(), err.str());
    }, py::arg("args"), "Run an hbnum subcommand; returns (status, stdout, stderr).");
}
