#include "hbnum/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "hbnum/dataset.hpp"
#include "hbnum/diagnostics.hpp"
#include "hbnum/inference.hpp"
#include "hbnum/model.hpp"
#include "hbnum/plot.hpp"
#include "hbnum/rca.hpp"
#include "hbnum/sampler.hpp"
#include "hbnum/simulate.hpp"
#include "text_util.hpp"

namespace hbnum {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct SpecOverrides {
    std::optional<double> intercept_lo;
    std::optional<double> intercept_hi;
    std::optional<double> slope_mean_lo;
    std::optional<double> slope_mean_hi;
    std::optional<double> gamma_shape;
    std::optional<double> gamma_rate;
};

struct RunConfig {
    std::string model = "snarc";
    std::string input;
    std::string input_kind = "trials";
    std::optional<double> rt_cutoff;
    SamplerConfig sampler;
    SpecOverrides overrides;
    std::string out_dir;
    double hpdi_mass = 0.95;
    double rhat_threshold = 1.01;
    std::string bf_method = "normal";
    std::string config_file;
};

struct SimOptions {
    SimConfig sim;
    std::size_t replications = 100;
    double ci_level = 0.95;
};

void add_sampler_options(CLI::App* app, SamplerConfig& s) {
    app->add_option("--chains", s.n_chains, "Number of chains")->capture_default_str();
    app->add_option("--iters", s.n_iterations, "Iterations per chain, burn-in included")->capture_default_str();
    app->add_option("--burnin", s.n_burnin, "Discarded leading iterations")->capture_default_str();
    app->add_option("--thin", s.thin, "Keep every thin-th iteration after burn-in")->capture_default_str();
    app->add_option("--seed", s.seed, "Random seed")->capture_default_str();
    app->add_option("--threads", s.max_threads, "Max concurrent chains (0 = all cores)")->capture_default_str();
}

void add_spec_options(CLI::App* app, SpecOverrides& o) {
    app->add_option("--intercept-lo", o.intercept_lo, "Lower bound of the intercept prior");
    app->add_option("--intercept-hi", o.intercept_hi, "Upper bound of the intercept prior");
    app->add_option("--slope-mean-lo", o.slope_mean_lo, "Lower bound of the group slope prior");
    app->add_option("--slope-mean-hi", o.slope_mean_hi, "Upper bound of the group slope prior");
    app->add_option("--gamma-shape", o.gamma_shape, "Shape of the gamma priors on precisions");
    app->add_option("--gamma-rate", o.gamma_rate, "Rate of the gamma priors on precisions");
}

void add_summary_options(CLI::App* app, RunConfig& c) {
    app->add_option("--hpdi-mass", c.hpdi_mass, "Probability mass of reported intervals")->capture_default_str();
    app->add_option("--rhat-threshold", c.rhat_threshold, "Convergence threshold for R-hat")->capture_default_str();
    app->add_option("--bf-method", c.bf_method, "Posterior density at 0: normal or kde")
        ->check(CLI::IsMember({"normal", "kde"}))
        ->capture_default_str();
}

ModelSpec build_spec(TaskKind kind, const SpecOverrides& o) {
    ModelSpec spec = default_spec(kind);
    if (o.intercept_lo) spec.intercept_bounds.lo = *o.intercept_lo;
    if (o.intercept_hi) spec.intercept_bounds.hi = *o.intercept_hi;
    if (o.slope_mean_lo) spec.slope_mean_bounds.lo = *o.slope_mean_lo;
    if (o.slope_mean_hi) spec.slope_mean_bounds.hi = *o.slope_mean_hi;
    if (o.gamma_shape) spec.gamma_shape = *o.gamma_shape;
    if (o.gamma_rate) spec.gamma_rate = *o.gamma_rate;
    spec.validate();
    return spec;
}

void apply_thread_env(SamplerConfig& s) {
    const char* env = std::getenv("HBNUM_THREADS");
    if (env == nullptr) return;
    const auto cap = detail::parse_integer(detail::trim(env));
    if (!cap || *cap < 1) throw std::invalid_argument("HBNUM_THREADS must be a positive integer");
    const auto limit = static_cast<std::size_t>(*cap);
    s.max_threads = s.max_threads == 0 ? limit : std::min(s.max_threads, limit);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Tracks the files a subcommand writes so the summary can list them.
class OutputDir {
public:
    explicit OutputDir(const std::string& dir) : dir_(dir) {
        if (dir.empty()) throw std::invalid_argument("output directory must not be empty");
        fs::create_directories(dir_);
    }

    template <typename Writer>
    void write(const std::string& name, Writer&& writer) {
        std::ofstream out(dir_ / name, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write '" + (dir_ / name).string() + "'");
        writer(out);
        if (!out) throw std::runtime_error("failed writing '" + (dir_ / name).string() + "'");
        files_.push_back(name);
    }

    void write_json(const std::string& name, json doc) {
        std::vector<std::string> manifest = files_;
        manifest.push_back(name);
        doc["outputs"] = manifest;
        write(name, [&](std::ostream& out) { out << doc.dump(2) << '\n'; });
    }

private:
    fs::path dir_;
    std::vector<std::string> files_;
};

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json to_json(const SamplerConfig& s) {
    return {{"chains", s.n_chains}, {"iterations", s.n_iterations}, {"burnin", s.n_burnin},
            {"thin", s.thin},       {"seed", s.seed},                {"retained_per_chain", s.retained_per_chain()}};
}

json to_json(const ModelSpec& spec) {
    return {{"name", spec.name},
            {"intercept_bounds", {spec.intercept_bounds.lo, spec.intercept_bounds.hi}},
            {"slope_mean_bounds", {spec.slope_mean_bounds.lo, spec.slope_mean_bounds.hi}},
            {"gamma_shape", spec.gamma_shape},
            {"gamma_rate", spec.gamma_rate},
            {"predictor_values", spec.predictor_values}};
}

json to_json(const FilterStats& f) {
    return {{"total", f.total},
            {"removed_errors", f.removed_errors},
            {"removed_slow", f.removed_slow},
            {"retained", f.retained},
            {"exclusion_fraction", f.exclusion_fraction}};
}

json to_json(const BayesFactorResult& bf) {
    return {{"bf10", number_or_null(bf.bf10)},
            {"prior_density_at_null", bf.prior_density_at_null},
            {"posterior_density_at_null", bf.posterior_density_at_null},
            {"method", to_string(bf.method)},
            {"posterior_underflow", bf.posterior_underflow}};
}

json to_json(const ParameterSummary& s) {
    return {{"parameter", s.parameter}, {"mode", s.mode},           {"mean", s.mean},
            {"sd", s.sd},               {"hpdi", {s.hpdi.lower, s.hpdi.upper}}, {"hpdi_mass", s.hpdi.mass},
            {"p_below_zero", s.p_below_zero}};
}

std::string hex(std::uint64_t v) {
    std::ostringstream ss;
    ss << std::hex << v;
    return ss.str();
}

/// Shared tail of `fit` and `summarize`: diagnostics, summaries, Bayes factor, plot.
void write_posterior_outputs(const Posterior& posterior, const RunConfig& cfg, OutputDir& dir, json& summary,
                             std::ostream& out, std::ostream& err) {
    const auto layout = posterior.layout();

    json convergence;
    if (posterior.chains.size() >= 2 && posterior.draws_per_chain() >= 2) {
        const auto report = rhat_report(posterior, cfg.rhat_threshold);
        dir.write("diagnostics.csv", [&](std::ostream& o) { write_rhat_csv(o, report); });
        convergence = {{"threshold", report.threshold},
                       {"max_rhat", number_or_null(report.max_rhat())},
                       {"all_converged", report.all_converged()}};
        if (!report.all_converged()) {
            err << "warning: R-hat above " << report.threshold << " for at least one parameter (max "
                << report.max_rhat() << ")\n";
        }
    } else {
        dir.write("diagnostics.csv", [](std::ostream& o) { o << "parameter,rhat,converged\n"; });
        convergence = {{"threshold", cfg.rhat_threshold}, {"max_rhat", nullptr}, {"all_converged", nullptr}};
        err << "warning: R-hat needs at least two chains with two draws each; diagnostics skipped\n";
    }

    const auto summaries = summarize(posterior, cfg.hpdi_mass);
    json params = json::array();
    for (const auto& s : summaries) params.push_back(to_json(s));

    const auto b = posterior.pooled(layout.b());
    const auto bf = savage_dickey_bf(b, posterior.spec.slope_mean_prior_density(0.0),
                                     density_method_from_string(cfg.bf_method));
    const auto& b_summary = summaries[layout.b()];

    const KernelDensity kde(b);
    const auto curve = density_curve(kde, 512);
    dir.write("posterior_b_curve.csv", [&](std::ostream& o) { write_curve_csv(o, curve, b_summary.hpdi); });
    DensityPlot plot;
    plot.title = "Posterior of the group-level slope b (" + posterior.spec.name + ")";
    plot.curve = curve;
    plot.interval = b_summary.hpdi;
    dir.write("posterior_b.svg", [&](std::ostream& o) { write_density_svg(o, plot); });

    summary["convergence"] = convergence;
    summary["parameters"] = params;
    summary["bayes_factor"] = to_json(bf);

    out << "b: mode " << b_summary.mode << ", mean " << b_summary.mean << ", " << cfg.hpdi_mass * 100 << "% HPDI ["
        << b_summary.hpdi.lower << ", " << b_summary.hpdi.upper << "], P(b<0) " << b_summary.p_below_zero
        << ", BF10 " << bf.bf10 << '\n';
}

RegressionData load_data(const RunConfig& cfg, TaskKind kind, json& summary, OutputDir& dir) {
    std::ifstream in(cfg.input, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read input '" + cfg.input + "'");
    if (cfg.input_kind == "cells") return parse_cells(in);

    const double cutoff = cfg.rt_cutoff.value_or(kind == TaskKind::Snarc ? 3000.0 : 5000.0);
    const auto filtered = filter_trials(parse_trials(in, kind), cutoff);
    summary["rt_cutoff_ms"] = cutoff;
    summary["filter"] = to_json(filtered.stats);
    RegressionData data = kind == TaskKind::Snarc
                              ? to_regression_data(aggregate_snarc(filtered.trials))
                              : to_regression_data(aggregate_nde(filtered.trials, default_ratio_bins()));
    dir.write("cells.csv", [&](std::ostream& o) { write_cells(o, data); });
    return data;
}

int cmd_fit(RunConfig cfg, std::ostream& out, std::ostream& err) {
    apply_thread_env(cfg.sampler);
    const TaskKind kind = task_kind_from_string(cfg.model);
    const ModelSpec spec = build_spec(kind, cfg.overrides);
    OutputDir dir(cfg.out_dir);

    json summary;
    summary["command"] = "fit";
    summary["model"] = cfg.model;
    summary["input"] = cfg.input;
    summary["input_kind"] = cfg.input_kind;
    const RegressionData data = load_data(cfg, kind, summary, dir);
    summary["n_subjects"] = data.subject_count();
    summary["n_cells"] = data.cell_count();
    summary["data_fingerprint"] = hex(fingerprint(data));
    summary["spec"] = to_json(spec);
    summary["sampler"] = to_json(cfg.sampler);

    const Posterior posterior = run_chains(spec, data, cfg.sampler);
    dir.write("samples.csv", [&](std::ostream& o) { write_samples_csv(o, posterior); });
    summary["subjects"] = posterior.subjects;
    write_posterior_outputs(posterior, cfg, dir, summary, out, err);
    dir.write_json("summary.json", summary);
    return 0;
}

int cmd_summarize(RunConfig cfg, const std::string& samples_path, std::ostream& out, std::ostream& err) {
    const TaskKind kind = task_kind_from_string(cfg.model);
    const ModelSpec spec = build_spec(kind, cfg.overrides);
    std::ifstream in(samples_path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read samples '" + samples_path + "'");
    const Posterior posterior = read_samples_csv(in, spec);
    OutputDir dir(cfg.out_dir);

    json summary;
    summary["command"] = "summarize";
    summary["model"] = cfg.model;
    summary["samples"] = samples_path;
    summary["spec"] = to_json(spec);
    summary["chains"] = posterior.chains.size();
    summary["draws_per_chain"] = posterior.draws_per_chain();
    write_posterior_outputs(posterior, cfg, dir, summary, out, err);
    dir.write_json("summary.json", summary);
    return 0;
}

json to_json(const SimConfig& s) {
    return {{"n_subjects", s.n_subjects},
            {"predictor_values", s.predictor_values},
            {"slope_mean", s.slope_mean},
            {"slope_sd", s.slope_sd},
            {"intercept_range", {s.intercept_range.lo, s.intercept_range.hi}},
            {"noise_sd", s.noise_sd},
            {"seed", s.seed}};
}

int cmd_compare(RunConfig cfg, const SimOptions& sim, std::ostream& out, std::ostream& /*err*/) {
    apply_thread_env(cfg.sampler);
    const TaskKind kind = task_kind_from_string(cfg.model);
    const ModelSpec spec = build_spec(kind, cfg.overrides);
    OutputDir dir(cfg.out_dir);

    json summary;
    summary["command"] = "compare";
    summary["model"] = cfg.model;
    RegressionData data;
    if (cfg.input.empty()) {
        SimConfig sc = sim.sim;
        sc.seed = cfg.sampler.seed;
        data = to_regression_data(generate_snarc_sim(sc).dataset);
        summary["simulation"] = to_json(sc);
        dir.write("cells.csv", [&](std::ostream& o) { write_cells(o, data); });
    } else {
        summary["input"] = cfg.input;
        summary["input_kind"] = cfg.input_kind;
        data = load_data(cfg, kind, summary, dir);
    }
    summary["spec"] = to_json(spec);
    summary["sampler"] = to_json(cfg.sampler);

    const auto report = compare_methods(data, spec, cfg.sampler, sim.ci_level,
                                        density_method_from_string(cfg.bf_method));
    dir.write("slopes.csv", [&](std::ostream& o) {
        o << "subject,ols_slope,posterior_mean_slope\n";
        for (std::size_t i = 0; i < data.subject_count(); ++i) {
            o << data.subjects[i] << ',' << detail::format_double(report.classical_slopes[i]) << ','
              << detail::format_double(report.posterior_mean_slopes[i]) << '\n';
        }
    });

    const KernelDensity kde(report.b_samples);
    const auto curve = density_curve(kde, 512);
    dir.write("posterior_b_curve.csv", [&](std::ostream& o) { write_curve_csv(o, curve, report.bayes_hpdi); });
    DensityPlot plot;
    plot.title = "Posterior of b with per-subject OLS slopes";
    plot.curve = curve;
    plot.interval = report.bayes_hpdi;
    plot.histogram = report.classical_slopes;
    dir.write("comparison_b.svg", [&](std::ostream& o) { write_density_svg(o, plot); });

    summary["bayesian"] = {{"mode", report.bayes_mode},
                           {"mean", report.bayes_mean},
                           {"hpdi", {report.bayes_hpdi.lower, report.bayes_hpdi.upper}},
                           {"hpdi_mass", report.bayes_hpdi.mass},
                           {"bayes_factor", to_json(report.bayes_factor)}};
    summary["classical"] = {{"t", report.t_result.t},
                            {"df", report.t_result.df},
                            {"p", report.t_result.p},
                            {"ci", {report.classical_ci.lower, report.classical_ci.upper}},
                            {"ci_level", report.classical_ci.level}};
    dir.write_json("comparison.json", summary);

    out << "classical: t(" << report.t_result.df << ") = " << report.t_result.t << ", p = " << report.t_result.p
        << ", CI [" << report.classical_ci.lower << ", " << report.classical_ci.upper << "]\n"
        << "bayesian: mode " << report.bayes_mode << ", HPDI [" << report.bayes_hpdi.lower << ", "
        << report.bayes_hpdi.upper << "], BF10 " << report.bayes_factor.bf10 << '\n';
    return 0;
}

int cmd_simulate(RunConfig cfg, const SimOptions& sim, std::ostream& out, std::ostream& /*err*/) {
    apply_thread_env(cfg.sampler);
    const ModelSpec spec = build_spec(TaskKind::Snarc, cfg.overrides);
    OutputDir dir(cfg.out_dir);
    SimOptions opts = sim;
    opts.sim.seed = cfg.sampler.seed;  // replication r uses seed + r for data and sampler
    const auto rows = run_sweep(opts.sim, opts.replications, spec, cfg.sampler, opts.ci_level);
    dir.write("sweep.csv", [&](std::ostream& o) { write_sweep_csv(o, rows); });

    std::size_t narrower = 0;
    std::size_t cover_bayes = 0;
    std::size_t cover_classical = 0;
    std::size_t type2_rescued = 0;
    for (const auto& r : rows) {
        narrower += (r.hpdi_hi - r.hpdi_lo) < (r.ci_hi - r.ci_lo);
        cover_bayes += r.covered_bayes;
        cover_classical += r.covered_classical;
        type2_rescued += r.p > 0.05 && r.bf10 > 10.0;
    }
    const double n = static_cast<double>(std::max<std::size_t>(rows.size(), 1));
    json summary;
    summary["command"] = "simulate";
    summary["simulation"] = to_json(opts.sim);
    summary["replications"] = rows.size();
    summary["ci_level"] = sim.ci_level;
    summary["spec"] = to_json(spec);
    summary["sampler"] = to_json(cfg.sampler);
    summary["fraction_hpdi_narrower"] = static_cast<double>(narrower) / n;
    summary["coverage_bayes"] = static_cast<double>(cover_bayes) / n;
    summary["coverage_classical"] = static_cast<double>(cover_classical) / n;
    summary["classical_nonsignificant_with_bf10_over_10"] = type2_rescued;
    dir.write_json("summary.json", summary);

    out << rows.size() << " replications: HPDI narrower in " << narrower << ", coverage bayes " << cover_bayes
        << ", classical " << cover_classical << ", p>0.05 with BF10>10 in " << type2_rescued << '\n';
    return 0;
}

void add_sim_options(CLI::App* app, SimOptions& s) {
    app->add_option("--subjects", s.sim.n_subjects, "Simulated subjects")->capture_default_str();
    app->add_option("--slope-mean", s.sim.slope_mean, "Population mean slope")->capture_default_str();
    app->add_option("--slope-sd", s.sim.slope_sd, "Population slope sd")->capture_default_str();
    app->add_option("--noise-sd", s.sim.noise_sd, "Residual sd")->capture_default_str();
    app->add_option("--sim-intercept-lo", s.sim.intercept_range.lo, "Intercept range lower end")
        ->capture_default_str();
    app->add_option("--sim-intercept-hi", s.sim.intercept_range.hi, "Intercept range upper end")
        ->capture_default_str();
    app->add_option("--predictors", s.sim.predictor_values, "Predictor values")->delimiter(',');
    app->add_option("--ci-level", s.ci_level, "Interval level for CI and HPDI")->capture_default_str();
}

/// Appends config-file entries for flags absent from the command line.
std::vector<std::string> merge_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;
    for (const auto& [key, value] : parse_config_text(read_file(path))) {
        if (key == "config") continue;
        const std::string flag = "--" + key;
        const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
        if (!given) {
            args.push_back(flag);
            args.push_back(value);
        }
    }
    return args;
}

}  // namespace

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = detail::trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string_view::npos) throw ParseError(line_no, "config line must be key=value");
        const auto key = detail::trim(t.substr(0, eq));
        if (key.empty()) throw ParseError(line_no, "empty config key");
        out[std::string(key)] = std::string(detail::trim(t.substr(eq + 1)));
    }
    return out;
}

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hierarchical Bayesian regression for SNARC and numerical distance effects"};
    app.require_subcommand(1);

    RunConfig cfg;
    SimOptions sim;
    std::string samples_path;

    auto* fit = app.add_subcommand("fit", "Fit the hierarchical model to a trial or cell file");
    fit->add_option("--model", cfg.model, "snarc or nde")->check(CLI::IsMember({"snarc", "nde"}))->capture_default_str();
    fit->add_option("--input", cfg.input, "Trial or cell file")->required();
    fit->add_option("--input-kind", cfg.input_kind, "trials or cells")
        ->check(CLI::IsMember({"trials", "cells"}))
        ->capture_default_str();
    fit->add_option("--rt-cutoff", cfg.rt_cutoff, "Drop trials slower than this (ms); 3000 snarc, 5000 nde");
    fit->add_option("--out", cfg.out_dir, "Output directory")->required();
    fit->add_option("--config", cfg.config_file, "key=value defaults file");
    add_sampler_options(fit, cfg.sampler);
    add_spec_options(fit, cfg.overrides);
    add_summary_options(fit, cfg);

    auto* simulate = app.add_subcommand("simulate", "Replicated simulation comparing HPDI and classical CI");
    simulate->add_option("--replications", sim.replications, "Number of simulated datasets")->capture_default_str();
    simulate->add_option("--out", cfg.out_dir, "Output directory")->required();
    simulate->add_option("--config", cfg.config_file, "key=value defaults file");
    add_sim_options(simulate, sim);
    add_sampler_options(simulate, cfg.sampler);
    add_spec_options(simulate, cfg.overrides);

    auto* compare = app.add_subcommand("compare", "Classical vs Bayesian report for one dataset");
    compare->add_option("--model", cfg.model, "snarc or nde")->check(CLI::IsMember({"snarc", "nde"}))->capture_default_str();
    compare->add_option("--input", cfg.input, "Trial or cell file; omit to simulate one dataset");
    compare->add_option("--input-kind", cfg.input_kind, "trials or cells")
        ->check(CLI::IsMember({"trials", "cells"}))
        ->capture_default_str();
    compare->add_option("--rt-cutoff", cfg.rt_cutoff, "Drop trials slower than this (ms)");
    compare->add_option("--out", cfg.out_dir, "Output directory")->required();
    compare->add_option("--config", cfg.config_file, "key=value defaults file");
    compare->add_option("--bf-method", cfg.bf_method, "normal or kde")->check(CLI::IsMember({"normal", "kde"}));
    add_sim_options(compare, sim);
    add_sampler_options(compare, cfg.sampler);
    add_spec_options(compare, cfg.overrides);

    auto* summarize_cmd = app.add_subcommand("summarize", "Re-summarize an existing samples.csv");
    summarize_cmd->add_option("--samples", samples_path, "samples.csv from a previous fit")->required();
    summarize_cmd->add_option("--model", cfg.model, "snarc or nde")->check(CLI::IsMember({"snarc", "nde"}))->capture_default_str();
    summarize_cmd->add_option("--out", cfg.out_dir, "Output directory")->required();
    summarize_cmd->add_option("--config", cfg.config_file, "key=value defaults file");
    add_spec_options(summarize_cmd, cfg.overrides);
    add_summary_options(summarize_cmd, cfg);

    try {
        auto args = merge_config(raw_args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (fit->parsed()) return cmd_fit(cfg, out, err);
        if (simulate->parsed()) return cmd_simulate(cfg, sim, out, err);
        if (compare->parsed()) return cmd_compare(cfg, sim, out, err);
        if (summarize_cmd->parsed()) return cmd_summarize(cfg, samples_path, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace hbnum
