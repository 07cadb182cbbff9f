#include "hbnum/simulate.hpp"

#include <cstdio>
#include <ostream>

#include "hbnum/random.hpp"
#include "text_util.hpp"

namespace hbnum {

void SimConfig::validate() const {
    if (n_subjects < 1) throw std::invalid_argument("sim config: need at least one subject");
    if (predictor_values.empty()) throw std::invalid_argument("sim config: no predictor values");
    if (!(slope_sd > 0.0) || !(noise_sd > 0.0)) throw std::invalid_argument("sim config: sds must be positive");
    if (!(intercept_range.lo < intercept_range.hi)) {
        throw std::invalid_argument("sim config: intercept range needs lo < hi");
    }
}

SimulatedData generate_snarc_sim(const SimConfig& config) {
    config.validate();
    Rng rng(config.seed);
    SimulatedData out;
    auto& truth = out.truth;
    for (std::size_t i = 0; i < config.n_subjects; ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "sim%03zu", i + 1);
        out.dataset.subjects.emplace_back(name);
        truth.intercepts.push_back(rng.uniform(config.intercept_range.lo, config.intercept_range.hi));
        truth.slopes.push_back(rng.normal(config.slope_mean, config.slope_sd));
    }
    for (std::size_t i = 0; i < config.n_subjects; ++i) {
        for (int j : config.predictor_values) {
            const double drt = truth.intercepts[i] + truth.slopes[i] * j + rng.normal(0.0, config.noise_sd);
            out.dataset.cells.push_back({out.dataset.subjects[i], j, drt});
        }
    }
    return out;
}

ComparisonReport compare_methods(const RegressionData& data, const ModelSpec& spec, const SamplerConfig& sampler,
                                 double ci_level, DensityMethod method) {
    ComparisonReport report;
    report.classical_slopes = rca_slopes(data);
    report.t_result = one_sample_t(report.classical_slopes, 0.0);
    report.classical_ci = mean_ci(report.classical_slopes, ci_level);

    const Posterior posterior = run_chains(spec, data, sampler);
    const auto layout = posterior.layout();
    report.b_samples = posterior.pooled(layout.b());
    const auto& b = report.b_samples;
    report.bayes_hpdi = hpdi(b, ci_level);
    report.bayes_mode = posterior_mode(b);
    report.bayes_mean = sample_mean(b);
    report.bayes_factor = savage_dickey_bf(b, spec.slope_mean_prior_density(0.0), method);
    for (std::size_t i = 0; i < layout.subjects(); ++i) {
        report.posterior_mean_slopes.push_back(sample_mean(posterior.pooled(layout.beta(i))));
    }
    return report;
}

std::vector<SweepRow> run_sweep(const SimConfig& base, std::size_t replications, const ModelSpec& spec,
                                const SamplerConfig& sampler, double ci_level) {
    std::vector<SweepRow> rows;
    rows.reserve(replications);
    for (std::size_t r = 0; r < replications; ++r) {
        SimConfig sim = base;
        sim.seed = base.seed + r;
        SamplerConfig sc = sampler;
        sc.seed = sim.seed;
        const auto data = to_regression_data(generate_snarc_sim(sim).dataset);
        const auto report = compare_methods(data, spec, sc, ci_level);

        SweepRow row;
        row.seed = sim.seed;
        row.hpdi_lo = report.bayes_hpdi.lower;
        row.hpdi_hi = report.bayes_hpdi.upper;
        row.ci_lo = report.classical_ci.lower;
        row.ci_hi = report.classical_ci.upper;
        row.t = report.t_result.t;
        row.p = report.t_result.p;
        row.bf10 = report.bayes_factor.bf10;
        row.covered_bayes = report.bayes_hpdi.contains(base.slope_mean);
        row.covered_classical = report.classical_ci.contains(base.slope_mean);
        rows.push_back(row);
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    using detail::format_double;
    out << "seed,hpdi_lo,hpdi_hi,ci_lo,ci_hi,t,p,bf10,covered_bayes,covered_classical\n";
    for (const auto& r : rows) {
        out << r.seed << ',' << format_double(r.hpdi_lo) << ',' << format_double(r.hpdi_hi) << ','
            << format_double(r.ci_lo) << ',' << format_double(r.ci_hi) << ',' << format_double(r.t) << ','
            << format_double(r.p) << ',' << format_double(r.bf10) << ',' << (r.covered_bayes ? 1 : 0) << ','
            << (r.covered_classical ? 1 : 0) << '\n';
    }
}

}  // namespace hbnum
