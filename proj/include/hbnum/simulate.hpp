#ifndef HBNUM_SIMULATE_HPP
#define HBNUM_SIMULATE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "hbnum/dataset.hpp"
#include "hbnum/inference.hpp"
#include "hbnum/model.hpp"
#include "hbnum/rca.hpp"
#include "hbnum/sampler.hpp"

namespace hbnum {

/// Synthetic SNARC design: a_i ~ Uniform(intercept_range),
/// b_i ~ Normal(slope_mean, slope_sd^2), dRT_ij = a_i + b_i j + Normal(0, noise_sd^2).
struct SimConfig {
    std::size_t n_subjects = 15;
    std::vector<int> predictor_values{1, 2, 8, 9};
    double slope_mean = -10.0;
    double slope_sd = 1.0;
    Bounds intercept_range{-200.0, 200.0};
    double noise_sd = 100.0;
    std::uint64_t seed = 1;

    void validate() const;
};

struct TrueParameters {
    std::vector<double> intercepts;
    std::vector<double> slopes;
};

struct SimulatedData {
    SnarcDataset dataset;
    TrueParameters truth;
};

SimulatedData generate_snarc_sim(const SimConfig& config);

struct ComparisonReport {
    // Bayesian side
    Hpdi bayes_hpdi;
    double bayes_mode = 0.0;
    double bayes_mean = 0.0;
    BayesFactorResult bayes_factor;
    std::vector<double> posterior_mean_slopes;
    std::vector<double> b_samples;  // pooled retained draws of b
    // Classical side
    std::vector<double> classical_slopes;
    ConfidenceInterval classical_ci;
    TTestResult t_result;
    std::optional<SimConfig> truth;
};

/// Fits both pipelines to the same data. The HPDI mass equals `ci_level`.
ComparisonReport compare_methods(const RegressionData& data, const ModelSpec& spec, const SamplerConfig& sampler,
                                 double ci_level = 0.95, DensityMethod method = DensityMethod::NormalApprox);

struct SweepRow {
    std::uint64_t seed = 0;
    double hpdi_lo = 0.0;
    double hpdi_hi = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double t = 0.0;
    double p = 1.0;
    double bf10 = 1.0;
    bool covered_bayes = false;
    bool covered_classical = false;
};

/// Replication r simulates with seed base.seed + r and samples with the same seed.
std::vector<SweepRow> run_sweep(const SimConfig& base, std::size_t replications, const ModelSpec& spec,
                                const SamplerConfig& sampler, double ci_level = 0.95);

/// seed,hpdi_lo,hpdi_hi,ci_lo,ci_hi,t,p,bf10,covered_bayes,covered_classical
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace hbnum

#endif  // HBNUM_SIMULATE_HPP
