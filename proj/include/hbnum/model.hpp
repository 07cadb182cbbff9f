#ifndef HBNUM_MODEL_HPP
#define HBNUM_MODEL_HPP

#include <string>
#include <vector>

#include "hbnum/dataset.hpp"

namespace hbnum {

/// Closed interval [lo, hi] used as the support of a uniform prior.
struct Bounds {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double v) const { return v >= lo && v <= hi; }
    double width() const { return hi - lo; }
};

/// Hierarchical linear regression y_ij = alpha_i + beta_i * x_ij + e_ij with
///   alpha_i ~ Uniform(intercept_bounds), beta_i ~ Normal(b, sigma2_b),
///   b ~ Uniform(slope_mean_bounds), 1/sigma2_b and 1/sigma2 ~ Gamma(shape, rate).
struct ModelSpec {
    std::string name;
    Bounds intercept_bounds;
    Bounds slope_mean_bounds;
    double gamma_shape = 0.01;
    double gamma_rate = 0.01;
    /// Admissible predictor values; empty means unrestricted.
    std::vector<double> predictor_values;

    /// Throws std::invalid_argument when an invariant fails.
    void validate() const;
    /// Throws std::invalid_argument when a cell's predictor is not admissible.
    void check_data(const RegressionData& data) const;
    /// Density of the uniform slope-mean prior at `value` (0 outside the support).
    double slope_mean_prior_density(double value) const;
};

/// One point in parameter space. Variances are stored; precisions are derived.
struct ParameterState {
    std::vector<double> alpha;
    std::vector<double> beta;
    double b = 0.0;
    double sigma2_b = 1.0;
    double sigma2 = 1.0;

    double tau() const { return 1.0 / sigma2; }
    double tau_b() const { return 1.0 / sigma2_b; }
    double cell_mean(std::size_t subject, double x) const { return alpha[subject] + beta[subject] * x; }
};

ModelSpec snarc_spec_default();
ModelSpec nde_spec_default();
ModelSpec default_spec(TaskKind kind);

/// Sum over cells of log Normal(y | alpha_i + beta_i x, sigma2).
double log_likelihood(const RegressionData& data, const ParameterState& state);

/// Log of the joint density of data and parameters, taken with respect to
/// Lebesgue measure on (alpha, beta, b, 1/sigma2_b, 1/sigma2). Returns -inf
/// outside the prior support. Throws std::invalid_argument on dimension mismatch.
double log_joint(const ModelSpec& spec, const RegressionData& data, const ParameterState& state);

}  // namespace hbnum

#endif  // HBNUM_MODEL_HPP
