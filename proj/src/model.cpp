#include "hbnum/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace hbnum {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
const double kLogSqrt2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

double log_gamma_density(double x, double shape, double rate) {
    return shape * std::log(rate) - std::lgamma(shape) + (shape - 1.0) * std::log(x) - rate * x;
}

}  // namespace

void ModelSpec::validate() const {
    if (!(intercept_bounds.lo < intercept_bounds.hi)) {
        throw std::invalid_argument("model spec: intercept bounds need lo < hi");
    }
    if (!(slope_mean_bounds.lo < slope_mean_bounds.hi)) {
        throw std::invalid_argument("model spec: slope-mean bounds need lo < hi");
    }
    if (!(gamma_shape > 0.0) || !(gamma_rate > 0.0)) {
        throw std::invalid_argument("model spec: gamma shape and rate must be positive");
    }
}

void ModelSpec::check_data(const RegressionData& data) const {
    if (data.cells.size() != data.subjects.size()) {
        throw std::invalid_argument("regression data: subject list and cell groups disagree");
    }
    for (std::size_t i = 0; i < data.cells.size(); ++i) {
        const auto& c = data.cells[i];
        if (c.x.size() != c.y.size()) throw std::invalid_argument("regression data: ragged cells");
        if (predictor_values.empty()) continue;
        for (double x : c.x) {
            if (std::find(predictor_values.begin(), predictor_values.end(), x) == predictor_values.end()) {
                throw std::invalid_argument("subject '" + data.subjects[i] +
                                            "' has a predictor value outside the model's levels");
            }
        }
    }
}

double ModelSpec::slope_mean_prior_density(double value) const {
    return slope_mean_bounds.contains(value) ? 1.0 / slope_mean_bounds.width() : 0.0;
}

ModelSpec snarc_spec_default() {
    ModelSpec spec;
    spec.name = "snarc";
    spec.intercept_bounds = {-200.0, 200.0};
    spec.slope_mean_bounds = {-20.0, 20.0};
    spec.gamma_shape = 0.01;
    spec.gamma_rate = 0.01;
    return spec;
}

ModelSpec nde_spec_default() {
    ModelSpec spec;
    spec.name = "nde";
    spec.intercept_bounds = {0.0, 2000.0};
    spec.slope_mean_bounds = {-100.0, 100.0};
    spec.gamma_shape = 0.01;
    spec.gamma_rate = 0.01;
    spec.predictor_values = {1.0, 2.0, 3.0, 4.0};
    return spec;
}

ModelSpec default_spec(TaskKind kind) {
    return kind == TaskKind::Snarc ? snarc_spec_default() : nde_spec_default();
}

double log_likelihood(const RegressionData& data, const ParameterState& state) {
    if (!(state.sigma2 > 0.0)) return kNegInf;
    const double tau = state.tau();
    const double per_cell = -kLogSqrt2Pi + 0.5 * std::log(tau);
    double ll = 0.0;
    for (std::size_t i = 0; i < data.cells.size(); ++i) {
        const auto& c = data.cells[i];
        for (std::size_t k = 0; k < c.size(); ++k) {
            const double r = c.y[k] - state.cell_mean(i, c.x[k]);
            ll += per_cell - 0.5 * tau * r * r;
        }
    }
    return ll;
}

double log_joint(const ModelSpec& spec, const RegressionData& data, const ParameterState& state) {
    const std::size_t n = data.subject_count();
    if (state.alpha.size() != n || state.beta.size() != n || data.cells.size() != n) {
        throw std::invalid_argument("log_joint: parameter state does not match the data's subject count");
    }
    if (!(state.sigma2 > 0.0) || !(state.sigma2_b > 0.0)) return kNegInf;
    if (!spec.slope_mean_bounds.contains(state.b)) return kNegInf;
    for (double a : state.alpha) {
        if (!spec.intercept_bounds.contains(a)) return kNegInf;
    }

    double lp = log_likelihood(data, state);
    lp -= static_cast<double>(n) * std::log(spec.intercept_bounds.width());
    const double tau_b = state.tau_b();
    for (double beta : state.beta) {
        const double d = beta - state.b;
        lp += -kLogSqrt2Pi + 0.5 * std::log(tau_b) - 0.5 * tau_b * d * d;
    }
    lp -= std::log(spec.slope_mean_bounds.width());
    lp += log_gamma_density(tau_b, spec.gamma_shape, spec.gamma_rate);
    lp += log_gamma_density(state.tau(), spec.gamma_shape, spec.gamma_rate);
    return lp;
}

}  // namespace hbnum
