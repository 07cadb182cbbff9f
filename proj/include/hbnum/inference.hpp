#ifndef HBNUM_INFERENCE_HPP
#define HBNUM_INFERENCE_HPP

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hbnum/sampler.hpp"

namespace hbnum {

struct Hpdi {
    double lower = 0.0;
    double upper = 0.0;
    double mass = 0.95;

    double width() const { return upper - lower; }
    bool contains(double v) const { return v >= lower && v <= upper; }
};

/// Narrowest window of m = ceil(mass * n) sorted draws; ties go to the leftmost window.
Hpdi hpdi(std::span<const double> samples, double mass);

class DegenerateSampleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double sample_mean(std::span<const double> samples);
/// Standard deviation with the n - 1 divisor.
double sample_sd(std::span<const double> samples);
/// Linear-interpolation quantile of sorted data (R type 7).
double quantile_sorted(std::span<const double> sorted, double p);

/// Silverman's rule: 0.9 * min(sd, iqr / 1.34) * n^(-1/5). Falls back to sd
/// when the IQR is zero.
double silverman_bandwidth(double sd, double iqr, std::size_t n);

/// Gaussian kernel density estimate with Silverman bandwidth.
class KernelDensity {
public:
    /// Throws DegenerateSampleError when n < 2 or the samples have no spread.
    explicit KernelDensity(std::span<const double> samples);

    double bandwidth() const { return bandwidth_; }
    double min() const { return sorted_.front(); }
    double max() const { return sorted_.back(); }
    double operator()(double x) const;

private:
    std::vector<double> sorted_;
    double bandwidth_ = 0.0;
};

double kde_density(std::span<const double> samples, double point);

struct DensityCurve {
    std::vector<double> x;
    std::vector<double> density;
};

/// KDE evaluated on `points` evenly spaced values over [min - 3h, max + 3h].
DensityCurve density_curve(const KernelDensity& kde, std::size_t points = 512);

/// Argmax of the KDE over the 512-point grid of density_curve.
double posterior_mode(std::span<const double> samples);

/// Fraction of samples strictly below `threshold`.
double tail_prob(std::span<const double> samples, double threshold);

enum class DensityMethod { NormalApprox, Kde };

std::string to_string(DensityMethod method);
DensityMethod density_method_from_string(const std::string& name);

struct BayesFactorResult {
    double bf10 = 1.0;
    double prior_density_at_null = 0.0;
    double posterior_density_at_null = 0.0;
    DensityMethod method = DensityMethod::NormalApprox;
    /// Set when the posterior density at the null underflowed to zero; bf10 is then +inf.
    bool posterior_underflow = false;
};

/// Savage-Dickey density ratio bf10 = prior(null) / posterior(null).
BayesFactorResult savage_dickey_bf(std::span<const double> samples, double prior_density_at_null,
                                   DensityMethod method = DensityMethod::NormalApprox,
                                   double null_value = 0.0);

struct ParameterSummary {
    std::string parameter;
    double mode = 0.0;
    double mean = 0.0;
    double sd = 0.0;
    Hpdi hpdi;
    double p_below_zero = 0.0;
};

/// Per-parameter summaries from pooled draws. A parameter with no spread
/// (held fixed) reports its constant value as the mode.
std::vector<ParameterSummary> summarize(const Posterior& posterior, double mass = 0.95);
ParameterSummary summarize_samples(const std::string& name, std::span<const double> samples, double mass = 0.95);

}  // namespace hbnum

#endif  // HBNUM_INFERENCE_HPP
