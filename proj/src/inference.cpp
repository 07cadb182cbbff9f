#include "hbnum/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hbnum/special_functions.hpp"

namespace hbnum {

namespace {

// Kernel contributions beyond this many bandwidths are below 1e-16 of the peak.
constexpr double kKernelCutoff = 8.6;

std::vector<double> sorted_copy(std::span<const double> samples) {
    std::vector<double> v(samples.begin(), samples.end());
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

Hpdi hpdi(std::span<const double> samples, double mass) {
    const std::size_t n = samples.size();
    if (n < 2) throw std::invalid_argument("hpdi: need at least two samples");
    if (!(mass > 0.0 && mass < 1.0)) throw std::invalid_argument("hpdi: mass must lie in (0, 1)");

    const auto s = sorted_copy(samples);
    // The guard keeps products such as 0.95 * 100 from rounding up past an integer.
    const double target = mass * static_cast<double>(n);
    auto m = static_cast<std::size_t>(std::ceil(target - 1e-9 * target));
    m = std::clamp<std::size_t>(m, 1, n);

    std::size_t best = 0;
    double best_width = s[m - 1] - s[0];
    for (std::size_t k = 1; k + m <= n; ++k) {
        const double width = s[k + m - 1] - s[k];
        if (width < best_width) {
            best_width = width;
            best = k;
        }
    }
    return {s[best], s[best + m - 1], mass};
}

double sample_mean(std::span<const double> samples) {
    if (samples.empty()) throw std::invalid_argument("mean of an empty sample");
    double sum = 0.0;
    for (double v : samples) sum += v;
    return sum / static_cast<double>(samples.size());
}

double sample_sd(std::span<const double> samples) {
    if (samples.size() < 2) throw std::invalid_argument("sd needs at least two samples");
    const double mean = sample_mean(samples);
    double ss = 0.0;
    for (double v : samples) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(samples.size() - 1));
}

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw std::invalid_argument("quantile of an empty sample");
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double silverman_bandwidth(double sd, double iqr, std::size_t n) {
    const double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
    return 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
}

KernelDensity::KernelDensity(std::span<const double> samples) : sorted_(sorted_copy(samples)) {
    if (sorted_.size() < 2) throw DegenerateSampleError("density estimate needs at least two samples");
    const double sd = sample_sd(sorted_);
    if (!(sd > 0.0)) throw DegenerateSampleError("density estimate of samples with zero spread");
    const double iqr = quantile_sorted(sorted_, 0.75) - quantile_sorted(sorted_, 0.25);
    bandwidth_ = silverman_bandwidth(sd, iqr, sorted_.size());
}

double KernelDensity::operator()(double x) const {
    const double reach = kKernelCutoff * bandwidth_;
    const auto first = std::lower_bound(sorted_.begin(), sorted_.end(), x - reach);
    const auto last = std::upper_bound(first, sorted_.end(), x + reach);
    double sum = 0.0;
    for (auto it = first; it != last; ++it) {
        const double z = (x - *it) / bandwidth_;
        sum += std::exp(-0.5 * z * z);
    }
    return sum / (static_cast<double>(sorted_.size()) * bandwidth_ * std::sqrt(2.0 * std::numbers::pi));
}

double kde_density(std::span<const double> samples, double point) { return KernelDensity(samples)(point); }

DensityCurve density_curve(const KernelDensity& kde, std::size_t points) {
    if (points < 2) throw std::invalid_argument("density_curve: need at least two grid points");
    const double lo = kde.min() - 3.0 * kde.bandwidth();
    const double hi = kde.max() + 3.0 * kde.bandwidth();
    const double step = (hi - lo) / static_cast<double>(points - 1);
    DensityCurve curve;
    curve.x.resize(points);
    curve.density.resize(points);
    for (std::size_t k = 0; k < points; ++k) {
        curve.x[k] = lo + step * static_cast<double>(k);
        curve.density[k] = kde(curve.x[k]);
    }
    return curve;
}

double posterior_mode(std::span<const double> samples) {
    const auto curve = density_curve(KernelDensity(samples), 512);
    const auto it = std::max_element(curve.density.begin(), curve.density.end());
    return curve.x[static_cast<std::size_t>(it - curve.density.begin())];
}

double tail_prob(std::span<const double> samples, double threshold) {
    if (samples.empty()) throw std::invalid_argument("tail_prob: empty sample");
    const auto below = std::count_if(samples.begin(), samples.end(), [threshold](double v) { return v < threshold; });
    return static_cast<double>(below) / static_cast<double>(samples.size());
}

std::string to_string(DensityMethod method) {
    return method == DensityMethod::NormalApprox ? "normal" : "kde";
}

DensityMethod density_method_from_string(const std::string& name) {
    if (name == "normal") return DensityMethod::NormalApprox;
    if (name == "kde") return DensityMethod::Kde;
    throw std::invalid_argument("unknown density method '" + name + "' (expected normal or kde)");
}

BayesFactorResult savage_dickey_bf(std::span<const double> samples, double prior_density_at_null,
                                   DensityMethod method, double null_value) {
    if (samples.size() < 2) throw std::invalid_argument("savage_dickey_bf: need at least two samples");
    if (!(prior_density_at_null > 0.0)) {
        throw std::invalid_argument("savage_dickey_bf: prior density at the null must be positive");
    }
    BayesFactorResult r;
    r.method = method;
    r.prior_density_at_null = prior_density_at_null;
    if (method == DensityMethod::NormalApprox) {
        const double sd = sample_sd(samples);
        if (!(sd > 0.0)) throw DegenerateSampleError("savage_dickey_bf: samples have zero spread");
        r.posterior_density_at_null = normal_pdf((null_value - sample_mean(samples)) / sd) / sd;
    } else {
        r.posterior_density_at_null = kde_density(samples, null_value);
    }
    if (r.posterior_density_at_null > 0.0) {
        r.bf10 = prior_density_at_null / r.posterior_density_at_null;
    } else {
        r.posterior_underflow = true;
        r.bf10 = std::numeric_limits<double>::infinity();
    }
    return r;
}

ParameterSummary summarize_samples(const std::string& name, std::span<const double> samples, double mass) {
    ParameterSummary s;
    s.parameter = name;
    s.mean = sample_mean(samples);
    s.sd = sample_sd(samples);
    s.hpdi = hpdi(samples, mass);
    s.p_below_zero = tail_prob(samples, 0.0);
    s.mode = s.sd > 0.0 ? posterior_mode(samples) : s.mean;
    return s;
}

std::vector<ParameterSummary> summarize(const Posterior& posterior, double mass) {
    const auto layout = posterior.layout();
    std::vector<ParameterSummary> out;
    out.reserve(layout.size());
    for (std::size_t p = 0; p < layout.size(); ++p) {
        out.push_back(summarize_samples(layout.name(p), posterior.pooled(p), mass));
    }
    return out;
}

}  // namespace hbnum
