#include "hbnum/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hbnum/special_functions.hpp"

namespace hbnum {

namespace {

constexpr double kTailThreshold = 5.0;

void validate(const TruncatedNormalParams& p) {
    if (!(p.variance > 0.0) || !std::isfinite(p.variance)) {
        throw std::invalid_argument("truncated normal: variance must be positive and finite");
    }
    if (!(p.lower < p.upper)) throw std::invalid_argument("truncated normal: need lower < upper");
}

/// Standard normal restricted to [a, b] with a >= kTailThreshold.
double upper_tail_draw(double a, double b, Rng& rng) {
    if (b - a < 1.0 / a) {
        // Narrow interval: uniform proposal, acceptance >= exp(-1.5).
        for (int attempt = 0; attempt < 100000; ++attempt) {
            const double z = rng.uniform(a, b);
            if (rng.uniform() <= std::exp(-0.5 * (z * z - a * a))) return z;
        }
    } else {
        const double lambda = 0.5 * (a + std::sqrt(a * a + 4.0));
        for (int attempt = 0; attempt < 100000; ++attempt) {
            const double z = a - std::log(rng.uniform()) / lambda;
            if (z > b) continue;
            const double d = z - lambda;
            if (rng.uniform() <= std::exp(-0.5 * d * d)) return z;
        }
    }
    throw SamplingError("truncated normal: tail rejection sampler failed to accept");
}

/// Inverse CDF on [a, b] (standardized) with a <= 0, where Phi(a) is accurate.
double central_quantile(double a, double b, double u) {
    const double pa = normal_cdf(a);
    const double pb = normal_cdf(b);
    const double mass = pb - pa;
    if (!(mass > 0.0)) {
        throw SamplingError("truncated normal: interval [" + std::to_string(a) + ", " +
                            std::to_string(b) + "] sd has zero probability mass");
    }
    return std::clamp(normal_quantile(pa + u * mass), a, b);
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rng Rng::for_stream(std::uint64_t seed, std::uint64_t stream) {
    return Rng(mix64(seed) ^ mix64(mix64(stream) + 0x632be59bd9b4e019ULL));
}

double Rng::standard_normal() { return normal_quantile(uniform()); }

double draw_normal(const NormalParams& params, Rng& rng) {
    if (!(params.variance > 0.0)) throw std::invalid_argument("normal: variance must be positive");
    return rng.normal(params.mean, std::sqrt(params.variance));
}

double truncated_normal_quantile(const TruncatedNormalParams& params, double u) {
    validate(params);
    const double sd = std::sqrt(params.variance);
    const double a = (params.lower - params.mean) / sd;
    const double b = (params.upper - params.mean) / sd;
    // Mirror intervals centred in the upper half so the CDF is evaluated in its
    // accurate lower tail.
    if (a > -b) return params.mean - sd * central_quantile(-b, -a, 1.0 - u);
    return params.mean + sd * central_quantile(a, b, u);
}

double draw_truncated_normal(const TruncatedNormalParams& params, Rng& rng) {
    validate(params);
    const double sd = std::sqrt(params.variance);
    const double a = (params.lower - params.mean) / sd;
    const double b = (params.upper - params.mean) / sd;
    if (!(a < b)) throw SamplingError("truncated normal: interval collapsed after standardization");

    double z;
    if (a >= kTailThreshold) {
        z = upper_tail_draw(a, b, rng);
    } else if (b <= -kTailThreshold) {
        z = -upper_tail_draw(-b, -a, rng);
    } else {
        const double u = rng.uniform();
        z = a > -b ? -central_quantile(-b, -a, 1.0 - u) : central_quantile(a, b, u);
    }
    return std::clamp(params.mean + sd * z, params.lower, params.upper);
}

double draw_gamma(const GammaParams& params, Rng& rng) {
    if (!(params.shape > 0.0) || !(params.rate > 0.0)) {
        throw std::invalid_argument("gamma: shape and rate must be positive");
    }
    const double shape = params.shape < 1.0 ? params.shape + 1.0 : params.shape;
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    double g;
    while (true) {
        const double x = rng.standard_normal();
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        const double u = rng.uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2 || std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
            g = d * v;
            break;
        }
    }
    double log_value = std::log(g);
    if (params.shape < 1.0) log_value += std::log(rng.uniform()) / params.shape;
    const double value = std::exp(log_value - std::log(params.rate));
    return std::max(value, std::numeric_limits<double>::min());
}

}  // namespace hbnum
