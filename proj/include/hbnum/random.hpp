#ifndef HBNUM_RANDOM_HPP
#define HBNUM_RANDOM_HPP

#include <cstdint>
#include <random>
#include <stdexcept>

namespace hbnum {

struct NormalParams {
    double mean = 0.0;
    double variance = 1.0;
};

struct TruncatedNormalParams {
    double mean = 0.0;
    double variance = 1.0;
    double lower = -1.0;
    double upper = 1.0;
};

/// Gamma(shape, rate): density proportional to x^(shape-1) exp(-rate x).
struct GammaParams {
    double shape = 1.0;
    double rate = 1.0;
};

class SamplingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// SplitMix64 finalizer; used to decorrelate seeds.
std::uint64_t mix64(std::uint64_t x);

/// Seeded generator. Deviates are derived from raw 64-bit output with our own
/// transforms so a given seed yields the same stream on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

    /// Independent stream for one chain of a multi-chain run.
    static Rng for_stream(std::uint64_t seed, std::uint64_t stream);

    /// Uniform on the open interval (0, 1).
    double uniform() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double standard_normal();
    double normal(double mean, double sd) { return mean + sd * standard_normal(); }

private:
    std::mt19937_64 engine_;
};

double draw_normal(const NormalParams& params, Rng& rng);

/// Inverse-CDF map from u in (0, 1) to the truncated normal; used for
/// intervals within 5 sd of the mean.
double truncated_normal_quantile(const TruncatedNormalParams& params, double u);

/// Inverse CDF inside 5 sd; exponential/uniform rejection (Robert 1995) when the
/// whole interval lies further out in one tail. Throws SamplingError when the
/// interval carries no representable probability mass.
double draw_truncated_normal(const TruncatedNormalParams& params, Rng& rng);

/// Marsaglia-Tsang squeeze method, with the u^(1/shape) boost for shape < 1.
/// The result is floored at the smallest normal double so it stays positive.
double draw_gamma(const GammaParams& params, Rng& rng);

}  // namespace hbnum

#endif  // HBNUM_RANDOM_HPP
