#ifndef HBNUM_SAMPLER_HPP
#define HBNUM_SAMPLER_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hbnum/dataset.hpp"
#include "hbnum/model.hpp"
#include "hbnum/random.hpp"

namespace hbnum {

struct SamplerConfig {
    std::size_t n_chains = 3;
    std::size_t n_iterations = 100000;
    std::size_t n_burnin = 5000;
    std::size_t thin = 10;
    std::uint64_t seed = 42;
    /// Upper bound on concurrently running chains; 0 means hardware concurrency.
    std::size_t max_threads = 0;

    void validate() const;
    /// floor((n_iterations - n_burnin) / thin)
    std::size_t retained_per_chain() const;
};

/// Parameters held at a given value instead of being sampled. Used for
/// reduced models in validation (e.g. known variances).
struct FixedParameters {
    std::optional<std::vector<double>> alpha;
    std::optional<std::vector<double>> beta;
    std::optional<double> b;
    std::optional<double> sigma2_b;
    std::optional<double> sigma2;
};

/// Column layout of the sampled parameters: alpha[0..N), beta[0..N), b, sigma2_b, sigma2.
class ParameterLayout {
public:
    explicit ParameterLayout(std::size_t n_subjects) : n_(n_subjects) {}

    std::size_t subjects() const { return n_; }
    std::size_t size() const { return 2 * n_ + 3; }
    std::size_t alpha(std::size_t i) const { return i; }
    std::size_t beta(std::size_t i) const { return n_ + i; }
    std::size_t b() const { return 2 * n_; }
    std::size_t sigma2_b() const { return 2 * n_ + 1; }
    std::size_t sigma2() const { return 2 * n_ + 2; }

    std::string name(std::size_t column) const;
    /// Column index for a name such as "beta[3]" or "b"; throws on unknown names.
    std::size_t index_of(const std::string& name) const;
    std::vector<std::string> names() const;

private:
    std::size_t n_;
};

struct ChainSamples {
    std::size_t chain_index = 0;
    std::vector<std::uint64_t> iterations;     // 1-based sweep numbers of retained draws
    std::vector<std::vector<double>> columns;  // one sequence per parameter, ParameterLayout order

    std::size_t draws() const { return iterations.size(); }
    std::span<const double> column(std::size_t index) const { return columns.at(index); }
};

struct Posterior {
    ModelSpec spec;
    std::vector<std::string> subjects;
    std::uint64_t data_fingerprint = 0;
    std::vector<ChainSamples> chains;

    ParameterLayout layout() const { return ParameterLayout(subjects.size()); }
    std::size_t draws_per_chain() const { return chains.empty() ? 0 : chains.front().draws(); }
    std::size_t total_draws() const;
    /// All chains' draws of one parameter concatenated in chain order.
    std::vector<double> pooled(std::size_t column) const;
    std::vector<double> pooled(const std::string& name) const;
    std::vector<std::span<const double>> per_chain(std::size_t column) const;
};

/// FNV-1a over subjects and cell values.
std::uint64_t fingerprint(const RegressionData& data);

// Full conditionals. tau = 1/sigma2 and tau_b = 1/sigma2_b throughout.

/// alpha_i | rest: Normal(mean(y - beta_i x), 1/(n_i tau)) truncated to the intercept prior.
TruncatedNormalParams alpha_conditional(const SubjectCells& cells, double beta_i, double tau,
                                        const Bounds& bounds);
/// beta_i | rest: precision tau_b + tau sum x^2, mean (tau_b b + tau sum x (y - alpha_i)) / precision.
NormalParams beta_conditional(const SubjectCells& cells, double alpha_i, double tau, double b,
                              double tau_b);
/// b | rest: Normal(mean(beta), 1/(N tau_b)) truncated to the slope-mean prior.
TruncatedNormalParams b_conditional(std::span<const double> betas, double tau_b, const Bounds& bounds);
GammaParams slope_precision_conditional(std::span<const double> betas, double b, double gamma_shape,
                                        double gamma_rate);
GammaParams residual_precision_conditional(const RegressionData& data, const ParameterState& state,
                                           double gamma_shape, double gamma_rate);

/// Deterministic starting point: alpha_i = mean(y) clamped, beta_i = per-subject
/// least squares (0 when degenerate), b = mean(beta) clamped, variances by
/// method of moments floored at 1e-6.
ParameterState initial_state(const ModelSpec& spec, const RegressionData& data);

/// One Gibbs chain. Sweep order per iteration: every alpha_i, every beta_i, b,
/// tau_b, tau. Iteration t (1-based) is kept when t > n_burnin and
/// (t - n_burnin) % thin == 0.
ChainSamples run_chain(const ModelSpec& spec, const RegressionData& data, const SamplerConfig& config,
                       std::size_t chain_index, const FixedParameters& fixed = {});

/// Runs config.n_chains independent chains, possibly concurrently. The result
/// does not depend on scheduling.
Posterior run_chains(const ModelSpec& spec, const RegressionData& data, const SamplerConfig& config,
                     const FixedParameters& fixed = {});

/// Long-format export: chain,iteration,parameter,value.
void write_samples_csv(std::ostream& out, const Posterior& posterior);
/// Inverse of write_samples_csv. The spec and fingerprint are not stored in the
/// file; the caller supplies the spec.
Posterior read_samples_csv(std::istream& in, const ModelSpec& spec);

}  // namespace hbnum

#endif  // HBNUM_SAMPLER_HPP
