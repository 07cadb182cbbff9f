#include "hbnum/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <exception>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <thread>

#include "text_util.hpp"

namespace hbnum {

namespace {

constexpr double kVarianceFloor = 1e-6;

double sum_sq_dev(std::span<const double> values, double center) {
    double ss = 0.0;
    for (double v : values) ss += (v - center) * (v - center);
    return ss;
}

/// Parses "alpha[12]" style names; returns the index or nullopt.
std::optional<std::size_t> indexed(const std::string& name, const char* prefix) {
    const std::size_t len = std::strlen(prefix);
    if (name.size() < len + 3 || name.compare(0, len, prefix) != 0 || name[len] != '[' ||
        name.back() != ']') {
        return std::nullopt;
    }
    const auto idx = detail::parse_integer(std::string_view(name).substr(len + 1, name.size() - len - 2));
    if (!idx || *idx < 0) return std::nullopt;
    return static_cast<std::size_t>(*idx);
}

}  // namespace

void SamplerConfig::validate() const {
    if (n_chains < 1) throw std::invalid_argument("sampler config: need at least one chain");
    if (thin < 1) throw std::invalid_argument("sampler config: thin must be >= 1");
    if (!(n_burnin < n_iterations)) {
        throw std::invalid_argument("sampler config: burn-in must be shorter than the chain");
    }
}

std::size_t SamplerConfig::retained_per_chain() const { return (n_iterations - n_burnin) / thin; }

std::string ParameterLayout::name(std::size_t column) const {
    if (column < n_) return "alpha[" + std::to_string(column) + "]";
    if (column < 2 * n_) return "beta[" + std::to_string(column - n_) + "]";
    if (column == b()) return "b";
    if (column == sigma2_b()) return "sigma2_b";
    if (column == sigma2()) return "sigma2";
    throw std::out_of_range("parameter column " + std::to_string(column) + " out of range");
}

std::size_t ParameterLayout::index_of(const std::string& name) const {
    if (name == "b") return b();
    if (name == "sigma2_b") return sigma2_b();
    if (name == "sigma2") return sigma2();
    if (auto i = indexed(name, "alpha"); i && *i < n_) return alpha(*i);
    if (auto i = indexed(name, "beta"); i && *i < n_) return beta(*i);
    throw std::invalid_argument("unknown parameter '" + name + "'");
}

std::vector<std::string> ParameterLayout::names() const {
    std::vector<std::string> out;
    out.reserve(size());
    for (std::size_t c = 0; c < size(); ++c) out.push_back(name(c));
    return out;
}

std::size_t Posterior::total_draws() const {
    std::size_t n = 0;
    for (const auto& c : chains) n += c.draws();
    return n;
}

std::vector<double> Posterior::pooled(std::size_t column) const {
    std::vector<double> out;
    out.reserve(total_draws());
    for (const auto& c : chains) {
        const auto col = c.column(column);
        out.insert(out.end(), col.begin(), col.end());
    }
    return out;
}

std::vector<double> Posterior::pooled(const std::string& name) const {
    return pooled(layout().index_of(name));
}

std::vector<std::span<const double>> Posterior::per_chain(std::size_t column) const {
    std::vector<std::span<const double>> out;
    for (const auto& c : chains) out.push_back(c.column(column));
    return out;
}

std::uint64_t fingerprint(const RegressionData& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](const void* p, std::size_t n) {
        const auto* bytes = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= bytes[i];
            h *= 0x100000001b3ULL;
        }
    };
    for (std::size_t s = 0; s < data.subjects.size(); ++s) {
        feed(data.subjects[s].data(), data.subjects[s].size());
        feed("\0", 1);
        for (std::size_t k = 0; k < data.cells[s].size(); ++k) {
            feed(&data.cells[s].x[k], sizeof(double));
            feed(&data.cells[s].y[k], sizeof(double));
        }
    }
    return h;
}

TruncatedNormalParams alpha_conditional(const SubjectCells& cells, double beta_i, double tau,
                                        const Bounds& bounds) {
    const std::size_t n = cells.size();
    if (n == 0) throw std::invalid_argument("alpha_conditional: subject has no cells");
    if (!(tau > 0.0)) throw std::invalid_argument("alpha_conditional: tau must be positive");
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) sum += cells.y[k] - beta_i * cells.x[k];
    const double nd = static_cast<double>(n);
    return {sum / nd, 1.0 / (nd * tau), bounds.lo, bounds.hi};
}

NormalParams beta_conditional(const SubjectCells& cells, double alpha_i, double tau, double b,
                              double tau_b) {
    if (cells.size() == 0) throw std::invalid_argument("beta_conditional: subject has no cells");
    if (!(tau > 0.0) || !(tau_b > 0.0)) {
        throw std::invalid_argument("beta_conditional: precisions must be positive");
    }
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        sxx += cells.x[k] * cells.x[k];
        sxy += cells.x[k] * (cells.y[k] - alpha_i);
    }
    const double precision = tau_b + tau * sxx;
    return {(tau_b * b + tau * sxy) / precision, 1.0 / precision};
}

TruncatedNormalParams b_conditional(std::span<const double> betas, double tau_b, const Bounds& bounds) {
    if (betas.empty()) throw std::invalid_argument("b_conditional: no subjects");
    if (!(tau_b > 0.0)) throw std::invalid_argument("b_conditional: tau_b must be positive");
    const double n = static_cast<double>(betas.size());
    const double mean = std::accumulate(betas.begin(), betas.end(), 0.0) / n;
    return {mean, 1.0 / (n * tau_b), bounds.lo, bounds.hi};
}

GammaParams slope_precision_conditional(std::span<const double> betas, double b, double gamma_shape,
                                        double gamma_rate) {
    if (betas.empty()) throw std::invalid_argument("slope_precision_conditional: no subjects");
    return {gamma_shape + 0.5 * static_cast<double>(betas.size()),
            gamma_rate + 0.5 * sum_sq_dev(betas, b)};
}

GammaParams residual_precision_conditional(const RegressionData& data, const ParameterState& state,
                                           double gamma_shape, double gamma_rate) {
    double ss = 0.0;
    std::size_t m = 0;
    for (std::size_t i = 0; i < data.cells.size(); ++i) {
        const auto& c = data.cells[i];
        for (std::size_t k = 0; k < c.size(); ++k) {
            const double r = c.y[k] - state.cell_mean(i, c.x[k]);
            ss += r * r;
        }
        m += c.size();
    }
    if (m == 0) throw std::invalid_argument("residual_precision_conditional: no cells");
    return {gamma_shape + 0.5 * static_cast<double>(m), gamma_rate + 0.5 * ss};
}

ParameterState initial_state(const ModelSpec& spec, const RegressionData& data) {
    const std::size_t n = data.subject_count();
    ParameterState s;
    s.alpha.resize(n);
    s.beta.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& c = data.cells[i];
        if (c.size() == 0) throw std::invalid_argument("subject '" + data.subjects[i] + "' has no cells");
        const double m = static_cast<double>(c.size());
        const double x_bar = std::accumulate(c.x.begin(), c.x.end(), 0.0) / m;
        const double y_bar = std::accumulate(c.y.begin(), c.y.end(), 0.0) / m;
        s.alpha[i] = std::clamp(y_bar, spec.intercept_bounds.lo, spec.intercept_bounds.hi);
        double sxx = 0.0;
        double sxy = 0.0;
        for (std::size_t k = 0; k < c.size(); ++k) {
            sxx += (c.x[k] - x_bar) * (c.x[k] - x_bar);
            sxy += (c.x[k] - x_bar) * (c.y[k] - y_bar);
        }
        s.beta[i] = sxx > 0.0 ? sxy / sxx : 0.0;
    }
    const double nd = static_cast<double>(n);
    const double beta_bar = std::accumulate(s.beta.begin(), s.beta.end(), 0.0) / nd;
    s.b = std::clamp(beta_bar, spec.slope_mean_bounds.lo, spec.slope_mean_bounds.hi);
    s.sigma2_b = std::max(sum_sq_dev(s.beta, beta_bar) / nd, kVarianceFloor);

    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& c = data.cells[i];
        for (std::size_t k = 0; k < c.size(); ++k) {
            const double r = c.y[k] - s.cell_mean(i, c.x[k]);
            ss += r * r;
        }
    }
    s.sigma2 = std::max(ss / static_cast<double>(data.cell_count()), kVarianceFloor);
    return s;
}

namespace {

void apply_fixed(ParameterState& s, const FixedParameters& fixed, std::size_t n) {
    if (fixed.alpha) {
        if (fixed.alpha->size() != n) throw std::invalid_argument("fixed alpha: wrong length");
        s.alpha = *fixed.alpha;
    }
    if (fixed.beta) {
        if (fixed.beta->size() != n) throw std::invalid_argument("fixed beta: wrong length");
        s.beta = *fixed.beta;
    }
    if (fixed.b) s.b = *fixed.b;
    if (fixed.sigma2_b) {
        if (!(*fixed.sigma2_b > 0.0)) throw std::invalid_argument("fixed sigma2_b must be positive");
        s.sigma2_b = *fixed.sigma2_b;
    }
    if (fixed.sigma2) {
        if (!(*fixed.sigma2 > 0.0)) throw std::invalid_argument("fixed sigma2 must be positive");
        s.sigma2 = *fixed.sigma2;
    }
}

}  // namespace

ChainSamples run_chain(const ModelSpec& spec, const RegressionData& data, const SamplerConfig& config,
                       std::size_t chain_index, const FixedParameters& fixed) {
    spec.validate();
    config.validate();
    spec.check_data(data);
    const std::size_t n = data.subject_count();
    if (n == 0 || data.cell_count() == 0) throw std::invalid_argument("run_chain: empty dataset");

    ParameterState state = initial_state(spec, data);
    apply_fixed(state, fixed, n);

    const ParameterLayout layout(n);
    ChainSamples out;
    out.chain_index = chain_index;
    const std::size_t keep = config.retained_per_chain();
    out.iterations.reserve(keep);
    out.columns.assign(layout.size(), {});
    for (auto& col : out.columns) col.reserve(keep);

    Rng rng = Rng::for_stream(config.seed, chain_index);
    for (std::size_t t = 1; t <= config.n_iterations; ++t) {
        if (!fixed.alpha) {
            for (std::size_t i = 0; i < n; ++i) {
                state.alpha[i] = draw_truncated_normal(
                    alpha_conditional(data.cells[i], state.beta[i], state.tau(), spec.intercept_bounds), rng);
            }
        }
        if (!fixed.beta) {
            for (std::size_t i = 0; i < n; ++i) {
                state.beta[i] = draw_normal(
                    beta_conditional(data.cells[i], state.alpha[i], state.tau(), state.b, state.tau_b()), rng);
            }
        }
        if (!fixed.b) {
            state.b = draw_truncated_normal(b_conditional(state.beta, state.tau_b(), spec.slope_mean_bounds), rng);
        }
        if (!fixed.sigma2_b) {
            state.sigma2_b = 1.0 / draw_gamma(slope_precision_conditional(state.beta, state.b, spec.gamma_shape,
                                                                          spec.gamma_rate),
                                              rng);
        }
        if (!fixed.sigma2) {
            state.sigma2 = 1.0 / draw_gamma(
                                     residual_precision_conditional(data, state, spec.gamma_shape, spec.gamma_rate),
                                     rng);
        }

        if (t > config.n_burnin && (t - config.n_burnin) % config.thin == 0) {
            out.iterations.push_back(t);
            for (std::size_t i = 0; i < n; ++i) {
                out.columns[layout.alpha(i)].push_back(state.alpha[i]);
                out.columns[layout.beta(i)].push_back(state.beta[i]);
            }
            out.columns[layout.b()].push_back(state.b);
            out.columns[layout.sigma2_b()].push_back(state.sigma2_b);
            out.columns[layout.sigma2()].push_back(state.sigma2);
        }
    }
    return out;
}

Posterior run_chains(const ModelSpec& spec, const RegressionData& data, const SamplerConfig& config,
                     const FixedParameters& fixed) {
    config.validate();
    Posterior posterior;
    posterior.spec = spec;
    posterior.subjects = data.subjects;
    posterior.data_fingerprint = fingerprint(data);
    posterior.chains.resize(config.n_chains);

    std::size_t workers = config.max_threads;
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, config.n_chains);

    std::vector<std::exception_ptr> errors(config.n_chains);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t c = next++; c < config.n_chains; c = next++) {
            try {
                posterior.chains[c] = run_chain(spec, data, config, c, fixed);
            } catch (...) {
                errors[c] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return posterior;
}

void write_samples_csv(std::ostream& out, const Posterior& posterior) {
    const auto names = posterior.layout().names();
    std::string line;
    out << "chain,iteration,parameter,value\n";
    for (const auto& chain : posterior.chains) {
        const std::string chain_prefix = std::to_string(chain.chain_index) + ',';
        for (std::size_t d = 0; d < chain.draws(); ++d) {
            const std::string iter = std::to_string(chain.iterations[d]) + ',';
            for (std::size_t p = 0; p < names.size(); ++p) {
                line.clear();
                line += chain_prefix;
                line += iter;
                line += names[p];
                line += ',';
                line += detail::format_double(chain.columns[p][d]);
                line += '\n';
                out << line;
            }
        }
    }
}

Posterior read_samples_csv(std::istream& in, const ModelSpec& spec) {
    std::string line;
    if (!std::getline(in, line) || detail::trim(line) != "chain,iteration,parameter,value") {
        throw ParseError(1, "expected header 'chain,iteration,parameter,value'");
    }

    struct Row {
        std::size_t chain;
        std::uint64_t iteration;
        std::string parameter;
        double value;
    };
    std::vector<Row> rows;
    std::size_t max_subject = 0;
    bool any_subject = false;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        const auto f = detail::split_fields(line);
        if (f.size() != 4) throw ParseError(line_no, "expected 4 columns");
        const auto chain = detail::parse_integer(f[0]);
        const auto iter = detail::parse_integer(f[1]);
        const auto value = detail::parse_double(f[3]);
        if (!chain || *chain < 0 || !iter || *iter < 1 || !value) throw ParseError(line_no, "malformed sample row");
        std::string name(f[2]);
        for (const char* prefix : {"alpha", "beta"}) {
            if (auto i = indexed(name, prefix)) {
                max_subject = std::max(max_subject, *i);
                any_subject = true;
            }
        }
        rows.push_back({static_cast<std::size_t>(*chain), static_cast<std::uint64_t>(*iter), std::move(name), *value});
    }
    if (!any_subject) throw ParseError(line_no, "samples file has no per-subject parameters");

    Posterior posterior;
    posterior.spec = spec;
    const std::size_t n = max_subject + 1;
    for (std::size_t i = 0; i < n; ++i) posterior.subjects.push_back(std::to_string(i));
    const ParameterLayout layout(n);

    // chain -> iteration -> column values
    std::map<std::size_t, std::map<std::uint64_t, std::vector<double>>> grid;
    for (const auto& r : rows) {
        auto& draw = grid[r.chain][r.iteration];
        if (draw.empty()) draw.assign(layout.size(), std::nan(""));
        draw[layout.index_of(r.parameter)] = r.value;
    }
    for (const auto& [chain_index, draws] : grid) {
        ChainSamples chain;
        chain.chain_index = chain_index;
        chain.columns.assign(layout.size(), {});
        for (const auto& [iteration, values] : draws) {
            chain.iterations.push_back(iteration);
            for (std::size_t p = 0; p < values.size(); ++p) {
                if (std::isnan(values[p])) {
                    throw ParseError(0, "missing " + layout.name(p) + " at chain " + std::to_string(chain_index) +
                                            " iteration " + std::to_string(iteration));
                }
                chain.columns[p].push_back(values[p]);
            }
        }
        posterior.chains.push_back(std::move(chain));
    }
    return posterior;
}

}  // namespace hbnum
