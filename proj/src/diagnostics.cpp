#include "hbnum/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "text_util.hpp"

namespace hbnum {

double rhat(std::span<const std::span<const double>> chains) {
    const std::size_t m = chains.size();
    if (m < 2) throw std::invalid_argument("rhat: need at least two chains");
    const std::size_t n = chains.front().size();
    if (n < 2) throw std::invalid_argument("rhat: chains need at least two draws");
    for (const auto& c : chains) {
        if (c.size() != n) throw std::invalid_argument("rhat: chains differ in length");
    }

    const double nd = static_cast<double>(n);
    std::vector<double> means(m);
    double w = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        double mean = 0.0;
        for (double v : chains[j]) mean += v;
        mean /= nd;
        double ss = 0.0;
        for (double v : chains[j]) ss += (v - mean) * (v - mean);
        means[j] = mean;
        w += ss / (nd - 1.0);
    }
    w /= static_cast<double>(m);

    double grand = 0.0;
    for (double mu : means) grand += mu;
    grand /= static_cast<double>(m);
    double ss_means = 0.0;
    for (double mu : means) ss_means += (mu - grand) * (mu - grand);
    const double b = nd * ss_means / static_cast<double>(m - 1);

    if (w == 0.0) return b == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    const double v = (nd - 1.0) / nd * w + b / nd;
    return std::sqrt(v / w);
}

bool RhatReport::all_converged() const {
    return std::all_of(rows.begin(), rows.end(), [](const RhatRow& r) { return r.converged; });
}

double RhatReport::max_rhat() const {
    double best = 0.0;
    for (const auto& r : rows) best = std::max(best, r.rhat);
    return best;
}

const RhatRow& RhatReport::row(const std::string& parameter) const {
    for (const auto& r : rows) {
        if (r.parameter == parameter) return r;
    }
    throw std::invalid_argument("no R-hat row for '" + parameter + "'");
}

RhatReport rhat_report(const Posterior& posterior, double threshold) {
    RhatReport report;
    report.threshold = threshold;
    const auto layout = posterior.layout();
    for (std::size_t p = 0; p < layout.size(); ++p) {
        const auto chains = posterior.per_chain(p);
        const double r = rhat(chains);
        report.rows.push_back({layout.name(p), r, r <= threshold});
    }
    return report;
}

void write_rhat_csv(std::ostream& out, const RhatReport& report) {
    out << "parameter,rhat,converged\n";
    for (const auto& r : report.rows) {
        out << r.parameter << ',' << detail::format_double(r.rhat) << ',' << (r.converged ? "true" : "false")
            << '\n';
    }
}

}  // namespace hbnum
