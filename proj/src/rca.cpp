#include "hbnum/rca.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "hbnum/special_functions.hpp"
#include "text_util.hpp"

namespace hbnum {

namespace {

struct Moments {
    double mean = 0.0;
    double sd = 0.0;
};

Moments moments(std::span<const double> values) {
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0))};
}

}  // namespace

RegressionFit ols_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("ols_fit: x and y differ in length");
    const std::size_t n = x.size();
    if (n < 2) throw DegenerateDesignError("ols_fit: need at least two observations");

    const double nd = static_cast<double>(n);
    double x_bar = 0.0;
    double y_bar = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        x_bar += x[k];
        y_bar += y[k];
    }
    x_bar /= nd;
    y_bar /= nd;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        sxx += (x[k] - x_bar) * (x[k] - x_bar);
        sxy += (x[k] - x_bar) * (y[k] - y_bar);
    }
    if (!(sxx > 0.0)) throw DegenerateDesignError("ols_fit: all x values are identical");

    RegressionFit fit;
    fit.n = n;
    fit.slope = sxy / sxx;
    fit.intercept = y_bar - fit.slope * x_bar;
    if (n > 2) {
        double sse = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double r = y[k] - fit.intercept - fit.slope * x[k];
            sse += r * r;
        }
        fit.residual_sd = std::sqrt(sse / (nd - 2.0));
    }
    return fit;
}

std::vector<double> rca_slopes(const RegressionData& data) {
    std::vector<double> slopes;
    slopes.reserve(data.subject_count());
    for (std::size_t i = 0; i < data.subject_count(); ++i) {
        try {
            slopes.push_back(ols_fit(data.cells[i].x, data.cells[i].y).slope);
        } catch (const DegenerateDesignError& e) {
            throw DegenerateDesignError("subject '" + data.subjects[i] + "': " + e.what());
        }
    }
    return slopes;
}

TTestResult one_sample_t(std::span<const double> values, double mu0) {
    if (values.size() < 2) throw std::invalid_argument("one_sample_t: need at least two values");
    const auto m = moments(values);
    if (!(m.sd > 0.0)) throw DegenerateDesignError("one_sample_t: values have zero spread");
    TTestResult r;
    r.df = values.size() - 1;
    r.t = (m.mean - mu0) / (m.sd / std::sqrt(static_cast<double>(values.size())));
    r.p = std::min(1.0, 2.0 * student_t_cdf(-std::fabs(r.t), static_cast<double>(r.df)));
    return r;
}

ConfidenceInterval mean_ci(std::span<const double> values, double level) {
    if (values.size() < 2) throw std::invalid_argument("mean_ci: need at least two values");
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("mean_ci: level must lie in (0, 1)");
    const auto m = moments(values);
    const double t_star = student_t_quantile(0.5 + 0.5 * level, static_cast<double>(values.size() - 1));
    const double half = t_star * m.sd / std::sqrt(static_cast<double>(values.size()));
    return {m.mean - half, m.mean + half, level};
}

void write_slopes_csv(std::ostream& out, const std::vector<std::string>& subjects,
                      std::span<const double> slopes) {
    out << "subject,slope\n";
    for (std::size_t i = 0; i < slopes.size(); ++i) {
        out << subjects.at(i) << ',' << detail::format_double(slopes[i]) << '\n';
    }
}

}  // namespace hbnum
