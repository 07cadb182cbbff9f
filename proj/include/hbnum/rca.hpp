#ifndef HBNUM_RCA_HPP
#define HBNUM_RCA_HPP

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hbnum/dataset.hpp"

namespace hbnum {

// Regression coefficient analysis: per-subject least squares, then a
// group-level test on the slopes.

class DegenerateDesignError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RegressionFit {
    double intercept = 0.0;
    double slope = 0.0;
    double residual_sd = 0.0;  // sqrt(SSE / (n - 2)); 0 when n == 2
    std::size_t n = 0;
};

struct TTestResult {
    double t = 0.0;
    std::size_t df = 0;
    double p = 1.0;  // two-sided
};

struct ConfidenceInterval {
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.95;

    double width() const { return upper - lower; }
    bool contains(double v) const { return v >= lower && v <= upper; }
};

RegressionFit ols_fit(std::span<const double> x, std::span<const double> y);

/// One OLS slope per subject, in subject order. Errors name the offending subject.
std::vector<double> rca_slopes(const RegressionData& data);

TTestResult one_sample_t(std::span<const double> values, double mu0 = 0.0);

/// mean +/- t*(1 - (1 - level)/2, n - 1) * sd / sqrt(n)
ConfidenceInterval mean_ci(std::span<const double> values, double level = 0.95);

/// subject,slope
void write_slopes_csv(std::ostream& out, const std::vector<std::string>& subjects,
                      std::span<const double> slopes);

}  // namespace hbnum

#endif  // HBNUM_RCA_HPP
