#ifndef HBNUM_DIAGNOSTICS_HPP
#define HBNUM_DIAGNOSTICS_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hbnum/sampler.hpp"

namespace hbnum {

/// Classic (non-split) Gelman-Rubin potential scale reduction factor.
///
/// W is the mean within-chain variance, B = n * var(chain means), and
/// V = (n-1)/n W + B/n; the result is sqrt(V / W). Chains must number at
/// least two and share a length of at least two. W == 0 gives +inf when the
/// chain means differ and 1 when every value is identical.
double rhat(std::span<const std::span<const double>> chains);

struct RhatRow {
    std::string parameter;
    double rhat = 1.0;
    bool converged = true;
};

struct RhatReport {
    double threshold = 1.01;
    std::vector<RhatRow> rows;

    bool all_converged() const;
    double max_rhat() const;
    const RhatRow& row(const std::string& parameter) const;
};

RhatReport rhat_report(const Posterior& posterior, double threshold = 1.01);

/// parameter,rhat,converged
void write_rhat_csv(std::ostream& out, const RhatReport& report);

}  // namespace hbnum

#endif  // HBNUM_DIAGNOSTICS_HPP
