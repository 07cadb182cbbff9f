#ifndef HBNUM_SPECIAL_FUNCTIONS_HPP
#define HBNUM_SPECIAL_FUNCTIONS_HPP

namespace hbnum {

double normal_pdf(double z);

/// Standard normal CDF, evaluated through erfc so the lower tail keeps full
/// relative precision down to about -37.
double normal_cdf(double z);

/// Inverse of the standard normal CDF (Wichura's AS 241, ~1e-16 relative).
/// Returns -inf / +inf at p == 0 / p == 1; throws std::domain_error outside [0, 1].
double normal_quantile(double p);

/// Regularized incomplete beta I_x(a, b) by Lentz continued fraction.
/// Absolute error is below 1e-12 for the parameter ranges used here (a, b up to ~1e6).
double incomplete_beta(double a, double b, double x);

/// Student-t CDF with `df` degrees of freedom (df > 0, not necessarily integral).
double student_t_cdf(double t, double df);

/// Quantile of the Student-t distribution; p in (0, 1).
double student_t_quantile(double p, double df);

}  // namespace hbnum

#endif  // HBNUM_SPECIAL_FUNCTIONS_HPP
