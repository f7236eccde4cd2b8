#pragma once

namespace ahi::special {

/// P(T <= t) for Student's t with `df` degrees of freedom (df > 0).
double student_t_cdf(double t, double df);

/// Two-sided p-value P(|T| >= |t|). Returns 0 for infinite t.
double student_t_two_sided(double t, double df);

double normal_cdf(double z);

/// Two-sided p-value P(|Z| >= |z|).
double normal_two_sided(double z);

/// Inverse of the standard normal CDF, p in (0, 1).
double normal_quantile(double p);

}  // namespace ahi::special
