#pragma once

namespace hurst::dist {

double normal_cdf(double z);
/// Two-sided tail probability P(|Z| >= |z|).
double normal_two_sided_p(double z);
double normal_quantile(double p);

/// Upper tail P(F >= f) of the F(d1, d2) distribution.
double f_upper_tail(double f, double d1, double d2);

/// Upper tail P(X >= x) of the chi-square distribution with df degrees.
double chi_squared_upper_tail(double x, double df);

}  // namespace hurst::dist
