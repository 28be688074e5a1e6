#pragma once

namespace occtime {

/// log Beta(a, b)
double log_beta(double a, double b);

/// Beta(a, b)
double beta_fn(double a, double b);

/// Regularized incomplete beta function I_x(a, b) for x in [0,1].
double reg_inc_beta(double a, double b, double x);

/// Arc-sine distribution function (2/pi) asin(sqrt(x)).
double arcsine_cdf(double x);

/// Distribution function of the generalized arc-sine law with parameter c,
/// i.e. I_x(c, 1-c).
double generalized_arcsine_cdf(double c, double x);

} // namespace occtime
