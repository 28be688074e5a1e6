#pragma once

#include <vector>

#include "occtime/params.hpp"

namespace occtime {

/// A one-term power law v(x) ~ constant * x^exponent near x = 0+.
struct PowerLaw {
    double exponent;
    double constant;
};

/// Lamperti density f_{alpha,p} of the skew Bessel process occupation time.
double lamperti_density(const LampertiParams& params, double x);

/// Small-x power law of f_{alpha,p}: exponent alpha-1, constant
/// (sin alpha pi / pi) (1-p)/p.
PowerLaw lamperti_asymptote(const LampertiParams& params);

/// BFRY density f_{J_alpha} on (0,1).
double bfry_density(double alpha, double x);

/// Getoor--Sharpe generalized arc-sine density f_{Z_c}.
double generalized_arcsine_density(const StableParams& params, double x);

/// Integral kernel g_{alpha,p} of the bridge law and its closed-form
/// derivatives; order in {0,1,2}.
double g_kernel(const LampertiParams& params, double t, int order);

/// Integral kernel h_gamma of the excursion law and its closed-form
/// derivatives; order in {0,1,2}.
double h_kernel(const ExcursionParams& params, double t, int order);

/// Derivatives d^k g_{alpha,p}/dt^k for k = 0..max_order, all in closed form
/// (truncated Taylor jet arithmetic; no numeric differencing).
std::vector<double> g_kernel_derivatives(const LampertiParams& params, double t,
                                         int max_order);

/// Same for h_gamma.
std::vector<double> h_kernel_derivatives(const ExcursionParams& params, double t,
                                         int max_order);

} // namespace occtime
