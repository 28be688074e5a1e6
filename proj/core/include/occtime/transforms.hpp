#pragma once

#include <functional>
#include <string>
#include <vector>

#include "occtime/params.hpp"
#include "occtime/quadrature.hpp"

namespace occtime {

struct TransformPair {
    double numeric;
    double closed_form;
};

/// E[1/(lambda + Y_{alpha,p})]: numeric quadrature of the Lamperti density
/// against the resolvent kernel vs the closed-form right-hand side.
TransformPair stieltjes_lamperti(const LampertiParams& params, double lambda,
                                 const QuadratureSpec& spec = {});

/// E[1/(lambda + J_alpha)]
TransformPair stieltjes_bfry(double alpha, double lambda,
                             const QuadratureSpec& spec = {});

/// Generalized Stieltjes transform of index alpha of dG_{alpha,p}:
/// int (lambda+x)^{-alpha} G'(x) dx vs 1/(p(1+lambda)^alpha + (1-p)lambda^alpha).
TransformPair gst_bridge(const LampertiParams& params, double lambda,
                         const QuadratureSpec& spec = {});

/// Generalized Stieltjes transform of index gamma-1 of dH_gamma:
/// int (lambda+x)^{1-gamma} H'(x) dx vs gamma/((lambda+1)^gamma - lambda^gamma).
TransformPair gst_excursion(const ExcursionParams& params, double lambda,
                            const QuadratureSpec& spec = {});

struct TransformResidual {
    std::string name;
    std::vector<double> lambda_grid;
    std::vector<double> numeric;
    std::vector<double> closed_form;
    double max_rel_err = 0.0;
};

/// Geometric default grid {2^k : k = -4..6}.
std::vector<double> default_lambda_grid();

/// Evaluate a transform pair over a lambda grid and collect the residual.
TransformResidual residual_grid(
    const std::string& name,
    const std::function<TransformPair(double)>& transform,
    const std::vector<double>& lambda_grid);

std::string residual_to_csv(const TransformResidual& r);
std::string residual_to_json(const TransformResidual& r);

/// sup |G_{alpha,1/2}(x) - H_alpha(x)| over an interior grid; a reported
/// diagnostic of the resemblance of the two laws, not a pass/fail check.
double resemblance_sup(double alpha, int n_grid, const QuadratureSpec& spec = {});

} // namespace occtime
