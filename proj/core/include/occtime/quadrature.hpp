#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace occtime {

/// Raised when successive quadrature refinements fail to agree.
class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class NodeRule {
    jacobi_weighted,      // Gauss-Jacobi nodes for the endpoint weight
    adaptive_subdivision, // dyadic panels accumulating toward the endpoints
};

struct QuadratureSpec {
    double rel_tol = 1e-10;
    int max_refinements = 20;
    NodeRule node_rule = NodeRule::jacobi_weighted;
    // relative noise of individual integrand evaluations.  Subdivision is
    // never pushed below this floor: when the integrand is itself produced
    // by an inner quadrature, demanding agreement finer than the inner
    // tolerance only makes the refinement chase noise.
    double eval_noise_rel = 1e-14;
};

/// Gauss-Jacobi rule on (0,1) for the weight (1-s)^a s^b, a,b > -1.
/// Rules are cached; the cache is safe for concurrent lookup.
struct JacobiRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const JacobiRule& gauss_jacobi_rule(int n, double a, double b);

/// integral over (0,1) of (1-s)^a s^b smooth(s), by Gauss-Jacobi with node
/// doubling until two successive estimates agree to spec.rel_tol.
double jacobi_integrate(const std::function<double(double)>& smooth, double a,
                        double b, const QuadratureSpec& spec);

/// Adaptive integral over (0,1) of F with integrable algebraic endpoint
/// behavior F ~ t^{sigma0-1} near 0 and ~ (1-t)^{sigma1-1} near 1
/// (sigma0, sigma1 > 0).  Dyadic panels toward both endpoints with
/// per-panel adaptive Gauss-Legendre and power-law tail extrapolation;
/// the endpoints themselves are never sampled.
double integrate_01(const std::function<double(double)>& F, double sigma0,
                    double sigma1, const QuadratureSpec& spec);

/// Adaptive integral of a function smooth on [a,b] (interior panels only).
double integrate_interval(const std::function<double(double)>& F, double a,
                          double b, double abs_tol);

} // namespace occtime
