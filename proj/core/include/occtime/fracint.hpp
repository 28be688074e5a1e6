#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "occtime/kernels.hpp"
#include "occtime/quadrature.hpp"

namespace occtime {

/// A real function on (0,1) behaving like t^{beta-1} x (bounded) near 0,
/// with an optional chain of closed-form derivatives.
class SingularFunction {
public:
    /// Function with no derivative information.
    SingularFunction(std::function<double(double)> f, double beta);

    /// jet(t, k) must return the k-th derivative for k = 0..max_order.
    SingularFunction(std::function<double(double, int)> jet, double beta,
                     int max_order);

    double operator()(double t) const { return jet_(t, 0); }

    /// k-th derivative; throws std::logic_error beyond the available order.
    double derivative(double t, int order = 1) const;

    double endpoint_exponent() const { return beta_; }
    int max_derivative_order() const { return max_order_; }
    bool has_derivative() const { return max_order_ >= 1; }

    /// f' as a SingularFunction (exponent beta-1, one order fewer).
    SingularFunction differentiated() const;

    /// Spot-check that |f(t)| t^{1-beta} stays bounded toward 0
    /// (t = 1e-3, 1e-5, 1e-7); throws std::domain_error on blow-up.
    void check_endpoint_exponent() const;

private:
    std::function<double(double, int)> jet_;
    double beta_;
    int max_order_;
};

/// (delta f)(t) = t f'(t)
double delta_apply(const SingularFunction& f, double t);

/// The function delta f = t f'(t) with its derivative chain
/// d^k/dt^k [t f'] = t f^{(k+1)} + k f^{(k)}.
SingularFunction delta_of(const SingularFunction& f);

/// a f + delta f, the first-order factor of the derivative recursion.
SingularFunction euler_shift(double a, const SingularFunction& f);

/// Riemann-Liouville fractional integral
///   I^alpha[f](x) = (1/Gamma(alpha)) int_0^x (x-t)^{alpha-1} f(t) dt.
double rl_integral(const SingularFunction& f, double alpha, double x,
                   const QuadratureSpec& spec = {});

/// d/dx I^alpha[f](x) = f(0+)/Gamma(alpha) x^{alpha-1} + I^alpha[f'](x).
/// Requires f' with endpoint exponent > 0.
double rl_derivative(const SingularFunction& f, double alpha, double x,
                     const QuadratureSpec& spec = {});

/// d/dx I^alpha[f](x) = (1/x) I^alpha[alpha f + delta f](x).
/// Requires only delta f integrable (endpoint exponent > 0).
double rl_derivative_via_delta(const SingularFunction& f, double alpha, double x,
                               const QuadratureSpec& spec = {});

/// d^n/dx^n I^alpha[f](x) = x^{-n} I^alpha[p_n(alpha+delta) f](x) with
/// p_n(t) = t (t-1) ... (t-n+1), applied as an iterated first-order
/// composition.
double rl_nth_derivative(const SingularFunction& f, double alpha, int n,
                         double x, const QuadratureSpec& spec = {});

/// f(0+) along t = 2^{-k}, accelerated by Aitken extrapolation.
double limit_at_zero(const SingularFunction& f, const QuadratureSpec& spec = {});

/// Least-squares power-law fit of log|value| against log x.
/// Samples must be nonzero and of constant sign; x decreasing geometrically.
PowerLaw asymptotic_fit(const std::vector<std::pair<double, double>>& samples);

} // namespace occtime
