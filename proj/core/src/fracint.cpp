#include "occtime/fracint.hpp"

#include <cmath>
#include <stdexcept>

namespace occtime {

SingularFunction::SingularFunction(std::function<double(double)> f, double beta)
    : jet_([f = std::move(f)](double t, int) { return f(t); }),
      beta_(beta),
      max_order_(0) {
    if (!(beta_ > 0.0))
        throw std::domain_error("SingularFunction: endpoint exponent must be > 0");
}

SingularFunction::SingularFunction(std::function<double(double, int)> jet,
                                   double beta, int max_order)
    : jet_(std::move(jet)), beta_(beta), max_order_(max_order) {
    if (!(beta_ > 0.0))
        throw std::domain_error("SingularFunction: endpoint exponent must be > 0");
    if (max_order_ < 0)
        throw std::invalid_argument("SingularFunction: max_order must be >= 0");
}

double SingularFunction::derivative(double t, int order) const {
    if (order < 0 || order > max_order_)
        throw std::logic_error("SingularFunction: derivative order not available");
    return jet_(t, order);
}

SingularFunction SingularFunction::differentiated() const {
    if (max_order_ < 1)
        throw std::logic_error("SingularFunction: no derivative available");
    auto jet = jet_;
    return SingularFunction([jet](double t, int k) { return jet(t, k + 1); },
                            beta_ - 1.0, max_order_ - 1);
}

void SingularFunction::check_endpoint_exponent() const {
    const double r3 = std::fabs(jet_(1e-3, 0)) * std::pow(1e-3, 1.0 - beta_);
    const double r5 = std::fabs(jet_(1e-5, 0)) * std::pow(1e-5, 1.0 - beta_);
    const double r7 = std::fabs(jet_(1e-7, 0)) * std::pow(1e-7, 1.0 - beta_);
    const double cap = 1e3 * (r3 + 1.0);
    if (!(r5 <= cap && r7 <= cap) || !std::isfinite(r7))
        throw std::domain_error(
            "SingularFunction: declared endpoint exponent looks wrong");
}

double delta_apply(const SingularFunction& f, double t) {
    if (!f.has_derivative())
        throw std::logic_error("delta_apply: function carries no derivative");
    return t * f.derivative(t, 1);
}

SingularFunction delta_of(const SingularFunction& f) {
    if (!f.has_derivative())
        throw std::logic_error("delta_of: function carries no derivative");
    // d^k/dt^k [t f'(t)] = t f^(k+1)(t) + k f^(k)(t)
    return SingularFunction(
        [f](double t, int k) {
            return t * f.derivative(t, k + 1) + k * f.derivative(t, k);
        },
        f.endpoint_exponent(), f.max_derivative_order() - 1);
}

SingularFunction euler_shift(double a, const SingularFunction& f) {
    if (!f.has_derivative())
        throw std::logic_error("euler_shift: function carries no derivative");
    // d^k/dt^k [a f + t f'] = (a + k) f^(k) + t f^(k+1)
    return SingularFunction(
        [f, a](double t, int k) {
            return (a + k) * f.derivative(t, k) + t * f.derivative(t, k + 1);
        },
        f.endpoint_exponent(), f.max_derivative_order() - 1);
}

double rl_integral(const SingularFunction& f, double alpha, double x,
                   const QuadratureSpec& spec) {
    if (!(alpha > 0.0))
        throw std::domain_error("rl_integral: alpha must be positive");
    if (!(x > 0.0 && x <= 1.0))
        throw std::domain_error("rl_integral: x must lie in (0,1]");
    const double beta = f.endpoint_exponent();
    const double front = std::pow(x, alpha) / std::tgamma(alpha);
    if (spec.node_rule == NodeRule::jacobi_weighted) {
        // t = x s:  x^alpha/Gamma(alpha) int_0^1 (1-s)^{alpha-1} s^{beta-1} psi(s) ds
        // with psi(s) = f(x s) s^{1-beta} bounded at both ends.
        auto psi = [&](double s) { return f(x * s) * std::pow(s, 1.0 - beta); };
        try {
            return front * jacobi_integrate(psi, alpha - 1.0, beta - 1.0, spec);
        } catch (const convergence_error&) {
            // a smooth factor with several competing fractional powers can
            // defeat node doubling; fall back to the dyadic panel path
        }
    }
    auto integrand = [&](double s) {
        return std::pow(1.0 - s, alpha - 1.0) * f(x * s);
    };
    return front * integrate_01(integrand, beta, alpha, spec);
}

double limit_at_zero(const SingularFunction& f, const QuadratureSpec& spec) {
    // Iterated Aitken delta-squared on f(2^-k): each level annihilates the
    // currently dominant geometric error component.
    std::vector<double> raw;
    for (int k = 4; k <= 52; ++k) {
        raw.push_back(f(std::ldexp(1.0, -k)));
        if (raw.size() < 3) continue;

        std::vector<double> level = raw;
        std::vector<double> deepest = raw;
        for (int lv = 0; lv < 4 && level.size() >= 3; ++lv) {
            std::vector<double> next(level.size() - 2);
            for (std::size_t i = 0; i + 2 < level.size(); ++i) {
                const double d1 = level[i + 1] - level[i];
                const double d2 = level[i + 2] - level[i + 1];
                const double dd = d2 - d1;
                next[i] = (dd != 0.0) ? level[i + 2] - d2 * d2 / dd : level[i + 2];
            }
            level = std::move(next);
            deepest = level;
        }
        if (deepest.size() >= 2) {
            const double a = deepest[deepest.size() - 2];
            const double b = deepest.back();
            const double tol = spec.rel_tol * std::max(std::fabs(b), 1e-3) + 1e-14;
            if (std::fabs(b - a) <= tol) return b;
        }
    }
    throw convergence_error("limit_at_zero: f(0+) extrapolation did not settle");
}

double rl_derivative(const SingularFunction& f, double alpha, double x,
                     const QuadratureSpec& spec) {
    if (!f.has_derivative())
        throw std::logic_error("rl_derivative: function carries no derivative");
    if (!(f.endpoint_exponent() - 1.0 > 0.0))
        throw std::domain_error(
            "rl_derivative: f' is not integrable at 0; use rl_derivative_via_delta");
    const SingularFunction fp = f.differentiated();
    const double f0 = limit_at_zero(f, spec);
    return f0 / std::tgamma(alpha) * std::pow(x, alpha - 1.0) +
           rl_integral(fp, alpha, x, spec);
}

double rl_derivative_via_delta(const SingularFunction& f, double alpha, double x,
                               const QuadratureSpec& spec) {
    if (!(alpha > 0.0))
        throw std::domain_error("rl_derivative_via_delta: alpha must be positive");
    if (!f.has_derivative())
        throw std::logic_error("rl_derivative_via_delta: function carries no derivative");
    const SingularFunction combined = euler_shift(alpha, f);
    if (!(combined.endpoint_exponent() > 0.0))
        throw std::domain_error(
            "rl_derivative_via_delta: alpha f + delta f is not integrable at 0");
    return rl_integral(combined, alpha, x, spec) / x;
}

double rl_nth_derivative(const SingularFunction& f, double alpha, int n,
                         double x, const QuadratureSpec& spec) {
    if (n < 1)
        throw std::invalid_argument("rl_nth_derivative: n must be >= 1");
    if (f.max_derivative_order() < n)
        throw std::logic_error(
            "rl_nth_derivative: not enough derivative orders available");
    // p_n(alpha+delta) applied right-to-left as
    // (alpha+delta-n+1) o ... o (alpha+delta-1) o (alpha+delta)
    SingularFunction g = euler_shift(alpha, f);
    for (int j = 1; j < n; ++j) g = euler_shift(alpha - j, g);
    return rl_integral(g, alpha, x, spec) / std::pow(x, n);
}

PowerLaw asymptotic_fit(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 4)
        throw std::invalid_argument("asymptotic_fit: need at least 4 samples");
    const double sign0 = samples.front().second;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [x, v] : samples) {
        if (!(x > 0.0))
            throw std::domain_error("asymptotic_fit: abscissae must be positive");
        if (v == 0.0 || v * sign0 <= 0.0)
            throw std::domain_error(
                "asymptotic_fit: degenerate fit (zero value or sign change)");
        const double lx = std::log(x);
        const double ly = std::log(std::fabs(v));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(samples.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    const double sign = sign0 > 0.0 ? 1.0 : -1.0;
    return {slope, sign * std::exp(intercept)};
}

} // namespace occtime
