#include "occtime/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace occtime {

namespace {

void check_unit_interval(double x, const char* who) {
    if (!(x > 0.0 && x < 1.0))
        throw std::domain_error(std::string(who) + ": argument must lie strictly in (0,1)");
}

// Truncated Taylor jets: jet[k] is the k-th derivative at the expansion point.
using Jet = std::vector<double>;

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// t^a with t > 0
Jet pow_jet(double t, double a, int K) {
    Jet d(K + 1);
    double coeff = 1.0;
    double power = std::pow(t, a);
    for (int k = 0; k <= K; ++k) {
        d[k] = coeff * power;
        coeff *= (a - k);
        power /= t;
    }
    return d;
}

// (1-t)^a with t < 1
Jet pow1m_jet(double t, double a, int K) {
    const double w = 1.0 - t;
    Jet d(K + 1);
    double coeff = 1.0;
    double power = std::pow(w, a);
    for (int k = 0; k <= K; ++k) {
        d[k] = coeff * power;
        coeff *= -(a - k);
        power /= w;
    }
    return d;
}

Jet mul(const Jet& u, const Jet& v) {
    const int K = static_cast<int>(u.size()) - 1;
    Jet w(K + 1, 0.0);
    for (int k = 0; k <= K; ++k)
        for (int j = 0; j <= k; ++j)
            w[k] += binom(k, j) * u[j] * v[k - j];
    return w;
}

// u / v by the Leibniz recursion
Jet div(const Jet& u, const Jet& v) {
    const int K = static_cast<int>(u.size()) - 1;
    Jet q(K + 1, 0.0);
    for (int k = 0; k <= K; ++k) {
        double s = u[k];
        for (int j = 1; j <= k; ++j)
            s -= binom(k, j) * v[j] * q[k - j];
        q[k] = s / v[0];
    }
    return q;
}

// Shared form of both kernels:
//   f(t) = c * t^a / D(t),  D = (A (1-t)^a + B t^a)^2 + (S t^a)^2
// where D expands to the displayed denominator.  The squared form avoids
// cancellation when the cosine term is negative.
Jet kernel_jet(double t, double a, double c, double A, double B, double S, int K) {
    const Jet u = pow1m_jet(t, a, K);
    const Jet v = pow_jet(t, a, K);
    Jet w(K + 1);
    for (int k = 0; k <= K; ++k) w[k] = A * u[k] + B * v[k];
    Jet denom = mul(w, w);
    const Jet vv = mul(v, v);
    for (int k = 0; k <= K; ++k) denom[k] += S * S * vv[k];
    Jet num(K + 1);
    for (int k = 0; k <= K; ++k) num[k] = c * v[k];
    return div(num, denom);
}

Jet g_jet(const LampertiParams& params, double t, int K) {
    const double alpha = params.alpha();
    const double p = params.p();
    const double q = 1.0 - p;
    const double sa = std::sin(alpha * M_PI);
    const double ca = std::cos(alpha * M_PI);
    return kernel_jet(t, alpha, sa / M_PI * q, p, q * ca, q * sa, K);
}

Jet h_jet(const ExcursionParams& params, double t, int K) {
    const double g = params.gamma();
    const double sg = std::sin(g * M_PI);
    const double cg = std::cos(g * M_PI);
    return kernel_jet(t, g, sg / M_PI * g / (1.0 - g), 1.0, -cg, sg, K);
}

} // namespace

double lamperti_density(const LampertiParams& params, double x) {
    check_unit_interval(x, "lamperti_density");
    const double alpha = params.alpha();
    const double p = params.p();
    const double q = 1.0 - p;
    const double u = std::pow(1.0 - x, alpha);
    const double v = std::pow(x, alpha);
    const double sa = std::sin(alpha * M_PI);
    const double ca = std::cos(alpha * M_PI);
    const double w = p * u + q * ca * v;
    const double denom = w * w + q * q * sa * sa * v * v;
    const double num = p * q * std::pow(x, alpha - 1.0) * std::pow(1.0 - x, alpha - 1.0);
    return sa / M_PI * num / denom;
}

PowerLaw lamperti_asymptote(const LampertiParams& params) {
    const double alpha = params.alpha();
    const double p = params.p();
    return {alpha - 1.0, std::sin(alpha * M_PI) / M_PI * (1.0 - p) / p};
}

double bfry_density(double alpha, double x) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("bfry_density: alpha must lie strictly in (0,1)");
    check_unit_interval(x, "bfry_density");
    const double u = std::pow(1.0 - x, alpha);
    const double v = std::pow(x, alpha);
    const double sa = std::sin(alpha * M_PI);
    const double ca = std::cos(alpha * M_PI);
    const double w = u - ca * v;
    const double denom = w * w + sa * sa * v * v;
    const double num = std::pow(x, alpha - 1.0) * std::pow(1.0 - x, alpha - 1.0);
    return sa / M_PI * alpha / (1.0 - alpha) * num / denom;
}

double generalized_arcsine_density(const StableParams& params, double x) {
    check_unit_interval(x, "generalized_arcsine_density");
    const double c = params.c();
    return std::sin(c * M_PI) / M_PI * std::pow(x, c - 1.0) * std::pow(1.0 - x, -c);
}

double g_kernel(const LampertiParams& params, double t, int order) {
    check_unit_interval(t, "g_kernel");
    if (order < 0 || order > 2)
        throw std::invalid_argument("g_kernel: order must be 0, 1 or 2");
    return g_jet(params, t, order)[order];
}

double h_kernel(const ExcursionParams& params, double t, int order) {
    check_unit_interval(t, "h_kernel");
    if (order < 0 || order > 2)
        throw std::invalid_argument("h_kernel: order must be 0, 1 or 2");
    return h_jet(params, t, order)[order];
}

std::vector<double> g_kernel_derivatives(const LampertiParams& params, double t,
                                         int max_order) {
    check_unit_interval(t, "g_kernel_derivatives");
    if (max_order < 0)
        throw std::invalid_argument("g_kernel_derivatives: max_order must be >= 0");
    return g_jet(params, t, max_order);
}

std::vector<double> h_kernel_derivatives(const ExcursionParams& params, double t,
                                         int max_order) {
    check_unit_interval(t, "h_kernel_derivatives");
    if (max_order < 0)
        throw std::invalid_argument("h_kernel_derivatives: max_order must be >= 0");
    return h_jet(params, t, max_order);
}

} // namespace occtime
