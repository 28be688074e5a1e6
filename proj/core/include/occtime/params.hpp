#pragma once

#include <stdexcept>

namespace occtime {

/// Index pair (alpha, p) of the skew Bessel bridge occupation-time law.
/// alpha = 1 - d/2 for a Bessel dimension d in (0,2); p is the skewness.
class LampertiParams {
public:
    LampertiParams(double alpha, double p) : alpha_(alpha), p_(p) {
        if (!(alpha > 0.0 && alpha < 1.0))
            throw std::domain_error("LampertiParams: alpha must lie strictly in (0,1)");
        if (!(p > 0.0 && p < 1.0))
            throw std::domain_error("LampertiParams: p must lie strictly in (0,1)");
    }

    double alpha() const { return alpha_; }
    double p() const { return p_; }

    /// alpha = 1 - d/2, bijective from d in (0,2) onto (0,1).
    static double dim_to_alpha(double d) {
        if (!(d > 0.0 && d < 2.0))
            throw std::domain_error("dim_to_alpha: dimension must lie strictly in (0,2)");
        return 1.0 - d / 2.0;
    }

    static LampertiParams from_dimension(double d, double p) {
        return LampertiParams(dim_to_alpha(d), p);
    }

private:
    double alpha_;
    double p_;
};

/// Index gamma in (1/2, 1) of the stable-excursion occupation-time law,
/// gamma = 1/alpha for a stable index alpha in (1,2).
class ExcursionParams {
public:
    explicit ExcursionParams(double gamma) : gamma_(gamma) {
        if (!(gamma > 0.5 && gamma < 1.0))
            throw std::domain_error("ExcursionParams: gamma must lie strictly in (1/2,1)");
    }

    double gamma() const { return gamma_; }

    static double stable_index_to_gamma(double a) {
        if (!(a > 1.0 && a < 2.0))
            throw std::domain_error("stable_index_to_gamma: index must lie strictly in (1,2)");
        return 1.0 / a;
    }

    static ExcursionParams from_stable_index(double a) {
        return ExcursionParams(stable_index_to_gamma(a));
    }

private:
    double gamma_;
};

/// Positivity parameter c = P(X(t) > 0) of a Levy process with constant
/// positivity, indexing the generalized arc-sine law.
class StableParams {
public:
    explicit StableParams(double c) : c_(c) {
        if (!(c > 0.0 && c < 1.0))
            throw std::domain_error("StableParams: c must lie strictly in (0,1)");
    }

    double c() const { return c_; }

private:
    double c_;
};

} // namespace occtime
