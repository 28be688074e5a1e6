#include <cmath>

#include "doctest.h"

#include "occtime/fracint.hpp"
#include "occtime/laws.hpp"

using namespace occtime;

namespace {

SingularFunction monomial(double beta) {
    // t^{beta-1} with full derivative chain
    return SingularFunction(
        [beta](double t, int k) {
            double c = 1.0;
            for (int j = 0; j < k; ++j) c *= beta - 1.0 - j;
            return c * std::pow(t, beta - 1.0 - k);
        },
        beta, 16);
}

double monomial_rl(double alpha, double beta, double x) {
    // I^alpha[t^{beta-1}] = Gamma(beta)/Gamma(alpha+beta) x^{alpha+beta-1}
    return std::exp(std::lgamma(beta) - std::lgamma(alpha + beta)) *
           std::pow(x, alpha + beta - 1.0);
}

} // namespace

TEST_SUITE("fracint") {

TEST_CASE("fractional integral of monomials is exact") {
    for (const double alpha : {0.25, 0.5, 0.9, 1.5})
        for (const double beta : {0.5, 1.0, 2.5})
            for (const double x : {0.1, 0.5, 1.0}) {
                const double got = rl_integral(monomial(beta), alpha, x, {});
                CHECK(got ==
                      doctest::Approx(monomial_rl(alpha, beta, x)).epsilon(1e-11));
            }
}

TEST_CASE("half-integral of an inverse square root is sqrt(pi)-flat") {
    // I^{1/2}[t^{-1/2}](x) = Gamma(1/2) = sqrt(pi), independent of x
    for (const double x : {0.2, 0.7, 1.0}) {
        const double got =
            std::tgamma(0.5) * rl_integral(monomial(0.5), 0.5, x, {});
        CHECK(got == doctest::Approx(M_PI).epsilon(1e-11));
    }
}

TEST_CASE("semigroup identity holds on smooth and kernel inputs") {
    const QuadratureSpec inner;
    const double a = 0.5, b = 0.75;
    std::vector<SingularFunction> fns;
    fns.emplace_back([](double) { return 1.0; }, 1.0);
    fns.push_back(monomial(1.5));
    fns.push_back(bridge_kernel_function(LampertiParams(0.5, 1.0 / 3.0)));
    for (const auto& f : fns) {
        const SingularFunction first(
            [&](double t) { return rl_integral(f, a, t, inner); },
            a + f.endpoint_exponent());
        for (const double x : {0.3, 0.8}) {
            const double lhs = rl_integral(first, b, x, {});
            const double rhs = rl_integral(f, a + b, x, {});
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
        }
    }
}

TEST_CASE("delta operator and euler shift act correctly on monomials") {
    const SingularFunction f = monomial(2.5); // t^{3/2}
    CHECK(delta_apply(f, 0.4) == doctest::Approx(1.5 * std::pow(0.4, 1.5)));
    const SingularFunction df = delta_of(f);
    CHECK(df(0.4) == doctest::Approx(1.5 * std::pow(0.4, 1.5)));
    CHECK(df.derivative(0.4, 1) ==
          doctest::Approx(1.5 * 1.5 * std::pow(0.4, 0.5)).epsilon(1e-12));
    const SingularFunction shifted = euler_shift(0.7, f);
    CHECK(shifted(0.4) ==
          doctest::Approx((0.7 + 1.5) * std::pow(0.4, 1.5)).epsilon(1e-12));
}

TEST_CASE("the two derivative routes agree") {
    const SingularFunction f = monomial(1.75);
    for (const double alpha : {0.4, 0.8})
        for (const double x : {0.25, 0.6, 0.95}) {
            const double via_leibniz = rl_derivative(f, alpha, x, {});
            const double via_delta = rl_derivative_via_delta(f, alpha, x, {});
            // exact: d/dx of Gamma(b)/Gamma(a+b) x^{a+b-1}
            const double exact = (alpha + 0.75) *
                                 monomial_rl(alpha, 1.75, x) / x;
            CHECK(via_leibniz == doctest::Approx(exact).epsilon(1e-9));
            CHECK(via_delta == doctest::Approx(exact).epsilon(1e-9));
        }
}

TEST_CASE("nth derivative reduces to the closed monomial form") {
    const double alpha = 0.6, beta = 3.5;
    const SingularFunction f = monomial(beta);
    for (int n = 1; n <= 3; ++n)
        for (const double x : {0.3, 0.9}) {
            double exact = monomial_rl(alpha, beta, x);
            double e = alpha + beta - 1.0;
            for (int j = 0; j < n; ++j) {
                exact *= e - j;
            }
            exact /= std::pow(x, n);
            const double got = rl_nth_derivative(f, alpha, n, x, {});
            CHECK(got == doctest::Approx(exact).epsilon(1e-8));
        }
}

TEST_CASE("limit at zero recovers slow power-law limits") {
    const SingularFunction f(
        [](double t) { return 2.0 + std::pow(t, 0.25) - 3.0 * t; }, 1.0);
    CHECK(limit_at_zero(f, {}) == doctest::Approx(2.0).epsilon(1e-6));
    const SingularFunction g([](double t) { return std::cos(t); }, 1.0);
    CHECK(limit_at_zero(g, {}) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("asymptotic fit recovers a planted power law") {
    std::vector<std::pair<double, double>> pts;
    for (int k = 8; k <= 16; ++k) {
        const double x = std::ldexp(1.0, -k);
        pts.emplace_back(x, 2.75 * std::pow(x, -0.35) * (1.0 + 0.05 * x));
    }
    const PowerLaw fit = asymptotic_fit(pts);
    CHECK(fit.exponent == doctest::Approx(-0.35).epsilon(2e-3));
    CHECK(fit.constant == doctest::Approx(2.75).epsilon(2e-3));
}

TEST_CASE("precondition violations throw domain errors") {
    CHECK_THROWS_AS(SingularFunction([](double) { return 1.0; }, 0.0),
                    std::domain_error);
    const SingularFunction f = monomial(0.5); // derivative exponent -0.5
    CHECK_THROWS_AS(rl_derivative(f, 0.5, 0.5, {}), std::domain_error);
    const SingularFunction no_chain([](double) { return 1.0; }, 1.0);
    CHECK_THROWS_AS(no_chain.derivative(0.5, 1), std::logic_error);
}

} // TEST_SUITE
