#include <cmath>

#include "doctest.h"

#include "occtime/kernels.hpp"
#include "occtime/quadrature.hpp"

using namespace occtime;

namespace {

// five-point central difference, h chosen for ~1e-9 truncation error
double fd_derivative(const std::function<double(double)>& f, double t) {
    const double h = 1e-3;
    return (-f(t + 2 * h) + 8 * f(t + h) - 8 * f(t - h) + f(t - 2 * h)) /
           (12 * h);
}

} // namespace

TEST_SUITE("kernels") {

TEST_CASE("parameter domains are enforced") {
    CHECK_THROWS_AS(LampertiParams(0.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(LampertiParams(1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(LampertiParams(0.5, 0.0), std::domain_error);
    CHECK_THROWS_AS(LampertiParams(0.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(ExcursionParams(0.5), std::domain_error);
    CHECK_THROWS_AS(ExcursionParams(1.0), std::domain_error);
    CHECK_THROWS_AS(StableParams(0.0), std::domain_error);
    CHECK(LampertiParams::dim_to_alpha(1.0) == doctest::Approx(0.5));
    CHECK_THROWS_AS(LampertiParams::dim_to_alpha(2.0), std::domain_error);
    CHECK(ExcursionParams::stable_index_to_gamma(1.5) ==
          doctest::Approx(2.0 / 3.0));
}

TEST_CASE("symmetric half-index Lamperti density is the arc-sine density") {
    const LampertiParams params(0.5, 0.5);
    for (const double x : {0.05, 0.25, 0.5, 0.75, 0.95}) {
        const double expected = 1.0 / (M_PI * std::sqrt(x * (1.0 - x)));
        CHECK(lamperti_density(params, x) == doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("Lamperti density integrates to one") {
    for (const double alpha : {0.25, 0.5, 0.75})
        for (const double p : {0.3, 0.5, 0.7}) {
            const LampertiParams params(alpha, p);
            const double total = integrate_01(
                [&](double x) { return lamperti_density(params, x); }, alpha,
                alpha, {});
            // alpha = 1/4 puts an exponent-1/4 singularity at both ends; the
            // tail extrapolation is noise-limited a little above 1e-9 there
            CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
        }
}

TEST_CASE("Lamperti asymptote matches the density near zero") {
    const LampertiParams params(0.6, 0.35);
    const PowerLaw asym = lamperti_asymptote(params);
    CHECK(asym.exponent == doctest::Approx(-0.4));
    // relative correction is O(x^alpha)
    for (const double x : {1e-6, 1e-8}) {
        const double predicted = asym.constant * std::pow(x, asym.exponent);
        CHECK(lamperti_density(params, x) ==
              doctest::Approx(predicted).epsilon(2.0 * std::pow(x, 0.6)));
    }
}

TEST_CASE("BFRY density integrates to one") {
    for (const double alpha : {0.3, 0.5, 0.8}) {
        const double total = integrate_01(
            [&](double x) { return bfry_density(alpha, x); }, alpha, 1.0, {});
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("generalized arc-sine density integrates to one") {
    for (const double c : {0.2, 0.5, 0.85}) {
        const StableParams params(c);
        const double total = integrate_01(
            [&](double x) { return generalized_arcsine_density(params, x); }, c,
            1.0 - c, {});
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("g kernel derivatives agree with finite differences") {
    const LampertiParams params(0.6, 0.3);
    for (const double t : {0.2, 0.5, 0.8}) {
        const auto f = [&](double s) { return g_kernel(params, s, 0); };
        CHECK(g_kernel(params, t, 1) ==
              doctest::Approx(fd_derivative(f, t)).epsilon(1e-7));
        const auto f1 = [&](double s) { return g_kernel(params, s, 1); };
        CHECK(g_kernel(params, t, 2) ==
              doctest::Approx(fd_derivative(f1, t)).epsilon(1e-7));
    }
    CHECK_THROWS_AS(g_kernel(params, 0.5, 3), std::invalid_argument);
}

TEST_CASE("h kernel derivatives agree with finite differences") {
    const ExcursionParams params(0.75);
    for (const double t : {0.2, 0.5, 0.8}) {
        const auto f = [&](double s) { return h_kernel(params, s, 0); };
        CHECK(h_kernel(params, t, 1) ==
              doctest::Approx(fd_derivative(f, t)).epsilon(1e-7));
        const auto f1 = [&](double s) { return h_kernel(params, s, 1); };
        CHECK(h_kernel(params, t, 2) ==
              doctest::Approx(fd_derivative(f1, t)).epsilon(1e-7));
    }
}

TEST_CASE("jet chain extends the low-order kernel derivatives") {
    const LampertiParams lp(0.45, 0.65);
    const ExcursionParams ep(0.8);
    for (const double t : {0.1, 0.4, 0.9}) {
        const auto gj = g_kernel_derivatives(lp, t, 4);
        REQUIRE(gj.size() == 5);
        for (int k = 0; k <= 2; ++k)
            CHECK(gj[k] == doctest::Approx(g_kernel(lp, t, k)).epsilon(1e-12));
        const auto g3 = [&](double s) { return g_kernel(lp, s, 2); };
        CHECK(gj[3] == doctest::Approx(fd_derivative(g3, t)).epsilon(1e-6));

        const auto hj = h_kernel_derivatives(ep, t, 4);
        for (int k = 0; k <= 2; ++k)
            CHECK(hj[k] == doctest::Approx(h_kernel(ep, t, k)).epsilon(1e-12));
        const auto h3 = [&](double s) { return h_kernel(ep, s, 2); };
        CHECK(hj[3] == doctest::Approx(fd_derivative(h3, t)).epsilon(1e-6));
    }
}

TEST_CASE("g kernel small-t behavior has exponent alpha") {
    const LampertiParams params(0.7, 0.4);
    const double a = params.alpha();
    const double ratio1 = g_kernel(params, 1e-6, 0) / std::pow(1e-6, a);
    const double ratio2 = g_kernel(params, 1e-8, 0) / std::pow(1e-8, a);
    CHECK(ratio1 == doctest::Approx(ratio2).epsilon(1e-4));
    // leading constant: (sin a pi / pi) (1-p) / p^2
    const double expected =
        std::sin(a * M_PI) / M_PI * (1.0 - params.p()) /
        (params.p() * params.p());
    CHECK(ratio2 == doctest::Approx(expected).epsilon(1e-5));
}

} // TEST_SUITE
