#include <cmath>

#include "doctest.h"

#include "occtime/laws.hpp"
#include "occtime/mc.hpp"
#include "occtime/special.hpp"

using namespace occtime;

namespace {

mc::PathConfig small_config(std::size_t paths, std::size_t steps) {
    mc::PathConfig c;
    c.n_paths = paths;
    c.n_steps = steps;
    c.seed = 20260824;
    return c;
}

} // namespace

TEST_SUITE("mc") {

TEST_CASE("config validation") {
    mc::PathConfig c = small_config(10, 100); // not a power of two
    CHECK_THROWS_AS(c.validate(), std::domain_error);
    c.n_steps = 128;
    c.n_paths = 0;
    CHECK_THROWS_AS(c.validate(), std::domain_error);
}

TEST_CASE("streams are deterministic functions of (seed, index)") {
    mc::Stream a(7, 3), b(7, 3), c(7, 4);
    for (int i = 0; i < 16; ++i) CHECK(a.next_u64() == b.next_u64());
    bool differs = false;
    mc::Stream a2(7, 3);
    for (int i = 0; i < 16; ++i)
        if (a2.next_u64() != c.next_u64()) differs = true;
    CHECK(differs);
}

TEST_CASE("gaussian moments are sane") {
    mc::Stream rng(11, 0);
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = rng.next_gaussian();
        sum += g;
        sum2 += g * g;
    }
    CHECK(std::fabs(sum / n) < 0.01);
    CHECK(sum2 / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("brownian occupation follows the arc-sine law") {
    const auto ecdf = mc::simulate_bm_occupation(small_config(4000, 1024));
    const double ks =
        mc::ks_statistic(ecdf, [](double x) { return arcsine_cdf(x); });
    CHECK(ks < 0.05);
}

TEST_CASE("bridge occupation is uniform") {
    const auto ecdf = mc::simulate_bridge_occupation(small_config(4000, 1024));
    const double ks = mc::ks_statistic(
        ecdf, [](double x) { return std::min(1.0, std::max(0.0, x)); });
    CHECK(ks < 0.05);
}

TEST_CASE("worker count does not change the sample") {
    mc::PathConfig one = small_config(500, 256);
    mc::PathConfig two = one;
    two.workers = 3;
    const auto a = mc::simulate_bridge_occupation(one);
    const auto b = mc::simulate_bridge_occupation(two);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        CHECK(a.samples[i] == b.samples[i]);
}

TEST_CASE("skew bridge occupation follows the half-index bridge law") {
    const double p = 0.3;
    std::size_t degenerate = 0;
    const auto ecdf =
        mc::simulate_skew_bridge_occupation(p, small_config(4000, 2048), &degenerate);
    CHECK(degenerate < 40);
    const LampertiParams lp(0.5, p);
    // model cdf on a coarse interpolation grid for speed
    std::vector<double> grid_cdf(257);
    for (int i = 0; i <= 256; ++i)
        grid_cdf[i] = i == 0 ? 0.0 : (i == 256 ? 1.0 : bridge_cdf(lp, i / 256.0, {}));
    const auto model = [&](double x) {
        if (x <= 0.0) return 0.0;
        if (x >= 1.0) return 1.0;
        const double s = x * 256.0;
        const int i = std::min(static_cast<int>(s), 255);
        return grid_cdf[i] * (1.0 - (s - i)) + grid_cdf[i + 1] * (s - i);
    };
    CHECK(mc::ks_statistic(ecdf, model) < 0.05);
}

TEST_CASE("stable occupation follows the generalized arc-sine law") {
    const auto res = mc::simulate_stable_occupation(1.5, 0.0, small_config(4000, 1024));
    CHECK(res.positivity == doctest::Approx(0.5));
    CHECK(res.empirical_positivity == doctest::Approx(0.5).epsilon(0.05));
    const double c = res.positivity;
    const double ks = mc::ks_statistic(
        res.ecdf, [c](double x) { return generalized_arcsine_cdf(c, x); });
    CHECK(ks < 0.05);

    const auto skewed =
        mc::simulate_stable_occupation(1.5, 0.7, small_config(4000, 1024));
    // for index in (1,2), positive skew lowers the positivity parameter
    CHECK(skewed.positivity < 0.5);
    CHECK(skewed.empirical_positivity ==
          doctest::Approx(skewed.positivity).epsilon(0.05));
}

TEST_CASE("random walk bridges put uniform mass on occupation fractions") {
    for (int n = 1; n <= 8; ++n) {
        const auto law = mc::walk_bridge_exact(n);
        CHECK(law.exactly_uniform());
        long long binom = 1;
        for (int k = 1; k <= n; ++k) binom = binom * (n + k) / k;
        CHECK(law.total_paths == binom); // C(2n, n)
    }
    CHECK_THROWS_AS(mc::walk_bridge_exact(0), std::domain_error);
    CHECK_THROWS_AS(mc::walk_bridge_exact(9), std::domain_error);
}

TEST_CASE("ks statistic on a planted sample") {
    mc::EmpiricalCDF e;
    e.samples = {0.1, 0.2, 0.3, 0.4, 0.5};
    const double ks = mc::ks_statistic(e, [](double x) { return x; });
    CHECK(ks == doctest::Approx(0.5)); // at x=0.5: F=0.5, emp jumps to 1
    CHECK(mc::empirical_to_csv(e).find("fraction") != std::string::npos);
}

} // TEST_SUITE
