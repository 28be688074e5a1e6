#include <cmath>

#include "doctest.h"

#include "occtime/transforms.hpp"

using namespace occtime;

TEST_SUITE("transforms") {

TEST_CASE("stieltjes transforms of the closed-form densities are tight") {
    const std::vector<double> lambdas = {0.25, 1.0, 8.0};
    const LampertiParams lp(0.6, 0.35);
    const auto r1 = residual_grid(
        "stieltjes_lamperti",
        [&](double l) { return stieltjes_lamperti(lp, l, {}); }, lambdas);
    CHECK(r1.max_rel_err < 1e-9);

    const auto r2 = residual_grid(
        "stieltjes_bfry", [](double l) { return stieltjes_bfry(0.45, l, {}); },
        lambdas);
    CHECK(r2.max_rel_err < 1e-9);
}

TEST_CASE("generalized stieltjes transform of the bridge law") {
    const LampertiParams lp(0.5, 0.3);
    for (const double lambda : {0.5, 2.0}) {
        const TransformPair pair = gst_bridge(lp, lambda, {});
        CHECK(pair.numeric ==
              doctest::Approx(pair.closed_form).epsilon(1e-6));
    }
}

TEST_CASE("generalized stieltjes transform of the excursion law") {
    const ExcursionParams ep(0.75);
    for (const double lambda : {0.5, 2.0}) {
        const TransformPair pair = gst_excursion(ep, lambda, {});
        CHECK(pair.numeric ==
              doctest::Approx(pair.closed_form).epsilon(1e-5));
    }
}

TEST_CASE("lambda grid and serialization helpers") {
    const auto grid = default_lambda_grid();
    REQUIRE(grid.size() == 11);
    CHECK(grid.front() == doctest::Approx(0.0625));
    CHECK(grid.back() == doctest::Approx(64.0));

    const auto r = residual_grid(
        "stieltjes_bfry", [](double l) { return stieltjes_bfry(0.5, l, {}); },
        {1.0, 2.0});
    const std::string csv = residual_to_csv(r);
    CHECK(csv.find("lambda,numeric,closed_form") != std::string::npos);
    const std::string json = residual_to_json(r);
    CHECK(json.find("max_rel_err") != std::string::npos);
}

TEST_CASE("resemblance diagnostic is small but nonzero") {
    const double sup = resemblance_sup(0.75, 9, {});
    CHECK(sup > 0.0);
    CHECK(sup < 0.5); // the laws resemble each other but are not equal
    CHECK_THROWS_AS(resemblance_sup(0.4, 9, {}), std::domain_error);
}

TEST_CASE("lambda must be positive") {
    CHECK_THROWS_AS(stieltjes_lamperti(LampertiParams(0.5, 0.5), 0.0, {}),
                    std::domain_error);
    CHECK_THROWS_AS(gst_excursion(ExcursionParams(0.75), -1.0, {}),
                    std::domain_error);
}

} // TEST_SUITE
