#include <cmath>

#include "doctest.h"

#include "occtime/laws.hpp"
#include "occtime/special.hpp"
#include "occtime/version.hpp"

using namespace occtime;

TEST_SUITE("laws") {

TEST_CASE("symmetric half-index bridge law is uniform") {
    const LampertiParams params(0.5, 0.5);
    for (const double x : {0.1, 0.35, 0.5, 0.9}) {
        CHECK(bridge_cdf(params, x, {}) == doctest::Approx(x).epsilon(1e-10));
        CHECK(bridge_pdf(params, x, {}) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("bridge cdf is a distribution function") {
    const LampertiParams params(0.7, 0.3);
    double prev = 0.0;
    for (const double x : interior_grid(9)) {
        const double c = bridge_cdf(params, x, {});
        CHECK(c > prev);
        CHECK(c < 1.0);
        prev = c;
    }
    CHECK(bridge_cdf(params, 1.0 - 1e-9, {}) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("bridge pdf is the derivative of the bridge cdf") {
    const LampertiParams params(0.6, 0.4);
    const double h = 1e-5;
    for (const double x : {0.25, 0.5, 0.8}) {
        const double fd =
            (bridge_cdf(params, x + h, {}) - bridge_cdf(params, x - h, {})) /
            (2.0 * h);
        CHECK(bridge_pdf(params, x, {}) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("bridge cdf derivatives are finite and match the pdf at order one") {
    const LampertiParams params(0.65, 0.45);
    for (const double x : {0.3, 0.7}) {
        const double d1 = bridge_cdf_derivative(params, 1, x, {});
        CHECK(d1 == doctest::Approx(bridge_pdf(params, x, {})).epsilon(1e-8));
        for (int n = 2; n <= 3; ++n)
            CHECK(std::isfinite(bridge_cdf_derivative(params, n, x, {})));
    }
}

TEST_CASE("excursion cdf is a distribution function reaching one") {
    const ExcursionParams params(0.75);
    double prev = 0.0;
    for (const double x : interior_grid(9)) {
        const double c = excursion_cdf(params, x, {});
        CHECK(c > prev);
        prev = c;
    }
    QuadratureSpec near_one;
    near_one.node_rule = NodeRule::adaptive_subdivision;
    CHECK(excursion_cdf(params, 1.0 - 1e-6, near_one) ==
          doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("excursion pdf integrates to the cdf increment") {
    const ExcursionParams params(0.8);
    const double h = 1e-5;
    for (const double x : {0.3, 0.6}) {
        const double fd =
            (excursion_cdf(params, x + h, {}) - excursion_cdf(params, x - h, {})) /
            (2.0 * h);
        CHECK(excursion_pdf(params, x, {}) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("quantile inverts the cdf") {
    const LampertiParams params(0.5, 0.3);
    for (const double q : {0.1, 0.5, 0.9}) {
        const double x = bridge_quantile(params, q, {});
        CHECK(bridge_cdf(params, x, {}) == doctest::Approx(q).epsilon(1e-7));
    }
    const double xq = quantile([](double t) { return arcsine_cdf(t); }, 0.25);
    CHECK(arcsine_cdf(xq) == doctest::Approx(0.25).epsilon(1e-7));
}

TEST_CASE("law tables round-trip through csv and json") {
    const LawTable table = make_arcsine_table(StableParams(0.35), interior_grid(7));
    table.check_invariants();
    CHECK(table.version == kVersion);

    const LawTable from_csv = law_table_from_csv(law_table_to_csv(table));
    REQUIRE(from_csv.grid.size() == table.grid.size());
    for (std::size_t i = 0; i < table.grid.size(); ++i) {
        CHECK(from_csv.grid[i] == table.grid[i]);   // exact decimal round trip
        CHECK(from_csv.cdf[i] == table.cdf[i]);
        CHECK(from_csv.pdf[i] == table.pdf[i]);
    }
    CHECK(from_csv.kind == table.kind);

    const LawTable from_json = law_table_from_json(law_table_to_json(table));
    for (std::size_t i = 0; i < table.grid.size(); ++i)
        CHECK(from_json.cdf[i] == table.cdf[i]);
}

TEST_CASE("lamperti and bfry tables carry consistent cdf columns") {
    const LawTable lam =
        make_lamperti_table(LampertiParams(0.5, 0.5), interior_grid(9), {});
    for (std::size_t i = 0; i < lam.grid.size(); ++i)
        CHECK(lam.cdf[i] == doctest::Approx(arcsine_cdf(lam.grid[i])).epsilon(1e-9));

    const LawTable bfry = make_bfry_table(0.5, interior_grid(5), {});
    bfry.check_invariants();
    // cdf must be the integral of the pdf column's law
    const double mid_fd = (bfry.cdf[3] - bfry.cdf[1]) / (bfry.grid[3] - bfry.grid[1]);
    CHECK(bfry.pdf[2] == doctest::Approx(mid_fd).epsilon(0.05));
}

TEST_CASE("bridge table is invariant under worker count") {
    const std::vector<double> grid = interior_grid(5);
    const LawTable one = make_bridge_table(LampertiParams(0.6, 0.4), grid, {}, 1);
    const LawTable two = make_bridge_table(LampertiParams(0.6, 0.4), grid, {}, 2);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(one.cdf[i] == two.cdf[i]);
        CHECK(one.pdf[i] == two.pdf[i]);
    }
}

} // TEST_SUITE
