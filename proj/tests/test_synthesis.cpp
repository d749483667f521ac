#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>

#include "rotforge/synthesis.hpp"

using namespace rotforge;

TEST_CASE("pqf count") {
    CHECK(std::abs(pqf_tcount(1e-10) - 55.21) <= 0.01);
    CHECK(pqf_tcount(1e-15) == doctest::Approx(74.13).epsilon(2e-3));
    CHECK(pqf_tcount(1e-10) < pqf_tcount(1e-20));
    double prev = 0.0;
    for (double eps = 1e-2; eps > 1e-18; eps /= 10.0) {
        double t = pqf_tcount(eps);
        CHECK(t > prev);
        prev = t;
    }
    CHECK_THROWS_AS(pqf_tcount(1.5), std::invalid_argument);
}

TEST_CASE("sr analytic and tabulated counts") {
    SynthesisModel analytic = SynthesisModel::sr_analytic(3.0);
    CHECK(analytic.tcount(1e-10) == doctest::Approx(99.66).epsilon(1e-4));

    SynthesisModel table = SynthesisModel::sr_table({{1e-10, 102.0, {}}, {1e-11, 113.0, {}}});
    CHECK(table.tcount(1e-10) == doctest::Approx(102.0));
    // between records: step to the stricter one
    CHECK(table.tcount(5e-11) == doctest::Approx(113.0));
    CHECK(table.tcount(3e-9) == doctest::Approx(102.0));
    CHECK_THROWS_AS(table.tcount(1e-12), std::out_of_range);

    SynthesisModel empty = SynthesisModel::sr_table({});
    CHECK_THROWS_AS(empty.tcount(1e-10), std::runtime_error);

    // nonincreasing as eps loosens
    double prev = 1e18;
    for (double eps = 1e-12; eps < 1e-2; eps *= 10.0) {
        double t = analytic.tcount(eps);
        CHECK(t <= prev);
        prev = t;
    }
}

TEST_CASE("sr table csv") {
    std::string path = "sr_test_table.csv";
    {
        std::ofstream out(path);
        out << "epsilon,tcount,angle\n1e-10,102,0.098\n1e-12,125,\n";
    }
    auto records = load_sr_table_csv(path);
    REQUIRE(records.size() == 2);
    CHECK(records[0].epsilon == doctest::Approx(1e-10));
    CHECK(records[0].tcount == doctest::Approx(102.0));
    CHECK(records[0].angle.has_value());
    CHECK_FALSE(records[1].angle.has_value());
    std::remove(path.c_str());

    {
        std::ofstream out(path);
        out << "bad,header\n1,2\n";
    }
    CHECK_THROWS(load_sr_table_csv(path));
    std::remove(path.c_str());
}

TEST_CASE("precision conversions") {
    PrecisionValue phi{1e-6, PrecisionMetric::Angle};
    CHECK(convert_precision(phi, PrecisionMetric::Spectral).value ==
          doctest::Approx(1e-6).epsilon(1e-9));
    CHECK(convert_precision(phi, PrecisionMetric::Pqf).value ==
          doctest::Approx(7.071e-7).epsilon(1e-4));
    CHECK(convert_precision(phi, PrecisionMetric::Diamond).value ==
          doctest::Approx(1e-6).epsilon(1e-9));

    // metric ratio is exactly 1/sqrt(2) across the validity window
    for (double a = 1e-8; a <= 0.1; a *= 10.0) {
        PrecisionValue v{a, PrecisionMetric::Angle};
        double pqf = convert_precision(v, PrecisionMetric::Pqf).value;
        double gs = convert_precision(v, PrecisionMetric::Diamond).value;
        CHECK(std::abs(pqf / gs - 1.0 / std::numbers::sqrt2) < 1e-12);
    }

    // involutive round trips
    for (double a : {1e-7, 1e-4, 0.05}) {
        PrecisionValue v{a, PrecisionMetric::Angle};
        PrecisionValue p = convert_precision(v, PrecisionMetric::Pqf);
        CHECK(convert_precision(p, PrecisionMetric::Angle).value ==
              doctest::Approx(a).epsilon(1e-12));
        PrecisionValue s = convert_precision(v, PrecisionMetric::Spectral);
        CHECK(convert_precision(s, PrecisionMetric::Angle).value ==
              doctest::Approx(a).epsilon(1e-12));
    }

    CHECK_THROWS_AS(convert_precision({0.5, PrecisionMetric::Angle}, PrecisionMetric::Pqf),
                    std::out_of_range);
}

TEST_CASE("angle approximation") {
    AngleApproximation strict = approximate_angle(1.0, 1e-10);
    CHECK(strict.level == 35);
    CHECK(strict.achieved_error <= 1e-10);

    // a reachable angle comes out exact, with n a power of two
    AngleApproximation exact = approximate_angle(theta_level(5), 1e-3);
    CHECK(exact.achieved_error == doctest::Approx(0.0).epsilon(1e-15));
    CHECK((exact.n & (exact.n - 1)) == 0);

    AngleApproximation a = approximate_angle(0.1, 1e-3);
    CHECK(a.achieved_error == doctest::Approx(2.91e-4).epsilon(2e-3));
    CHECK(a.achieved_error <= 1e-3);

    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi - 1e-9);
    for (int trial = 0; trial < 1000; ++trial) {
        double phi = u(rng);
        AngleApproximation r = approximate_angle(phi, 1e-6);
        CHECK(r.achieved_error <= theta_level(r.level + 1) + 1e-15);
    }

    // reachable angles tile the circle with uniform gaps
    for (int l = 2; l <= 12; ++l) {
        double theta = theta_level(l);
        long long count = 1LL << (l + 1);
        CHECK(count * theta == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-12));
    }

    CHECK_THROWS_AS(approximate_angle(-0.5, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(approximate_angle(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("synthesized rotation cost") {
    std::vector<CostEntry> frontier = {
        {3, 1e-6, 40.0, make_recipe(RecipeKind::Raw)},
        {3, 1e-9, 90.0, make_recipe(RecipeKind::Raw)},
        {3, 1e-13, 160.0, make_recipe(RecipeKind::Raw)},
    };

    double target = 1e-7;
    CostEntry best = gs_rotation_cost(SynthesisModel::pqf(), frontier, target);
    CHECK(best.error <= target);
    CHECK(best.recipe->kind == RecipeKind::GateSynthesis);

    // dominates the equal-split heuristic
    double eps_gs = 0.5 * target;
    double t = pqf_tcount(eps_gs);
    auto m3 = cheapest(frontier, (target - eps_gs) / t);
    REQUIRE(m3.has_value());
    CHECK(best.cost <= t * m3->cost + 1e-9);

    // recomputing the achieved error from the recipe respects the budget
    double recomputed =
        (best.error - best.recipe->factor * best.recipe->inputs[0].error) +
        best.recipe->factor * best.recipe->inputs[0].error;
    CHECK(recomputed <= target);

    // degenerate single-count model: cost collapses to one level-3 state
    SynthesisModel unit = SynthesisModel::sr_table({{1e-30, 1.0, {}}});
    CostEntry cheap = gs_rotation_cost(unit, frontier, 1e-4);
    CHECK(cheap.cost == doctest::Approx(40.0));

    CHECK_THROWS(gs_rotation_cost(SynthesisModel::pqf(), frontier, 1e-30));
    CHECK_THROWS(gs_rotation_cost(SynthesisModel::pqf(), {}, 1e-7));
}
