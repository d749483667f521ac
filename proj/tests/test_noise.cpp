#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rotforge/round_poly.hpp"

using namespace rotforge;

TEST_CASE("zero noise round") {
    for (Protocol p : {Protocol::Mek, Protocol::Dp}) {
        RoundOutcome out = simulate_round(build_circuit(p, 5), NoiseSpec(0, 0, 0));
        CHECK(out.delta == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(out.p_suc == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(simulate_round(build_mekl_circuit(4), NoiseSpec(0.6, 0, 0)),
                    std::invalid_argument);
}

TEST_CASE("channel evolution equals full branch enumeration") {
    Circuit mek = build_mekl_circuit(4);
    for (NoiseSpec spec : {NoiseSpec(1e-3, 1e-3, 1e-6), NoiseSpec(0.02, 0.0, 0.0),
                           NoiseSpec(0.0, 0.05, 0.01), NoiseSpec(0.08, 0.03, 0.004)}) {
        RoundOutcome fast = simulate_round(mek, spec);
        RoundOutcome slow = testing::enumerate_round(mek, spec);
        CHECK(fast.delta == doctest::Approx(slow.delta).epsilon(1e-11));
        CHECK(fast.p_suc == doctest::Approx(slow.p_suc).epsilon(1e-12));
    }
}

TEST_CASE("representative operating point") {
    RoundOutcome out = simulate_round(build_mekl_circuit(5), NoiseSpec(1e-3, 1e-3, 1e-6));
    CHECK(out.delta == doctest::Approx(9.25e-6).epsilon(0.02));
    CHECK(std::abs(out.p_suc - 0.9899995) < 2e-4);
}

TEST_CASE("round outcomes are level independent") {
    NoiseSpec spec(2e-3, 5e-4, 1e-5);
    RoundOutcome base = simulate_round(build_mekl_circuit(4), spec);
    for (int l = 5; l <= 8; ++l) {
        RoundOutcome out = simulate_round(build_mekl_circuit(l), spec);
        CHECK(out.delta == doctest::Approx(base.delta).epsilon(1e-12));
        CHECK(out.p_suc == doctest::Approx(base.p_suc).epsilon(1e-12));
    }
}

TEST_CASE("uncompressed round matches when its extra sites are clean") {
    for (int l : {4, 6}) {
        Circuit mek = build_mekl_circuit(l), dp = build_dpl_circuit(l);
        for (NoiseSpec spec : {NoiseSpec(0, 1e-3, 1e-6), NoiseSpec(0, 0.04, 0.01)}) {
            RoundOutcome a = simulate_round(mek, spec), b = simulate_round(dp, spec);
            CHECK(std::abs(a.delta - b.delta) < 1e-12);
            CHECK(std::abs(a.p_suc - b.p_suc) < 1e-12);
        }
    }
}

TEST_CASE("leading order model") {
    RoundOutcome zero = leading_order(NoiseSpec(0, 0, 0));
    CHECK(zero.delta == 0.0);
    CHECK(zero.p_suc == 1.0);

    RoundOutcome lo = leading_order(NoiseSpec(1e-3, 1e-3, 1e-6));
    CHECK(lo.delta == doctest::Approx(9.25e-6).epsilon(1e-12));
    CHECK(lo.p_suc == doctest::Approx(0.9899995).epsilon(1e-12));

    Circuit mek = build_mekl_circuit(5);
    for (double e3 : {1e-4, 5e-4, 1e-3})
        for (double el : {1e-4, 1e-3}) {
            NoiseSpec spec(e3, el, 1e-6);
            RoundOutcome sim = simulate_round(mek, spec);
            RoundOutcome approx = leading_order(spec);
            CHECK(std::abs(sim.delta - approx.delta) / sim.delta < 0.02);
            CHECK(std::abs(sim.p_suc - approx.p_suc) / sim.p_suc < 0.02);
        }
}

TEST_CASE("leading coefficients") {
    Circuit mek = build_mekl_circuit(5);
    const double e = 1e-4;
    CHECK(simulate_round(mek, NoiseSpec(e, 0, 0)).delta / (e * e) ==
          doctest::Approx(8.0).epsilon(0.01));
    CHECK(simulate_round(mek, NoiseSpec(0, e, 0)).delta / (e * e) ==
          doctest::Approx(1.0).epsilon(0.01));
    CHECK(simulate_round(mek, NoiseSpec(0, 0, e)).delta / e ==
          doctest::Approx(0.25).epsilon(0.01));

    const double f = 1e-5;
    CHECK(simulate_round(mek, NoiseSpec(f, 0, 0)).p_fail() / f ==
          doctest::Approx(8.0).epsilon(0.01));
    CHECK(simulate_round(mek, NoiseSpec(0, f, 0)).p_fail() / f ==
          doctest::Approx(2.0).epsilon(0.01));
    CHECK(simulate_round(mek, NoiseSpec(0, 0, f)).p_fail() / f ==
          doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("monotone in every rate") {
    Circuit mek = build_mekl_circuit(4);
    const std::vector<double> grid = {0.0, 2.5e-3, 5e-3, 7.5e-3, 1e-2};
    for (int axis = 0; axis < 3; ++axis) {
        double prev_delta = -1.0, prev_fail = -1.0;
        for (double r : grid) {
            NoiseSpec spec(axis == 0 ? r : 1e-3, axis == 1 ? r : 1e-3, axis == 2 ? r : 1e-3);
            RoundOutcome out = simulate_round(mek, spec);
            CHECK(out.delta >= prev_delta - 1e-12);
            CHECK(out.p_fail() >= prev_fail - 1e-12);
            prev_delta = out.delta;
            prev_fail = out.p_fail();
        }
    }
}

TEST_CASE("reference closed form: errata flags and corrected reading") {
    ReferenceFormulaReport rep = reference_formulas(NoiseSpec(1e-3, 1e-3, 1e-6));
    CHECK(rep.p_expression_behaves_as_pfail);
    CHECK(rep.epsl_sq_term_duplicated);
    CHECK(rep.measured_epsl_sq_coeff == doctest::Approx(1.0).epsilon(0.01));
    CHECK(rep.corrected_vs_sim_dev < 1e-12);

    // the verbatim p-expression is the failure probability
    Circuit mek = build_mekl_circuit(5);
    for (NoiseSpec spec : {NoiseSpec(1e-3, 1e-3, 1e-6), NoiseSpec(0.03, 0.02, 0.01)}) {
        ReferenceFormulaReport r = reference_formulas(spec);
        RoundOutcome sim = simulate_round(mek, spec);
        CHECK(r.p_verbatim == doctest::Approx(sim.p_fail()).epsilon(1e-10));
        CHECK(r.p_corrected == doctest::Approx(sim.p_suc).epsilon(1e-12));
        CHECK(r.delta_corrected == doctest::Approx(sim.delta).epsilon(1e-10));
    }
}

TEST_CASE("generic noise bound") {
    GenericNoiseBound zero = generic_bound(NoiseSpec(0, 0, 0));
    CHECK(zero.bound == doctest::Approx(0.0));
    CHECK(zero.p_g == doctest::Approx(1.0));
    CHECK(zero.p_b == doctest::Approx(0.0));

    GenericNoiseBound b = generic_bound(NoiseSpec(1e-3, 1e-3, 1e-6));
    CHECK(b.bound == doctest::Approx(3.1313e-5).epsilon(1e-3));

    // leading order: epsl^2 + 28 eps3^2 + 2 eta
    for (double s : {1e-5, 1e-6}) {
        double lead = s * s + 28.0 * s * s + 2.0 * (s * s);
        CHECK(generic_bound(NoiseSpec(s, s, s * s)).bound ==
              doctest::Approx(lead).epsilon(1e-3));
    }

    // printed-bound inequalities for the fault-pattern weights
    for (double e3 : {1e-4, 1e-3, 5e-3, 1e-2}) {
        GenericNoiseBound g = generic_bound(NoiseSpec(e3, 0, 0));
        CHECK(g.p_g >= 1.0 - 8.0 * e3);
        CHECK(g.p_g <= 1.0);
        CHECK(g.p_b >= 28.0 * e3 * e3 - 168.0 * e3 * e3 * e3);
        CHECK(g.p_b <= 28.0 * e3 * e3);
    }

    CHECK_THROWS_AS(generic_bound(NoiseSpec(0.02, 0, 0)), std::invalid_argument);
}

TEST_CASE("generic-noise Monte Carlo stays within the bound") {
    MonteCarloReport rep = monte_carlo_generic(42, 60, NoiseSpec(1e-2, 1e-2, 1e-4), 5);
    CHECK(rep.trials == 60);
    CHECK(rep.violations == 0);
    CHECK(rep.max_observed_error > 0.0);

    // seeded, so bitwise repeatable
    MonteCarloReport again = monte_carlo_generic(42, 60, NoiseSpec(1e-2, 1e-2, 1e-4), 5);
    CHECK(rep.max_observed_error == again.max_observed_error);
    CHECK(rep.max_bound_ratio == again.max_bound_ratio);

    MonteCarloReport none = monte_carlo_generic(1, 5, NoiseSpec(0, 0, 0), 5);
    CHECK(none.max_observed_error == doctest::Approx(0.0).epsilon(1e-12));

    // bare |+> in place of the magic state stays within the bound
    Circuit mek = build_mekl_circuit(5);
    Matrix plus = ket_plus() * ket_plus().adjoint();
    double eps_eff = std::abs(std::sin(theta_level(5)));
    auto trial = generic_noise_trial(mek, plus, eps_eff, 2e-3, 2e-5, 1e-5, 3e-5);
    CHECK_FALSE(trial.violated);
    CHECK(trial.observed_error <= trial.bound);
}

TEST_CASE("round function reproduces the simulator") {
    for (Protocol p : {Protocol::Mek, Protocol::Dp}) {
        RoundFunction fn(p, 5);
        Circuit c = build_circuit(p, 5);
        std::mt19937_64 rng(23);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int trial = 0; trial < 12; ++trial) {
            NoiseSpec spec(0.45 * u(rng), 0.45 * u(rng), 0.45 * u(rng));
            RoundOutcome sim = simulate_round(c, spec);
            RoundOutcome poly = fn.eval(spec.eps3, spec.epsl, spec.eta);
            CHECK(poly.p_suc == doctest::Approx(sim.p_suc).epsilon(1e-9));
            CHECK(poly.delta == doctest::Approx(sim.delta).epsilon(1e-8));
        }
    }
}
