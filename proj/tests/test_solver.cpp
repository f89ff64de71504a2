#include "oracle.hpp"

#include "trialopt/error.hpp"
#include "trialopt/solver.hpp"

#include <doctest.h>

using namespace trialopt;

TEST_SUITE("solver") {

const ValuationDistribution kU(Uniform{0, 1});

TEST_CASE("price FOC is the price derivative of profit") {
    const auto law = oracle::uniform01();
    const auto iso_law = oracle::iso_elastic(0.3, 0.4, 0.2);
    const ValuationDistribution iso(PiecewiseIsoElastic{0.3, 0.4, 0.2});
    for (double T : {0.0, 2.0, 10.0})
        for (double P : {0.15, 0.3, 0.45, 0.7, 0.9}) {
            const oracle::Attention a{2.0, 0.5};
            const AttentionParams prm{2.0, 0.5, 1.0};
            const double fd = oracle::five_point([&](double p) { return oracle::profit(law, a, T, p); }, P, 1e-4);
            CHECK(oracle::rel_err(price_foc(kU, prm, T, P), fd) <= 1e-5);
            const double fd_iso = oracle::five_point([&](double p) { return oracle::profit(iso_law, a, T, p); }, P, 1e-5);
            CHECK(oracle::rel_err(price_foc(iso, prm, T, P), fd_iso) <= 1e-5);
        }
    CHECK(price_foc(kU, {1e4, 0.0, 1.0}, 0.0, 0.5) == doctest::Approx(0.0));
    CHECK(price_foc(kU, {1e4, 0.0, 1.0}, 0.0, 0.3) == doctest::Approx(1 - 2 * 0.3));
}

TEST_CASE("solve_price") {
    const SolverConfig cfg;
    const auto s = solve_price(kU, {50.0, 0.0, 1.0}, 0.0, cfg);
    CHECK(s.price == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(s.sign_changes == 1);
    CHECK(s.ifr_verified);
    for (double k : {1.0, 2.0, 3.5})
        for (double lam : {1.0, 5.0, 30.0}) {
            const ValuationDistribution wd(TruncatedWeibull{k, 0.5});
            const auto br = best_response_price(wd, {lam, 0.5, 1.0}, 3.0, cfg);
            const auto law = oracle::weibull(k, 0.5);
            CHECK(br.price == doctest::Approx(oracle::grid_then_golden_max(
                                  [&](double p) { return oracle::profit(law, {lam, 0.5}, 3.0, p); },
                                  cfg.price_window.p_lo, cfg.price_window.p_hi, 4001))
                                  .epsilon(1e-6));
            // low attention can add a local minimum below an edge maximum
            if (br.at_window_edge) continue;
            CHECK(solve_price(wd, {lam, 0.5, 1.0}, 3.0, cfg).sign_changes == 1);
        }
    const ValuationDistribution iso(PiecewiseIsoElastic{0.05, 0.4, 0.2});
    SolverConfig icfg;
    icfg.price_window = {0.25, 0.9};
    const auto r = solve_price(iso, {5.0, 0.05, 1.0}, 10.0, icfg);
    CHECK_FALSE(r.ifr_verified);
    const auto law = oracle::iso_elastic(0.05, 0.4, 0.2);
    const double grid_best = oracle::grid_then_golden_max(
        [&](double p) { return oracle::profit(law, {5.0, 0.05}, 10.0, p); }, 0.25, 0.9, 2001);
    CHECK(r.price == doctest::Approx(grid_best).epsilon(1e-6));
    // strongly attentive iso-elastic demand: FOC stays positive on the window
    CHECK_THROWS_AS(solve_price(ValuationDistribution(PiecewiseIsoElastic{0.3, 0.4, 0.2}), {1e4, 0.0, 1.0}, 0.0, icfg),
                    Error);
}

TEST_CASE("best response falls back to the window edge") {
    SolverConfig cfg;
    cfg.price_window = {0.25, 0.9};
    const auto br = best_response_price(ValuationDistribution(PiecewiseIsoElastic{0.3, 0.4, 0.2}), {1e4, 0.0, 1.0}, 0.0, cfg);
    CHECK(br.at_window_edge);
    CHECK(br.price == 0.9);
}

TEST_CASE("trial FOC") {
    const AttentionParams prm{2.0, 0.5, 1.0};
    CHECK(trial_foc(kU, {2.0, 0.0, 1.0}, 0.5, 3.0) == 0.0);
    // large-T limit of the slack
    const double T = 1e7;
    CHECK(trial_foc(kU, prm, 0.5, T) == doctest::Approx(-(0.5 / 2.0) * std::log(2.0) * 0.5).epsilon(1e-5));
    const auto law = oracle::uniform01();
    for (double t : {0.5, 3.0, 12.0})
        for (double P : {0.3, 0.6})
            CHECK(oracle::rel_err(trial_foc(kU, prm, P, t), oracle::trial_foc_fd(law, {2.0, 0.5}, t, P)) <= 1e-6);
    // at fixed P the FOC can rise for small T, but it crosses zero once and then keeps falling
    for (double P : {0.3, 0.5, 0.7}) {
        double prev = trial_foc(kU, {10.0, 0.5, 1.0}, P, 0.0);
        int crossings = 0;
        for (int i = 1; i <= 400; ++i) {
            const double g = trial_foc(kU, {10.0, 0.5, 1.0}, P, i * 0.25);
            crossings += (g < 0.0) != (prev < 0.0);
            if (prev < 0.0) CHECK(g < prev);
            prev = g;
        }
        CHECK(crossings <= 1);
    }
}

TEST_CASE("solve_trial") {
    const SolverConfig cfg;
    const auto z = solve_trial(kU, {2.0, 0.0, 1.0}, 0.5, cfg);
    CHECK(z.T == 0.0);
    CHECK(z.beta_zero);
    const auto corner = solve_trial(kU, {1.0, 0.5, 1.0}, 0.9, cfg);
    CHECK(corner.t_at_zero);
    CHECK(corner.T == 0.0);
    const auto law = oracle::uniform01();
    CHECK(oracle::trial_foc_fd(law, {1.0, 0.5}, 0.0, 0.9) < 0.0);

    const AttentionParams prm{10.0, 0.5, 1.0};
    const auto s = solve_trial(kU, prm, 0.5, cfg);
    CHECK_FALSE(s.t_at_zero);
    CHECK(std::abs(s.residual) <= cfg.root_tol);
    CHECK(s.foc_decreasing);
    // the root of the finite-difference FOC sits at the same place
    const double t_fd = oracle::bisect_root([&](double t) { return oracle::trial_foc_fd(law, {10.0, 0.5}, t, 0.5); }, 0.0, 50.0);
    CHECK(s.T == doctest::Approx(t_fd).epsilon(1e-6));

    SolverConfig short_cfg;
    short_cfg.t_max = 0.1;
    CHECK_THROWS_AS(solve_trial(kU, prm, 0.5, short_cfg), Error);
}

TEST_CASE("joint optimum") {
    const SolverConfig cfg;
    const auto mono = joint_optimum(kU, {1e4, 0.0, 1.0}, cfg);
    CHECK(mono.flags.t_at_zero);
    CHECK(mono.contract.P == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(mono.outcome.profit == doctest::Approx(0.25).epsilon(1e-3));

    const AttentionParams prm{10.0, 0.5, 1.0};
    const auto oc = joint_optimum(kU, prm, cfg);
    CHECK_FALSE(oc.flags.any());
    CHECK(std::abs(oc.price_foc_residual) <= 1e-10);
    CHECK(std::abs(oc.trial_foc_residual) <= 1e-10);
    const auto orc = oracle::joint_oracle(oracle::uniform01(), {10.0, 0.5}, 0.05, 0.95, cfg.t_max, 256);
    CHECK(oc.contract.T == doctest::Approx(orc.T).epsilon(1e-5));
    CHECK(std::abs(oc.outcome.profit - orc.profit) <= cfg.opt_tol);
    CHECK(oc.participation_satisfied == (oc.outcome.utility >= 0.0));
}

TEST_CASE("participation modes") {
    SolverConfig cfg;
    const AttentionParams prm{2.0, 0.5, 1.0};
    const auto report = joint_optimum(kU, prm, cfg);
    CHECK_FALSE(report.participation_satisfied);
    cfg.participation_mode = ParticipationMode::Interior;
    CHECK(joint_optimum(kU, prm, cfg).outcome.profit == report.outcome.profit);
    cfg.participation_mode = ParticipationMode::BindingIr;
    cfg.bracket_grid = 64;
    const auto bound = joint_optimum(kU, prm, cfg);
    CHECK(bound.outcome.utility >= -cfg.root_tol);
    CHECK(bound.outcome.profit <= report.outcome.profit + 1e-12);
    // no feasible price can beat it at its own T
    for (double p = 0.05; p <= 0.95; p += 0.01) {
        const Contract c{bound.contract.T, p, 0.0};
        if (consumer_utility(kU, prm, c) >= 0.0) CHECK(profit(kU, prm, c).profit <= bound.outcome.profit + 1e-9);
    }
    CHECK(participation_mode_from_string("binding_ir") == ParticipationMode::BindingIr);
    CHECK_THROWS_AS(participation_mode_from_string("loose"), Error);
}

TEST_CASE("price response curve") {
    const ValuationDistribution iso(PiecewiseIsoElastic{0.05, 0.4, 0.2});
    SolverConfig cfg;
    cfg.price_window = {0.25, 0.9};
    const auto flat = price_response_curve(iso, {5.0, 0.0, 1.0}, {0, 5, 10, 20, 40}, cfg);
    CHECK(flat.flat);
    CHECK_FALSE(flat.hypothesis_holds);
    const auto c = price_response_curve(iso, {5.0, 0.05, 1.0}, {0, 5, 10, 20, 40}, cfg);
    CHECK(c.hypothesis_holds);
    CHECK(c.lambda_crit.value() == doctest::Approx(1.6));
    CHECK(c.strictly_increasing);
}

TEST_CASE("boundary flags text") {
    BoundaryFlags f;
    CHECK(f.to_string() == "none");
    f.t_at_zero = true;
    f.p_at_window_edge = true;
    CHECK(f.to_string() == "T_at_zero|P_at_window_edge");
}

}
