#include "oracle.hpp"

#include "trialopt/error.hpp"
#include "trialopt/market.hpp"

#include <doctest.h>

using namespace trialopt;

TEST_SUITE("market") {

const ValuationDistribution kU(Uniform{0, 1});

TEST_CASE("inattentive revenue") {
    const AttentionParams prm{2.0, 0.0, 1.0};
    const double ir = inattentive_revenue(kU, prm, {7.0, 0.5, 0.0});
    CHECK(ir == doctest::Approx(0.067235).epsilon(1e-5));
    // integrate the cancel-failure revenue over valuations below P
    const double q = oracle::q_logistic(0.5, 2.0);
    CHECK(ir == doctest::Approx(oracle::simpson([&](double) { return 0.5 * (1 - q); }, 0.0, 0.5)).epsilon(1e-12));
    const ValuationDistribution high(Uniform{0.6, 1.0});
    CHECK(inattentive_revenue(high, prm, {0.0, 0.5, 0.0}) == 0.0);
    CHECK(inattentive_revenue(kU, {1e6, 0.0, 1.0}, {0.0, 0.5, 0.0}) < 1e-100);
}

TEST_CASE("profit") {
    const auto o = profit(kU, {2.0, 0.0, 1.0}, {0.0, 0.5, 0.0});
    CHECK(o.standard_revenue == doctest::Approx(0.25));
    CHECK(o.profit == doctest::Approx(0.317235).epsilon(1e-5));
    CHECK(o.profit == doctest::Approx(o.standard_revenue + o.inattentive_revenue).epsilon(1e-12));
    CHECK(profit(kU, {1e4, 0.0, 1.0}, {0.0, 0.5, 0.0}).profit == doctest::Approx(0.25).epsilon(1e-9));
    const auto at_one = profit(kU, {2.0, 0.0, 1.0}, {0.0, 1.0, 0.0});
    CHECK(at_one.standard_revenue == 0.0);
    CHECK(at_one.profit == doctest::Approx(at_one.inattentive_revenue));
    CHECK_THROWS_AS(profit(kU, {2.0, 0.0, 1.0}, {-1.0, 0.5, 0.0}), Error);
    CHECK_THROWS_AS(profit(kU, {2.0, 0.0, 1.0}, {0.0, 0.0, 0.0}), Error);
}

TEST_CASE("utility against quadrature") {
    const AttentionParams full{1e6, 0.0, 1.0};
    CHECK(consumer_utility(kU, full, {0.0, 0.5, 0.0}) == doctest::Approx(0.125).epsilon(1e-6));
    const auto law_u = oracle::uniform01();
    const oracle::Attention a{2.0, 0.0};
    CHECK(consumer_utility(kU, {2.0, 0.0, 1.0}, {0.0, 0.5, 0.0}) ==
          doctest::Approx(oracle::utility(law_u, a, 0.0, 0.5)).epsilon(1e-10));
    // cognitive term lowers utility below surplus minus the mistaken payments
    CHECK(consumer_utility(kU, {2.0, 0.0, 1.0}, {0.0, 0.5, 0.0}) < 0.125 - 0.067235);

    const ValuationDistribution iso(PiecewiseIsoElastic{0.3, 0.4, 0.2});
    const auto law_iso = oracle::iso_elastic(0.3, 0.4, 0.2);
    for (double P : {0.1, 0.3, 0.6, 0.95}) {
        CHECK(happy_surplus(iso, P) == doctest::Approx(oracle::surplus(law_iso, P)).epsilon(1e-9));
        CHECK(consumer_utility(iso, {3.0, 0.2, 1.0}, {2.0, P, 0.0}) ==
              doctest::Approx(oracle::utility(law_iso, {3.0, 0.2}, 2.0, P)).epsilon(1e-9));
    }
    const ValuationDistribution wb(TruncatedWeibull{2.0, 0.5});
    CHECK(happy_surplus(wb, 0.4) == doctest::Approx(oracle::surplus(oracle::weibull(2.0, 0.5), 0.4)).epsilon(1e-9));
}

TEST_CASE("IR slack") {
    CHECK(ir_slack(kU, {2.0, 0.0, 1.0}, {3.0, 0.5, 0.0}) == 0.0);
    CHECK(ir_slack(ValuationDistribution(Uniform{0.6, 1}), {2.0, 1.0, 1.0}, {3.0, 0.5, 0.0}) == 0.0);
    const double q = oracle::q_logistic(0.5, 1.0);
    CHECK(ir_slack(kU, {2.0, 1.0, 1.0}, {1.0, 0.5, 0.0}) == doctest::Approx(0.5 * -oracle::H(q) * 0.5).epsilon(1e-14));
}

TEST_CASE("slack equals -dU/dT at fixed monitoring") {
    const auto law = oracle::uniform01();
    for (double T : {0.5, 2.0, 8.0, 20.0, 60.0})
        for (double P : {0.2, 0.35, 0.5, 0.65, 0.8})
            for (double beta : {0.05, 0.2, 0.5, 1.0, 3.0}) {
                const AttentionParams prm{2.0, beta, 1.0};
                const oracle::Attention a{2.0, beta};
                const double q = oracle::q_logistic(P, a.lam(T));
                const double fd = -oracle::five_point(
                    [&](double t) { return oracle::utility_at_q(law, a, t, P, q); }, T, 1e-5 * std::max(1.0, T));
                CHECK(oracle::rel_err(ir_slack(kU, prm, {T, P, 0.0}), fd) <= 1e-5);
            }
}

TEST_CASE("total derivative of U differs from the slack by the monitoring response") {
    // -dU/dT = slack + 2 P F (-dq/dT) once q* is re-optimized
    const AttentionParams prm{2.0, 1.0, 1.0};
    const auto law = oracle::uniform01();
    for (double T : {0.5, 3.0})
        for (double P : {0.3, 0.7}) {
            const double fd = -oracle::five_point([&](double t) { return oracle::utility(law, {2.0, 1.0}, t, P); }, T, 1e-4);
            const double dq = q_derivatives(P, effective_lambda(prm, T), prm, T).dq_dT;
            const double exact = ir_slack(kU, prm, {T, P, 0.0}) + 2.0 * P * P * (-dq);
            CHECK(oracle::rel_err(exact, fd) <= 1e-6);
        }
}

TEST_CASE("IR slope and monotonicity in T") {
    const AttentionParams prm{2.0, 0.5, 1.0};
    for (double T : {0.1, 1.0, 10.0}) {
        const double fd = oracle::five_point([&](double t) { return inattentive_revenue(kU, prm, {t, 0.6, 0.0}); }, T, 1e-4);
        CHECK(oracle::rel_err(inattentive_revenue_slope(kU, prm, {T, 0.6, 0.0}), fd) <= 1e-7);
    }
    double prev = -1.0;
    for (int i = 0; i <= 40; ++i) {
        const double v = inattentive_revenue(kU, prm, {i * 2.5, 0.6, 0.0});
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("stronger attention: utility up, IR down") {
    for (double P : {0.2, 0.5, 0.9})
        for (double T : {0.0, 5.0}) {
            const Contract c{T, P, 0.0};
            const AttentionParams base{2.0, 0.5, 1.0};
            for (double g : {1.5, 2.0, 4.0}) {
                const AttentionParams s{2.0, 0.5, g};
                CHECK(consumer_utility(kU, s, c) >= consumer_utility(kU, base, c));
                CHECK(inattentive_revenue(kU, s, c) < inattentive_revenue(kU, base, c));
            }
        }
}

}
