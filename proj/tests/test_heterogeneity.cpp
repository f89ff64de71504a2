#include "oracle.hpp"

#include "trialopt/error.hpp"
#include "trialopt/heterogeneity.hpp"

#include <doctest.h>

using namespace trialopt;

TEST_SUITE("heterogeneity") {

const ValuationDistribution kU(Uniform{0, 1});

TEST_CASE("aggregate loss") {
    const AttentionMixture point{{{2.0, 1.0}}};
    CHECK(aggregate_loss(kU, point, {0.0, 0.5, 0.0}) == doctest::Approx(0.067235).epsilon(1e-5));
    const AttentionMixture sharp{{{1e6, 0.5}, {1e7, 0.5}}};
    CHECK(aggregate_loss(kU, sharp, {0.0, 0.5, 0.0}) < 1e-100);
    // one atom with decay reproduces the market IR exactly
    for (double T : {0.0, 3.0, 17.0})
        for (double P : {0.2, 0.7}) {
            const AttentionParams prm{3.0, 0.4, 1.0};
            CHECK(aggregate_loss(kU, {{{3.0, 1.0}}}, {T, P, 0.0}, 0.4) == inattentive_revenue(kU, prm, {T, P, 0.0}));
        }
    CHECK_THROWS_AS(aggregate_loss(kU, {{{2.0, 0.5}, {3.0, 0.4}}}, {0.0, 0.5, 0.0}), Error);
    CHECK_THROWS_AS(aggregate_loss(kU, {{}}, {0.0, 0.5, 0.0}), Error);
}

TEST_CASE("mps construction") {
    auto [g1, g2] = mps_pair(0.5, 0.25, 0.5);
    REQUIRE(g1.atoms.size() == 1);
    CHECK(g1.atoms[0].lambda == doctest::Approx(2.0));
    REQUIRE(g2.atoms.size() == 2);
    CHECK(g2.atoms[0].lambda == doctest::Approx(4.0));
    CHECK(g2.atoms[1].lambda == doctest::Approx(4.0 / 3.0));
    CHECK(g2.mean_z() == doctest::Approx(0.5).epsilon(1e-15));

    auto [h1, h2] = mps_pair(0.5, 0.25, 0.8);
    CHECK(1.0 / h2.atoms[0].lambda == doctest::Approx(0.4375));
    CHECK(1.0 / h2.atoms[1].lambda == doctest::Approx(0.75));
    CHECK(h2.mean_z() == doctest::Approx(0.5).epsilon(1e-15));

    auto [z1, z2] = mps_pair(0.5, 0.0, 0.5);
    CHECK(z2.atoms.size() == z1.atoms.size());
    CHECK(z2.atoms[0].lambda == z1.atoms[0].lambda);

    CHECK_THROWS_AS(mps_pair(0.5, 0.2, 0.2), Error);  // low atom would reach z <= 0
    CHECK_THROWS_AS(mps_pair(0.5, 0.6, 0.5), Error);
}

TEST_CASE("curvature of the failure probability in z") {
    for (double P : {0.2, 0.5, 0.8})
        for (double z : {0.02, 0.1, 0.25, 0.5, 1.0, 3.0}) {
            const double fd = oracle::second_diff([&](double x) { return 1.0 / (1.0 + std::exp(P / x)); }, z, 1e-4 * z);
            CHECK(oracle::rel_err(psi_curvature(P, z), fd) <= 1e-3);
        }
    // convex for small z, concave beyond the inflection
    const double zi = psi_inflection(0.5);
    CHECK(psi_curvature(0.5, 0.5 * zi) > 0.0);
    CHECK(psi_curvature(0.5, 2.0 * zi) < 0.0);
    CHECK(std::abs(psi_curvature(0.5, zi)) < 1e-10);
    CHECK(0.5 / zi * std::tanh(0.25 / zi) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(psi_curvature(0.5, 1e6)) < 1e-12);
    CHECK(psi_curvature(1.0, 1e-4) == 0.0);  // underflows cleanly
    CHECK_THROWS_AS(psi_curvature(0.5, 0.0), Error);
}

TEST_CASE("spreads raise the loss where psi is convex") {
    // mean_z well below the inflection, spread kept inside the convex region
    const double P = 0.8;
    const double zi = psi_inflection(P);
    const Contract c{0.0, P, 0.0};
    const double mean = 0.25 * zi;
    double prev = aggregate_loss(kU, {{{1.0 / mean, 1.0}}}, c);
    for (double delta : {0.05, 0.1, 0.15, 0.2}) {
        auto [g1, g2] = mps_pair(mean, delta * mean, 0.5);
        const double l2 = aggregate_loss(kU, g2, c);
        CHECK(l2 > aggregate_loss(kU, g1, c));
        CHECK(l2 > prev);
        prev = l2;
    }
}

}
