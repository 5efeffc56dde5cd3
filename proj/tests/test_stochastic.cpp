/*
   Copyright 2026 the aoilab authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#include <cmath>
#include <vector>

#include "doctest.h"
#include "stochastic/conditional.hpp"
#include "stochastic/distribution.hpp"
#include "support/errors.hpp"
#include "support/numerics.hpp"

using namespace aoilab;

namespace {

struct McMoments {
    double mean, mean_se, var, var_se;
};

// Sample moments with their own standard errors, so analytic values can be
// checked on a four-sigma budget.
McMoments mc_moments(const Distribution& d, std::size_t n, RngStream& rng) {
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = d.sample(rng);
        s1 += x;
        s2 += x * x;
        s3 += x * x * x;
        s4 += x * x * x * x;
    }
    const double nn = static_cast<double>(n);
    const double m = s1 / nn;
    const double m2 = s2 / nn - m * m;
    // central fourth moment via raw moments
    const double m4 = s4 / nn - 4 * m * s3 / nn + 6 * m * m * s2 / nn -
                      3 * m * m * m * m;
    McMoments out;
    out.mean = m;
    out.mean_se = std::sqrt(m2 / nn);
    out.var = m2;
    out.var_se = std::sqrt(std::max(0.0, m4 - m2 * m2) / nn);
    return out;
}

void check_moments_against_mc(const Distribution& d, RngStream& rng) {
    const auto mc = mc_moments(d, 1'000'000, rng);
    CHECK(std::fabs(d.mean() - mc.mean) < 4 * mc.mean_se + 1e-12);
    CHECK(std::fabs(d.variance() - mc.var) < 4 * mc.var_se + 1e-12);
}

}  // namespace

TEST_SUITE("stochastic") {

TEST_CASE("rng reproducibility and stream independence") {
    RngStream a(42, 7);
    RngStream b(42, 7);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());

    // distinct stream ids give uncorrelated outputs
    RngStream s0(42, 0);
    RngStream s1(42, 1);
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    const int n = 100'000;
    for (int i = 0; i < n; ++i) {
        const double x = s0.next_unit();
        const double y = s1.next_unit();
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
    }
    const double mx = sx / n, my = sy / n;
    const double r = (sxy / n - mx * my) /
                     std::sqrt((sxx / n - mx * mx) * (syy / n - my * my));
    CHECK(std::fabs(r) < 0.01);

    // unit draws never hit zero
    RngStream u(1, 0);
    for (int i = 0; i < 10'000; ++i) CHECK(u.next_unit() > 0.0);
}

TEST_CASE("point mass sampling is exact") {
    RngStream rng(1);
    const Distribution d = Distribution::point_mass(3.0);
    for (int i = 0; i < 100; ++i) CHECK(d.sample(rng) == 3.0);
    CHECK(d.mean() == 3.0);
    CHECK(d.variance() == 0.0);
}

TEST_CASE("analytic moments match monte carlo for every kind") {
    RngStream rng(2024, 1);
    check_moments_against_mc(Distribution::exponential(2.0), rng);
    check_moments_against_mc(Distribution::erlang(3, 1.5), rng);
    check_moments_against_mc(Distribution::hypoexponential({1.0, 2.0}), rng);
    check_moments_against_mc(Distribution::point_mass(0.7), rng);
    check_moments_against_mc(
        Distribution::mixture({0.25, 0.5, 0.25},
                              {Distribution::point_mass(0),
                               Distribution::exponential(0.5),
                               Distribution::erlang(2, 0.5)}),
        rng);
}

TEST_CASE("hypoexponential mean via sampling") {
    // mean of a (1, 2) stage sum is 1.5
    RngStream rng(7, 3);
    const auto mc = mc_moments(Distribution::hypoexponential({1.0, 2.0}),
                               1'000'000, rng);
    CHECK(std::fabs(mc.mean - 1.5) < 4 * mc.mean_se);
}

TEST_CASE("transform values") {
    CHECK(Distribution::exponential(1.0).lst(0.0) == 1.0);
    CHECK(Distribution::exponential(2.0).lst(2.0) == doctest::Approx(0.5));
    // equal-rate pair canonicalizes to a two-stage erlang
    const Distribution h = Distribution::hypoexponential({1.0, 1.0});
    CHECK(h.kind() == Distribution::Kind::Erlang);
    CHECK(h.lst(1.0) == doctest::Approx(0.25));
    // transforms at zero are exactly one for every kind
    for (const auto& d :
         {Distribution::exponential(3.0), Distribution::erlang(4, 2.0),
          Distribution::hypoexponential({1.0, 3.0}),
          Distribution::point_mass(2.0),
          Distribution::mixture({0.5, 0.5}, {Distribution::point_mass(1),
                                             Distribution::exponential(1)})}) {
        CHECK(d.lst(0.0) == 1.0);
    }
}

TEST_CASE("construction rejects invalid parameters") {
    CHECK_THROWS_AS(Distribution::exponential(0.0), DomainError);
    CHECK_THROWS_AS(Distribution::exponential(-1.0), DomainError);
    CHECK_THROWS_AS(Distribution::point_mass(-0.1), DomainError);
    CHECK_THROWS_AS(Distribution::hypoexponential({}), DomainError);
    CHECK_THROWS_AS(
        Distribution::mixture({0.5, 0.4}, {Distribution::point_mass(0),
                                           Distribution::point_mass(1)}),
        DomainError);
    CHECK_THROWS_AS(
        Distribution::mixture({1.5, -0.5}, {Distribution::point_mass(0),
                                            Distribution::point_mass(1)}),
        DomainError);
}

TEST_CASE("canonicalization") {
    CHECK(Distribution::hypoexponential({2.0}).kind() ==
          Distribution::Kind::Exponential);
    CHECK(Distribution::hypoexponential({2.0, 2.0, 2.0}).kind() ==
          Distribution::Kind::Erlang);
    CHECK(Distribution::erlang(1, 2.0).kind() ==
          Distribution::Kind::Exponential);
    // zero-weight components drop; a single survivor unwraps
    const Distribution m = Distribution::mixture(
        {1.0, 0.0}, {Distribution::point_mass(0), Distribution::exponential(1)});
    CHECK(m.kind() == Distribution::Kind::PointMass);
}

TEST_CASE("expression parsing round-trips") {
    const std::vector<std::string> exprs = {
        "exponential(2)",
        "erlang(2,1.5)",
        "hypoexponential(1,2,3.5)",
        "pointmass(3)",
        "mixture(0.25:pointmass(0); 0.5:exponential(1); 0.25:erlang(2,1))",
    };
    for (const auto& e : exprs) {
        const Distribution d = Distribution::parse(e);
        CHECK(Distribution::parse(d.to_string()) == d);
    }
    CHECK(Distribution::parse("zero") == Distribution::point_mass(0));
    CHECK_THROWS_AS(Distribution::parse("weibull(1)"), UsageError);
    CHECK_THROWS_AS(Distribution::parse("exponential(two)"), UsageError);
}

TEST_CASE("probability that an exponential exceeds an independent law") {
    // equals the transform of the other law at the exponential's rate
    CHECK(prob_exp_exceeds(1.0, Distribution::exponential(1.0)) ==
          doctest::Approx(0.5));
    CHECK(prob_exp_exceeds(1.0, Distribution::hypoexponential({1.0, 2.0})) ==
          doctest::Approx(1.0 / 3.0));
    CHECK(prob_exp_exceeds(2.0, Distribution::exponential(1.0)) ==
          doctest::Approx(1.0 / 3.0));

    // monte carlo confirmation at four binomial standard errors
    RngStream rng(5, 0);
    const Distribution y = Distribution::hypoexponential({1.0, 2.0});
    const double p = prob_exp_exceeds(1.0, y);
    int hits = 0;
    const int n = 1'000'000;
    for (int i = 0; i < n; ++i)
        if (rng.exponential(1.0) > y.sample(rng)) ++hits;
    const double se = std::sqrt(p * (1 - p) / n);
    CHECK(std::fabs(static_cast<double>(hits) / n - p) < 4 * se);
}

TEST_CASE("exponential race conditionals") {
    SUBCASE("symmetric race") {
        CHECK(exp_race_conditionals(1.0, 1.0).p_win == doctest::Approx(0.5));
    }
    const auto race = exp_race_conditionals(1.0, 2.0);
    CHECK(race.p_win == doctest::Approx(1.0 / 3.0));
    CHECK(race.gap_given_win == Distribution::exponential(2.0));
    CHECK(race.loser_given_win.mean() == doctest::Approx(1.0 / 3.0));
    // the surviving variable decomposes into the race minimum plus the
    // memoryless overshoot
    CHECK(race.winner_given_win.mean() ==
          doctest::Approx(1.0 / 3.0 + 1.0 / 2.0));

    // conditional monte carlo for the loser's mean
    RngStream rng(11, 0);
    double sum = 0;
    int kept = 0;
    while (kept < 200'000) {
        const double x1 = rng.exponential(1.0);
        const double x2 = rng.exponential(2.0);
        if (x2 > x1) {
            sum += x1;
            ++kept;
        }
    }
    CHECK(sum / kept == doctest::Approx(1.0 / 3.0).epsilon(0.01));
}

TEST_CASE("hypoexponential-vs-exponential conditionals") {
    const HypoexpVsExpConditionals laws(1.0, 1.0, 2.0);
    CHECK(laws.p_exceed() == doctest::Approx(2.0 / 3.0));
    CHECK(laws.mixing_weight() == doctest::Approx(1.5));
    CHECK_THROWS_AS(HypoexpVsExpConditionals(1.0, 2.0, 2.0), DomainError);

    // densities integrate to one under adaptive quadrature
    const double mass_z =
        integrate([&](double z) { return laws.overshoot_pdf(z); }, 0.0, 60.0);
    CHECK(mass_z == doctest::Approx(1.0).epsilon(1e-9));
    const double mass_x = integrate(
        [&](double x) { return laws.conditional_x_pdf(x); }, 0.0, 60.0);
    CHECK(mass_x == doctest::Approx(1.0).epsilon(1e-9));
    // the joint density marginalizes back to the overshoot density
    const double joint_mass = integrate(
        [&](double z) {
            return integrate([&](double x) { return laws.joint_pdf(z, x); },
                             0.0, 60.0, 1e-10);
        },
        0.0, 60.0, 1e-9);
    CHECK(joint_mass == doctest::Approx(1.0).epsilon(1e-7));

    // signed mixing weight never produces a negative density
    for (int i = 0; i < 10'000; ++i) {
        const double z = 20.0 * i / 9999.0;
        CHECK(laws.overshoot_pdf(z) >= 0.0);
        CHECK(laws.conditional_x_pdf(z) >= 0.0);
    }
}

TEST_CASE("race conditional laws agree with rejection sampling via ks") {
    RngStream rng(23, 0);
    const auto race = exp_race_conditionals(1.0, 2.0);
    std::vector<double> losers, gaps, winners;
    while (winners.size() < 50'000) {
        const double x1 = rng.exponential(1.0);
        const double x2 = rng.exponential(2.0);
        if (x2 > x1) {
            losers.push_back(x1);
            gaps.push_back(x2 - x1);
            winners.push_back(x2);
        }
    }
    CHECK(ks_test(losers, [&](double x) {
              return race.loser_given_win.cdf(x);
          }).pass(0.01));
    CHECK(ks_test(gaps, [&](double x) {
              return race.gap_given_win.cdf(x);
          }).pass(0.01));
    CHECK(ks_test(winners, [&](double x) {
              return race.winner_given_win.cdf(x);
          }).pass(0.01));
}

}  // TEST_SUITE
