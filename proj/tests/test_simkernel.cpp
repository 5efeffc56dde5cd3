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
#include <algorithm>
#include <cmath>
#include <cstring>
#include <vector>

#include "analytic/formulas.hpp"
#include "doctest.h"
#include "simkernel/runners.hpp"
#include "support/errors.hpp"
#include "support/numerics.hpp"
#include "support/stats.hpp"

using namespace aoilab;
using namespace aoilab::sim;

namespace {

RunOptions small_run(std::uint64_t departures, std::uint64_t warmup,
                     bool log = false) {
    RunOptions o;
    o.departures = departures;
    o.warmup = warmup;
    o.collect.log = log;
    return o;
}

// Piecewise-linear age path reconstructed from a delivered-packet log: the
// age is departure - generation at each delivery and grows with unit slope
// in between.
double age_at(const std::vector<PacketRecord>& log, double t) {
    // last delivery at or before t
    auto it = std::upper_bound(
        log.begin(), log.end(), t,
        [](double value, const PacketRecord& p) { return value < p.departure; });
    REQUIRE(it != log.begin());
    const PacketRecord& last = *(it - 1);
    return (last.departure - last.generation) + (t - last.departure);
}

}  // namespace

TEST_SUITE("simkernel") {

TEST_CASE("accumulated area matches trapezoid integration of the path") {
    RngStream rng(31, 0);
    auto run = run_single_node(NodeModel::fcfs(2.0), 1.0,
                               AgeFeed{Distribution::exponential(1.0)},
                               small_run(140, 100, true), rng);
    const auto& log = run.log;
    REQUIRE(log.size() == 40);
    const double t0 = log.front().departure;
    const double t1 = log.back().departure;
    const int n = 10'000;
    const double h = (t1 - t0) / n;
    double integral = 0;
    for (int i = 0; i < n; ++i) {
        const double a = t0 + i * h;
        const double b = a + h;
        integral += 0.5 * (age_at(log, a) + age_at(log, b)) * h;
    }
    const double trapezoid_estimate = integral / (t1 - t0);
    CHECK(run.stats.aaoi ==
          doctest::Approx(trapezoid_estimate).epsilon(1e-3));
}

TEST_CASE("flow conservation is exact") {
    RngStream rng(32, 0);
    const auto run = run_single_node(NodeModel::fcfs(2.0), 1.0, AgeFeed{},
                                     small_run(50'000, 1'000), rng);
    // effective rate and the inverse mean gap come from the same window
    const double mean_y = run.stats.elapsed /
                          static_cast<double>(run.stats.delivered - 1);
    CHECK(std::fabs(run.stats.eff_rate - 1.0 / mean_y) <
          1e-9 * run.stats.eff_rate);
    // delivered count over elapsed time agrees up to the fencepost
    CHECK(static_cast<double>(run.stats.delivered) / run.stats.elapsed ==
          doctest::Approx(run.stats.eff_rate)
              .epsilon(2.0 / static_cast<double>(run.stats.delivered)));
}

TEST_CASE("fcfs log satisfies the service-start recursion exactly") {
    RngStream rng(33, 0);
    const auto run = run_single_node(NodeModel::fcfs(2.0), 1.0, AgeFeed{},
                                     small_run(5'000, 100, true), rng);
    const auto& log = run.log;
    for (std::size_t i = 1; i < log.size(); ++i) {
        // bitwise: the server starts at the later of free time and arrival
        CHECK(log[i].service_start ==
              std::max(log[i - 1].departure, log[i].arrival));
        // inter-departure = service + idle decomposition
        const double y = log[i].departure - log[i - 1].departure;
        const double service = log[i].departure - log[i].service_start;
        const double idle =
            std::max(0.0, log[i].arrival - log[i - 1].departure);
        CHECK(y == doctest::Approx(service + idle).epsilon(1e-12));
    }
}

TEST_CASE("stable fcfs inter-departures look poisson") {
    RngStream rng(34, 0);
    RunOptions opts = small_run(120'000, 10'000);
    opts.collect.max_y = 100'000;
    const auto run =
        run_single_node(NodeModel::fcfs(2.0), 1.0, AgeFeed{}, opts, rng);
    REQUIRE(run.interdepartures.size() == 100'000);
    const auto ks = ks_test(run.interdepartures, [](double x) {
        return x < 0 ? 0.0 : -std::expm1(-1.0 * x);
    });
    CHECK(ks.pass(0.01));
}

TEST_CASE("identical seeds reproduce runs bit for bit") {
    RngStream a(35, 4);
    RngStream b(35, 4);
    const auto r1 = run_single_node(NodeModel::fcfs(2.0), 1.0,
                                    AgeFeed{Distribution::exponential(1.0)},
                                    small_run(20'000, 1'000), a);
    const auto r2 = run_single_node(NodeModel::fcfs(2.0), 1.0,
                                    AgeFeed{Distribution::exponential(1.0)},
                                    small_run(20'000, 1'000), b);
    CHECK(std::memcmp(&r1.stats, &r2.stats, sizeof(RunStatistics)) == 0);
    // a different stream produces different numbers
    RngStream c(35, 5);
    const auto r3 = run_single_node(NodeModel::fcfs(2.0), 1.0,
                                    AgeFeed{Distribution::exponential(1.0)},
                                    small_run(20'000, 1'000), c);
    CHECK(r3.stats.aaoi != r1.stats.aaoi);
}

TEST_CASE("replication fan-out is schedule independent") {
    auto make = [&](unsigned threads) {
        return run_replications(
            8, 99, threads,
            [](std::uint32_t, RngStream& rng) {
                return run_single_node(NodeModel::fcfs(2.0), 1.0, AgeFeed{},
                                       small_run(5'000, 500), rng);
            });
    };
    const auto serial = make(1);
    const auto parallel = make(2);
    for (std::size_t i = 0; i < serial.size(); ++i)
        CHECK(std::memcmp(&serial[i].stats, &parallel[i].stats,
                          sizeof(RunStatistics)) == 0);
}

TEST_CASE("constant feed shifts the age by exactly the delay") {
    RngStream rng(36, 0);
    const auto run = run_single_node(NodeModel::fcfs(2.0), 1.0,
                                     AgeFeed{Distribution::point_mass(2.0)},
                                     small_run(400'000, 20'000), rng);
    CHECK(run.stats.mean_age == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(run.stats.sd_age == doctest::Approx(0.0));
    CHECK(run.stats.aaoi ==
          doctest::Approx(analytic::aaoi_mm1_fcfs(1.0, 2.0) + 2.0)
              .epsilon(0.01));
    CHECK(run.stats.far_updates == 0);
}

TEST_CASE("random independent feed produces far updates") {
    RngStream rng(37, 0);
    const auto run = run_single_node(NodeModel::fcfs(2.0), 1.0,
                                     AgeFeed{Distribution::exponential(1.0)},
                                     small_run(200'000, 10'000, true), rng);
    // stamps can arrive out of order, and each inversion raises the age
    CHECK(run.stats.far_rate > 0.2);
    CHECK(run.stats.far_rate < 0.3);
    // recount from the log: a far update is a stamp inversion
    std::uint64_t recount = 0;
    for (std::size_t i = 1; i < run.log.size(); ++i)
        if (run.log[i].generation < run.log[i - 1].generation) ++recount;
    // the log covers the same window, so the counts agree exactly
    CHECK(recount == run.stats.far_updates);
    // equivalent inequality form on the delivered sequence
    std::uint64_t inequality_form = 0;
    for (std::size_t i = 1; i < run.log.size(); ++i) {
        const double x = run.log[i].arrival - run.log[i - 1].arrival;
        if (run.log[i].initial_age > x + run.log[i - 1].initial_age)
            ++inequality_form;
    }
    CHECK(inequality_form == run.stats.far_updates);
}

TEST_CASE("unstable fcfs is refused unless overridden") {
    RngStream rng(38, 0);
    CHECK_THROWS_AS(run_single_node(NodeModel::fcfs(1.0), 2.0, AgeFeed{},
                                    small_run(100, 10), rng),
                    DomainError);
    RunOptions opts = small_run(2'000, 100);
    opts.allow_unstable = true;
    const auto run =
        run_single_node(NodeModel::fcfs(1.0), 2.0, AgeFeed{}, opts, rng);
    CHECK(run.stats.delivered == 1'900);
}

TEST_CASE("degenerate run keeps only one sample and flags the errors") {
    RngStream rng(39, 0);
    const auto run = run_single_node(NodeModel::fcfs(2.0), 1.0, AgeFeed{},
                                     small_run(100, 99), rng);
    CHECK(run.stats.delivered == 1);
    CHECK(std::isnan(run.stats.aaoi));
    CHECK_FALSE(run.stats.se_reliable);
}

TEST_CASE("trace feeds are consumed in order and bounded") {
    RngStream rng(40, 0);
    std::vector<double> trace(3'000, 0.5);
    const auto run = run_single_node(NodeModel::fcfs(2.0), 1.0,
                                     AgeFeed{trace}, small_run(3'000, 500),
                                     rng);
    CHECK(run.stats.mean_age == doctest::Approx(0.5));
    RngStream rng2(40, 1);
    std::vector<double> short_trace(10, 0.5);
    CHECK_THROWS_AS(run_single_node(NodeModel::fcfs(2.0), 1.0,
                                    AgeFeed{short_trace},
                                    small_run(3'000, 500), rng2),
                    DomainError);
}

TEST_CASE("single-stage tandem equals the single queue bit for bit") {
    RngStream a(41, 2);
    RngStream b(41, 2);
    const double rates[] = {2.0};
    const auto tandem = run_tandem(rates, 1.0, small_run(20'000, 1'000), a);
    const auto single = run_single_node(NodeModel::fcfs(2.0), 1.0, AgeFeed{},
                                        small_run(20'000, 1'000), b);
    CHECK(std::memcmp(&tandem.stats, &single.stats, sizeof(RunStatistics)) ==
          0);
}

TEST_CASE("tandem age accumulates upstream system times") {
    RngStream rng(42, 0);
    const double rates[] = {2.0, 2.0};
    const auto run = run_tandem(rates, 1.0, small_run(400'000, 20'000), rng);
    // mean initial age at the last queue is the upstream mean system time
    CHECK(run.stats.mean_age == doctest::Approx(1.0).epsilon(0.02));
    CHECK(run.stats.aaoi ==
          doctest::Approx(analytic::aaoi_tandem_two(1.0, 2.0, 2.0))
              .epsilon(0.01));
    // in-order delivery keeps stamps monotone
    CHECK(run.stats.far_updates == 0);
    // upstream congestion shortens later inter-departures
    CHECK(run.stats.correlation < 0.0);
}

TEST_CASE("tandem log records per-node arrivals") {
    RngStream rng(43, 0);
    const double rates[] = {3.0, 2.0};
    const auto run = run_tandem(rates, 1.0, small_run(600, 100, true), rng);
    for (const auto& p : run.log) {
        REQUIRE(p.node_arrivals.size() == 2);
        CHECK(p.node_arrivals[0] == p.generation);
        CHECK(p.node_arrivals[1] == p.arrival);
        CHECK(p.generation <= p.arrival);
        CHECK(p.arrival <= p.service_start);
        CHECK(p.service_start <= p.departure);
        CHECK(p.initial_age == p.arrival - p.generation);
    }
}

TEST_CASE("standalone blocking node matches the single-capacity age") {
    RngStream rng(52, 0);
    const auto run = run_single_node(NodeModel::blocking(2.0), 1.0, AgeFeed{},
                                     small_run(420'000, 20'000), rng);
    CHECK(run.stats.aaoi ==
          doctest::Approx(analytic::aaoi_mm11_nonpreemptive(1.0, 2.0))
              .epsilon(0.01));
    // losses: a fraction rho/(1+rho) of arrivals finds the server busy
    const double loss = static_cast<double>(run.stats.blocked) /
                        (run.stats.blocked + 420'000.0);
    CHECK(loss == doctest::Approx(1.0 / 3.0).epsilon(0.02));
    // admitted packets see an idle server, so they never wait
    CHECK(run.stats.eff_rate == doctest::Approx(2.0 / 3.0).epsilon(0.01));
}

TEST_CASE("hetero tandem blocks, feeds two-stage gaps, and never inverts") {
    RngStream rng(44, 0);
    RunOptions opts = small_run(1'050'000, 50'000);
    opts.collect.max_feed = 50'000;
    const auto run = run_hetero_tandem(1.0, 1.0, 2.0, opts, rng);
    CHECK(run.stats.blocked > 0);
    CHECK(run.stats.far_updates == 0);
    CHECK(run.stats.aaoi ==
          doctest::Approx(analytic::tandem_hetero_aaoi(1.0, 1.0, 2.0))
              .epsilon(0.01));
    // age entering the second queue is the first queue's service time
    CHECK(run.stats.mean_age == doctest::Approx(1.0).epsilon(0.02));
    // admitted arrivals at the second queue form idle + service gaps
    const Distribution feed_law = Distribution::hypoexponential({1.0, 1.0});
    const auto ks = ks_test(run.feed_interarrivals,
                            [&](double x) { return feed_law.cdf(x); });
    CHECK(ks.pass(0.01));
    // delivery rate equals the admitted rate lambda*gamma/(lambda+gamma)
    CHECK(run.stats.eff_rate == doctest::Approx(0.5).epsilon(0.01));
    CHECK_THROWS_AS(
        run_hetero_tandem(2.0, 2.0, 1.0, small_run(100, 10), rng),
        DomainError);
}

TEST_CASE("zero-wait channel resets only on successes") {
    RngStream rng(45, 0);
    SUBCASE("error-free case is the textbook zero-wait age") {
        const auto run =
            run_zero_wait(0.0, 1.0, small_run(400'000, 20'000), rng);
        CHECK(run.stats.aaoi == doctest::Approx(2.0).epsilon(0.01));
        CHECK(run.stats.mean_age == 0.0);
    }
    SUBCASE("equivalent initial ages reproduce the erasure penalty") {
        RunOptions opts = small_run(400'000, 20'000);
        opts.collect.max_ages = 10'000;
        opts.collect.age_stride = 16;
        const auto run = run_zero_wait(0.5, 1.0, opts, rng);
        CHECK(run.stats.aaoi == doctest::Approx(4.0).epsilon(0.01));
        // every delivery is one service time: rate mu
        CHECK(run.stats.eff_rate == doctest::Approx(1.0).epsilon(0.01));
        CHECK(run.stats.far_updates == 0);
        // thinned equivalent ages follow the three-part mixture
        const Distribution mix = analytic::zw_initial_age_mixture(0.5, 1.0);
        const auto ks = ks_test(
            run.initial_ages, [&](double x) { return mix.cdf(x); },
            [&](double x) { return mix.cdf_left(x); });
        CHECK(ks.pass(0.01));
        // the exact-zero atom appears with the fresh-success frequency
        const auto zeros = std::count(run.initial_ages.begin(),
                                      run.initial_ages.end(), 0.0);
        CHECK(static_cast<double>(zeros) / run.initial_ages.size() ==
              doctest::Approx(0.25).epsilon(0.08));
    }
}

TEST_CASE("retrial queue matches its steady state") {
    RngStream rng(46, 0);
    const auto run = run_retrial(1.0, 1.0, 4.0, small_run(400'000, 20'000),
                                 rng);
    const auto ss = analytic::retrial_steady_state(1.0, 1.0, 4.0);
    CHECK(run.occupancy.p_idle(0) == doctest::Approx(ss.p_idle(0)).epsilon(0.02));
    CHECK(run.occupancy.p_busy(0) == doctest::Approx(ss.p_busy(0)).epsilon(0.05));
    CHECK(run.occupancy.busy_fraction() ==
          doctest::Approx(ss.rho).epsilon(0.02));
    // mean time in orbit per delivered update
    const auto om = analytic::retrial_orbit_metrics(1.0, 1.0, 4.0);
    CHECK(run.stats.mean_age == doctest::Approx(om.w_orbit).epsilon(0.03));
    // out-of-order orbit departures produce far updates
    CHECK(run.stats.far_updates > 0);
    CHECK_THROWS_WITH_AS(
        run_retrial(1.0, 0.2, 2.0, small_run(100, 10), rng),
        doctest::Contains("rho < pi"), DomainError);
}

TEST_CASE("retrial zero-age decomposition part matches its closed form") {
    // The idle period after a departure is Exp(lambda) when the orbit is
    // empty (a fraction 1 - rho/pi of departures, by flux) and
    // Exp(lambda + theta) otherwise, and conditioning the departing
    // packet's service on leaving an empty orbit thins it by the no-arrival
    // factor. That yields an elementary closed form for the zero-age part
    // lambda * (E[Y^2]/2 + E[Y_{n+1} T_n]) of the age decomposition, which
    // pins down the simulator's idle-structure, pairing, and area
    // accounting all at once.
    const double lambda = 1.0, theta = 1.0, mu = 4.0;
    const double x = (lambda / mu) / (theta / (lambda + theta));
    const double both = lambda + theta;
    const double mean_idle = (1 - x) / lambda + x / both;
    const double m2_idle =
        2 * (1 - x) / (lambda * lambda) + 2 * x / (both * both);
    const double m2_y = m2_idle + 2 * mean_idle / mu + 2 / (mu * mu);
    // E[S 1{empty orbit at departure}] = (1-x)/(lambda+mu)
    const double s_empty = (1 - x) / (lambda + mu);
    const double idle_service =
        s_empty / lambda + (1 / mu - s_empty) / both;
    const double cross_yt = idle_service + 1 / (mu * mu);
    const double zero_age_part = lambda * (m2_y / 2 + cross_yt);
    CHECK(zero_age_part == doctest::Approx(1.1125).epsilon(1e-12));

    SampleStats part;
    for (std::uint32_t rep = 0; rep < 10; ++rep) {
        RngStream rng(62, rep);
        const auto run =
            run_retrial(lambda, theta, mu, small_run(210'000, 10'000), rng);
        part.add(run.stats.aaoi -
                 run.stats.eff_rate * run.stats.cross_moment);
    }
    CHECK(std::fabs(part.mean() - zero_age_part) < 3 * part.se());
    // and it is far from the single-capacity baseline formula
    CHECK(std::fabs(part.mean() -
                    analytic::aaoi_mm11_nonpreemptive(lambda + theta, mu)) >
          20 * part.se());
}

TEST_CASE("retrial simulator agrees with an independent implementation") {
    // Second route: three pre-scheduled event streams (primaries, an
    // always-ticking retrial clock whose attempts are no-ops when they
    // cannot admit, and departures fixed at service start), with its own
    // inline age-area accounting. Attempt no-ops are harmless by
    // memorylessness, so the process law is identical while the code path
    // and random-number consumption are entirely different.
    const double lambda = 1.0, theta = 1.0, mu = 4.0;
    const std::uint64_t departures = 2'000'000, warmup = 50'000;

    RngStream rng(60, 0);
    double next_primary = rng.exponential(lambda);
    double next_attempt = rng.exponential(theta);
    double next_departure = 0;
    bool busy = false;
    double gen_in_service = 0;
    std::vector<double> orbit;
    std::uint64_t delivered = 0;
    double busy_time = 0, last_event = 0, first_dep = 0, prev_dep = 0,
           prev_age_after = 0, area = 0, age_sum = 0;
    while (delivered < departures) {
        double t = std::min(next_primary, next_attempt);
        if (busy) t = std::min(t, next_departure);
        if (delivered >= warmup && busy) busy_time += t - last_event;
        last_event = t;
        if (busy && t == next_departure) {
            ++delivered;
            busy = false;
            if (delivered > warmup) {
                const double age_after = t - gen_in_service;
                if (delivered == warmup + 1) {
                    first_dep = t;
                } else {
                    const double y = t - prev_dep;
                    area += 0.5 * y * y + y * prev_age_after;
                }
                prev_dep = t;
                prev_age_after = age_after;
            }
        } else if (t == next_primary) {
            next_primary = t + rng.exponential(lambda);
            if (busy) {
                orbit.push_back(t);
            } else {
                // direct admits contribute zero to the age sum
                busy = true;
                gen_in_service = t;
                next_departure = t + rng.exponential(mu);
            }
        } else {  // retrial attempt
            next_attempt = t + rng.exponential(theta);
            if (!busy && !orbit.empty()) {
                const std::size_t idx = rng.next_index(orbit.size());
                if (delivered >= warmup) age_sum += t - orbit[idx];
                gen_in_service = orbit[idx];
                orbit[idx] = orbit.back();
                orbit.pop_back();
                busy = true;
                next_departure = t + rng.exponential(mu);
            }
        }
    }
    const double alt_aaoi = area / (prev_dep - first_dep);
    const double alt_mean_age =
        age_sum / static_cast<double>(departures - warmup);
    const double alt_busy = busy_time / (prev_dep - first_dep);

    RngStream rng2(61, 0);
    RunOptions opts = small_run(departures, warmup);
    const auto main_run = run_retrial(lambda, theta, mu, opts, rng2);

    CHECK(alt_aaoi == doctest::Approx(main_run.stats.aaoi).epsilon(0.01));
    CHECK(alt_mean_age ==
          doctest::Approx(main_run.stats.mean_age).epsilon(0.02));
    CHECK(alt_busy ==
          doctest::Approx(main_run.occupancy.busy_fraction()).epsilon(0.02));
    // both implementations sit far from the single-capacity baseline value,
    // consistently with each other
    CHECK(alt_aaoi > 1.7);
    CHECK(alt_aaoi < 1.9);
}

TEST_CASE("node dispatch guards self-feeding models") {
    RngStream rng(47, 0);
    CHECK_THROWS_AS(
        run_single_node(NodeModel::zero_wait(1.0, 0.1), 1.0,
                        AgeFeed{Distribution::point_mass(1)},
                        small_run(100, 10), rng),
        DomainError);
    CHECK_THROWS_AS(
        run_single_node(NodeModel::retrial(4.0, 1.0), 1.0,
                        AgeFeed{Distribution::point_mass(1)},
                        small_run(100, 10), rng),
        DomainError);
    // but the dispatch itself works with a zero feed
    const auto run = run_single_node(NodeModel::zero_wait(1.0, 0.0), 1.0,
                                     AgeFeed{}, small_run(5'000, 500), rng);
    CHECK(run.stats.delivered == 4'500);
}

TEST_CASE("estimated decomposition terms use the delayed pairing") {
    SUBCASE("constant ages") {
        std::vector<PacketRecord> log;
        double t = 0;
        for (int i = 0; i < 100; ++i) {
            t += 1.0;
            log.push_back({static_cast<std::uint64_t>(i), t - 0.5, t, t,
                           t + 0.25, 0.5, {}});
        }
        // departures must be shifted to stay ordered
        for (std::size_t i = 0; i < log.size(); ++i)
            log[i].departure = log[i].arrival + 0.25;
        const auto terms = estimate_decomposition_terms(log);
        CHECK(terms.mean_initial_age == doctest::Approx(0.5));
        CHECK(terms.sd_initial_age == doctest::Approx(0.0));
        CHECK(terms.cross_moment == doctest::Approx(0.5 * 1.0));
        CHECK(terms.cv_interdeparture == doctest::Approx(0.0));
    }
    SUBCASE("zero ages have zero cross moment") {
        std::vector<PacketRecord> log;
        RngStream rng(48, 0);
        double t = 0;
        for (int i = 0; i < 100; ++i) {
            t += rng.exponential(1.0);
            log.push_back({static_cast<std::uint64_t>(i), t, t, t, t + 0.1,
                           0.0, {}});
        }
        CHECK(estimate_decomposition_terms(log).cross_moment == 0.0);
    }
    SUBCASE("too little data is an error") {
        std::vector<PacketRecord> log(1);
        CHECK_THROWS_AS(estimate_decomposition_terms(log), DomainError);
    }
    SUBCASE("runner statistics and log-based estimates agree") {
        RngStream rng(49, 0);
        const double rates[] = {2.0, 2.0};
        const auto run =
            run_tandem(rates, 1.0, small_run(30'000, 1'000, true), rng);
        const auto terms = estimate_decomposition_terms(run.log);
        CHECK(terms.eff_rate == doctest::Approx(run.stats.eff_rate));
        CHECK(terms.cross_moment == doctest::Approx(run.stats.cross_moment));
        CHECK(terms.correlation == doctest::Approx(run.stats.correlation));
    }
}

TEST_CASE("traffic-regime statistics for an independent feed") {
    // near saturation the inter-departures converge to service times:
    // unit coefficient of variation, no correlation with the feed
    SUBCASE("heavy traffic") {
        RngStream rng(50, 0);
        const auto run = run_single_node(
            NodeModel::fcfs(1.0), 0.999, AgeFeed{Distribution::exponential(1.0)},
            small_run(120'000, 20'000), rng);
        CHECK(std::fabs(run.stats.correlation) < 0.05);
        CHECK(run.stats.cv_y == doctest::Approx(1.0).epsilon(0.05));
        const double correction = run.stats.eff_rate * run.stats.cross_moment;
        CHECK(std::fabs(correction - run.stats.mean_age) <
              3 * (run.stats.se_cross / run.stats.cross_moment) * correction +
                  0.05);
    }
    // near-idle servers leave the correction at the mean feed age
    SUBCASE("light traffic") {
        RngStream rng(51, 0);
        const auto run = run_single_node(
            NodeModel::fcfs(1.0), 0.01, AgeFeed{Distribution::exponential(1.0)},
            small_run(120'000, 20'000), rng);
        CHECK(run.stats.cv_y == doctest::Approx(1.0).epsilon(0.05));
        const double correction = run.stats.eff_rate * run.stats.cross_moment;
        const double se = run.stats.eff_rate * run.stats.se_cross;
        CHECK(std::fabs(correction - 1.0) < 3 * se + 3 * run.stats.se_mean_age);
    }
}

TEST_CASE("default warmup policy") {
    CHECK(default_warmup(1'000'000) == 50'000);
    CHECK(default_warmup(100'000) == 10'000);
    CHECK(default_warmup(20'000) == 10'000);
    CHECK(default_warmup(10'000) == 5'000);
    CHECK(default_warmup(100) == 50);
}

}  // TEST_SUITE
