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
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "simkernel/delivery_stats.hpp"
#include "stochastic/distribution.hpp"
#include "support/rng.hpp"

namespace aoilab::sim {

struct NodeModel {
    enum class Kind {
        FcfsInfinite,
        SingleCapacityBlocking,
        ZeroWaitErrorChannel,
        RetrialOrbit,
    };
    Kind kind = Kind::FcfsInfinite;
    double mu = 1;
    double alpha = 0;  // erasure probability (zero-wait channel)
    double theta = 0;  // retrial rate (retrial orbit)

    static NodeModel fcfs(double mu);
    static NodeModel blocking(double mu);
    static NodeModel zero_wait(double mu, double alpha);
    static NodeModel retrial(double mu, double theta);
};

/// Source of initial ages for packets entering a node: zero, i.i.d. draws
/// from a distribution, or a finite trace consumed in order.
class AgeFeed {
public:
    AgeFeed() = default;
    explicit AgeFeed(Distribution dist) : dist_(std::move(dist)) {}
    explicit AgeFeed(std::vector<double> trace) : trace_(std::move(trace)) {}

    bool is_zero() const { return !dist_ && trace_.empty(); }
    double next(RngStream& rng);

private:
    std::optional<Distribution> dist_;
    std::vector<double> trace_;
    std::size_t pos_ = 0;
};

struct CollectOptions {
    bool log = false;          // keep per-packet records (post-warmup)
    std::size_t max_y = 0;     // inter-departure samples to keep
    std::size_t max_ages = 0;  // initial-age samples to keep
    std::size_t age_stride = 1;
    std::size_t max_feed = 0;  // final-node inter-arrival samples (tandems)
};

struct RunOptions {
    std::uint64_t departures = 100'000;  // total deliveries to simulate
    std::uint64_t warmup = 10'000;       // leading deliveries discarded
    bool allow_unstable = false;
    CollectOptions collect;
};

/// Default warm-up: max(1e4, 5% of the run), clamped to half the run.
std::uint64_t default_warmup(std::uint64_t departures);

/// Time-weighted occupancy of (server state, orbit size) for retrial runs.
struct RetrialOccupancy {
    static constexpr int kMaxOrbit = 50;
    std::array<double, kMaxOrbit + 1> idle_time{};
    std::array<double, kMaxOrbit + 1> busy_time{};
    double total_time = 0;

    double p_idle(int n) const {
        return total_time > 0 ? idle_time[n] / total_time : 0;
    }
    double p_busy(int n) const {
        return total_time > 0 ? busy_time[n] / total_time : 0;
    }
    double busy_fraction() const;
};

struct RunResult {
    RunStatistics stats;
    std::vector<PacketRecord> log;
    std::vector<double> interdepartures;
    std::vector<double> initial_ages;
    std::vector<double> feed_interarrivals;
    RetrialOccupancy occupancy;
};

/// Single queue fed by Poisson(arrival_rate) packets carrying initial ages
/// from `feed`. Zero-wait and retrial nodes generate their own age process
/// and reject a non-zero feed.
RunResult run_single_node(const NodeModel& node, double arrival_rate,
                          AgeFeed feed, const RunOptions& opts, RngStream& rng);

/// Chain of FCFS infinite-capacity queues; age at each stage accumulates the
/// upstream system times. Statistics are taken at the final node.
RunResult run_tandem(std::span<const double> rates, double arrival_rate,
                     const RunOptions& opts, RngStream& rng);

/// Single-capacity blocking queue (rate gamma, losses counted) feeding an
/// infinite FCFS queue (rate mu).
RunResult run_hetero_tandem(double lambda, double gamma, double mu,
                            const RunOptions& opts, RngStream& rng);

/// Zero-wait source over an erasure channel with error probability alpha;
/// every service completion is a delivery of the equivalent aged-update
/// process, and failures leave the monitor age untouched.
RunResult run_zero_wait(double alpha, double mu, const RunOptions& opts,
                        RngStream& rng);

/// Retrial queue: Poisson(lambda) primaries, a single Poisson(theta) retrial
/// stream that is active while the orbit is nonempty, uniformly random orbit
/// selection, exponential(mu) service.
RunResult run_retrial(double lambda, double theta, double mu,
                      const RunOptions& opts, RngStream& rng);

/// Runs `fn(rep, rng)` for rep = 0..reps-1, each on RngStream(seed,
/// stream_base + rep), optionally across threads. Results are indexed by
/// rep, so aggregation is independent of the schedule.
std::vector<RunResult> run_replications(
    std::uint32_t reps, std::uint64_t seed, unsigned threads,
    const std::function<RunResult(std::uint32_t, RngStream&)>& fn,
    std::uint64_t stream_base = 0);

}  // namespace aoilab::sim
