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

#include <cstdint>
#include <span>
#include <vector>

namespace aoilab::sim {

/// Timeline of one delivered packet. For multi-queue systems the arrival and
/// initial age refer to the final queue; generation is the original stamp.
struct PacketRecord {
    std::uint64_t id = 0;
    double generation = 0;
    double arrival = 0;
    double service_start = 0;
    double departure = 0;
    double initial_age = 0;  // arrival - generation
    std::vector<double> node_arrivals;  // per-node arrivals (tandems, logged runs)
};

struct RunStatistics {
    double aaoi = 0;          // time-average age over the observation window
    double eff_rate = 0;      // deliveries per unit time (inverse mean Y)
    double cross_moment = 0;  // mean of Y_n * A_{n-1}
    double correlation = 0;   // sample correlation of (Y_n, A_{n-1})
    double cv_y = 0;          // sd(Y) / mean(Y)
    double mean_age = 0;      // mean initial age over delivered packets
    double sd_age = 0;
    double far_rate = 0;      // fraction of deliveries that raised the age
    double se_aaoi = 0;
    double se_eff_rate = 0;
    double se_cross = 0;
    double se_mean_age = 0;
    double elapsed = 0;  // first to last post-warmup departure
    std::uint64_t delivered = 0;
    std::uint64_t blocked = 0;
    std::uint64_t far_updates = 0;
    bool se_reliable = false;  // true when >= 20 complete batches
};

/// Streaming accumulator over the post-warmup delivered sequence, in
/// departure order. Tracks the exact piecewise-linear age area per delivery
/// (a triangle on the inter-departure gap plus the rectangle under the age
/// held since the previous delivery) and the (Y_n, A_{n-1}) pairing of
/// inter-departure times with the previous packet's initial age. Standard
/// errors come from 20 equal batches of consecutive gaps.
class DeliveryStats {
public:
    explicit DeliveryStats(std::uint64_t expected_deliveries);

    void add(double departure, double generation, double initial_age);

    RunStatistics finalize() const;

    std::uint64_t delivered() const { return delivered_; }
    double area() const { return area_; }

private:
    void close_batch();

    std::uint64_t expected_;
    std::uint64_t batch_len_;  // gaps per batch

    bool have_first_ = false;
    double first_departure_ = 0;
    double prev_departure_ = 0;
    double prev_generation_ = 0;
    double prev_initial_age_ = 0;
    double prev_age_after_ = 0;  // age at the monitor just after last delivery

    std::uint64_t delivered_ = 0;
    std::uint64_t far_updates_ = 0;
    double area_ = 0;

    // pair sums over (Y_n, A_{n-1})
    std::uint64_t pairs_ = 0;
    double sum_y_ = 0, sum_yy_ = 0, sum_a_ = 0, sum_aa_ = 0, sum_ya_ = 0;

    // initial ages over all delivered packets
    double sum_age_all_ = 0, sum_age_all_sq_ = 0;

    // current batch accumulators
    std::uint64_t batch_pairs_ = 0;
    double batch_area_ = 0, batch_span_ = 0, batch_ya_ = 0, batch_a_ = 0;
    std::vector<double> batch_aaoi_, batch_eff_, batch_cross_, batch_mean_age_;
};

/// Statistics a decomposition check needs, estimated from a delivered-packet
/// log with the exact (n, n-1) index pairing.
struct DecompositionTerms {
    double eff_rate = 0;
    double cross_moment = 0;
    double correlation = 0;
    double cv_interdeparture = 0;
    double mean_initial_age = 0;
    double sd_initial_age = 0;
};

/// Requires at least two records, in departure order.
DecompositionTerms estimate_decomposition_terms(std::span<const PacketRecord> log);

}  // namespace aoilab::sim
