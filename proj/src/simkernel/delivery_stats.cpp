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
#include "simkernel/delivery_stats.hpp"

#include <cmath>
#include <limits>

#include "support/errors.hpp"
#include "support/stats.hpp"

namespace aoilab::sim {

namespace {

constexpr std::uint64_t kBatches = 20;

double sd_from_sums(double sum, double sum_sq, std::uint64_t n) {
    if (n < 2) return 0.0;
    const double m = sum / static_cast<double>(n);
    const double var =
        (sum_sq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
    return var > 0 ? std::sqrt(var) : 0.0;
}

double batch_se(const std::vector<double>& means) {
    if (means.size() < 2) return 0.0;
    SampleStats s;
    for (double v : means) s.add(v);
    return s.se();
}

}  // namespace

DeliveryStats::DeliveryStats(std::uint64_t expected_deliveries)
    : expected_(expected_deliveries) {
    const std::uint64_t gaps = expected_ > 1 ? expected_ - 1 : 1;
    batch_len_ = gaps / kBatches > 0 ? gaps / kBatches : 1;
}

void DeliveryStats::close_batch() {
    if (batch_pairs_ == 0) return;
    batch_aaoi_.push_back(batch_area_ / batch_span_);
    batch_eff_.push_back(static_cast<double>(batch_pairs_) / batch_span_);
    batch_cross_.push_back(batch_ya_ / static_cast<double>(batch_pairs_));
    batch_mean_age_.push_back(batch_a_ / static_cast<double>(batch_pairs_));
    batch_pairs_ = 0;
    batch_area_ = batch_span_ = batch_ya_ = batch_a_ = 0;
}

void DeliveryStats::add(double departure, double generation,
                        double initial_age) {
    sum_age_all_ += initial_age;
    sum_age_all_sq_ += initial_age * initial_age;
    if (!have_first_) {
        have_first_ = true;
        first_departure_ = departure;
        prev_departure_ = departure;
        prev_generation_ = generation;
        prev_initial_age_ = initial_age;
        prev_age_after_ = departure - generation;
        delivered_ = 1;
        return;
    }
    const double y = departure - prev_departure_;
    const double a_prev = prev_initial_age_;
    area_ += 0.5 * y * y + y * prev_age_after_;
    if (generation < prev_generation_) ++far_updates_;

    ++pairs_;
    sum_y_ += y;
    sum_yy_ += y * y;
    sum_a_ += a_prev;
    sum_aa_ += a_prev * a_prev;
    sum_ya_ += y * a_prev;

    batch_area_ += 0.5 * y * y + y * prev_age_after_;
    batch_span_ += y;
    batch_ya_ += y * a_prev;
    batch_a_ += a_prev;
    if (++batch_pairs_ == batch_len_) close_batch();

    ++delivered_;
    prev_departure_ = departure;
    prev_generation_ = generation;
    prev_initial_age_ = initial_age;
    prev_age_after_ = departure - generation;
}

RunStatistics DeliveryStats::finalize() const {
    RunStatistics out;
    out.delivered = delivered_;
    out.far_updates = far_updates_;
    if (delivered_ == 0) return out;
    out.mean_age = sum_age_all_ / static_cast<double>(delivered_);
    out.sd_age = sd_from_sums(sum_age_all_, sum_age_all_sq_, delivered_);
    if (pairs_ == 0) {
        out.aaoi = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    const double span = prev_departure_ - first_departure_;
    const double m = static_cast<double>(pairs_);
    out.elapsed = span;
    out.aaoi = area_ / span;
    // Defined from the same span so the inverse-mean-gap identity is exact.
    out.eff_rate = m / span;
    out.cross_moment = sum_ya_ / m;
    const double mean_y = sum_y_ / m;
    const double mean_a = sum_a_ / m;
    const double sd_y = sd_from_sums(sum_y_, sum_yy_, pairs_);
    const double sd_a = sd_from_sums(sum_a_, sum_aa_, pairs_);
    out.cv_y = mean_y > 0 ? sd_y / mean_y : 0.0;
    out.correlation = (sd_y > 0 && sd_a > 0)
                          ? (out.cross_moment - mean_y * mean_a) / (sd_y * sd_a)
                          : 0.0;
    out.far_rate = static_cast<double>(far_updates_) / m;

    out.se_aaoi = batch_se(batch_aaoi_);
    out.se_eff_rate = batch_se(batch_eff_);
    out.se_cross = batch_se(batch_cross_);
    out.se_mean_age = batch_se(batch_mean_age_);
    out.se_reliable = batch_aaoi_.size() >= kBatches;
    return out;
}

DecompositionTerms estimate_decomposition_terms(std::span<const PacketRecord> log) {
    require_domain(log.size() >= 2,
                   "estimate_decomposition_terms needs at least two deliveries");
    DeliveryStats acc(log.size());
    double prev = -std::numeric_limits<double>::infinity();
    for (const auto& p : log) {
        require_domain(p.departure >= prev, "log must be in departure order");
        prev = p.departure;
        acc.add(p.departure, p.generation, p.initial_age);
    }
    const RunStatistics s = acc.finalize();
    return {s.eff_rate, s.cross_moment, s.correlation,
            s.cv_y,     s.mean_age,     s.sd_age};
}

}  // namespace aoilab::sim
