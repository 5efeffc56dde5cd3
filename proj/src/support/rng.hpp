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

#include <cmath>
#include <cstdint>

namespace aoilab {

/// Splittable counter-style generator (SplitMix64 core). A (seed, stream_id)
/// pair fully determines the sequence, so parallel replications get
/// independent streams without any shared state. Single-owner mutable; one
/// stream per replication, never shared across threads.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : seed_(seed), stream_(stream_id) {
        state_ = mix(seed ^ mix(stream_id * 0xD2B74407B1CE6E93ULL + 0x8BB84B93962EACC9ULL));
        // Distinct odd increment per stream keeps stream orbits disjoint.
        increment_ = mix(stream_id ^ mix(seed + 0x2545F4914F6CDD1DULL)) | 1ULL;
    }

    std::uint64_t next_u64() {
        state_ += increment_;
        return mix(state_);
    }

    /// Uniform on (0, 1]; never returns 0, so -log() is always finite.
    double next_unit() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    double exponential(double rate) { return -std::log(next_unit()) / rate; }

    /// Uniform index in [0, n). Requires n >= 1.
    std::size_t next_index(std::size_t n) {
        auto idx = static_cast<std::size_t>(next_unit() * static_cast<double>(n));
        return idx >= n ? n - 1 : idx;
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t state_;
    std::uint64_t increment_;
};

}  // namespace aoilab
