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

#include <string>
#include <string_view>
#include <vector>

#include "support/rng.hpp"

namespace aoilab {

/// Closed description of a nonnegative random law. Immutable after
/// construction; invalid parameters are rejected at construction time, so
/// sampling never fails. Instances are freely shareable across threads.
class Distribution {
public:
    enum class Kind { Exponential, Erlang, Hypoexponential, Mixture, PointMass };

    static Distribution exponential(double rate);
    static Distribution erlang(unsigned shape, double rate);
    /// A sum of independent exponentials. Single-rate lists collapse to
    /// Exponential and all-equal rate lists collapse to Erlang.
    static Distribution hypoexponential(std::vector<double> rates);
    /// Finite mixture. Weights must be nonnegative and sum to 1 (1e-12).
    /// Zero-weight components are dropped; a single survivor is unwrapped.
    static Distribution mixture(std::vector<double> weights,
                                std::vector<Distribution> components);
    static Distribution point_mass(double value);

    /// Parses expressions like "exponential(2)", "erlang(2,1.5)",
    /// "hypoexponential(1,2)", "pointmass(3)", "zero",
    /// "mixture(0.25:pointmass(0); 0.75:exponential(1))".
    static Distribution parse(std::string_view text);

    Kind kind() const { return kind_; }

    double mean() const;
    double second_moment() const;
    double variance() const;
    double sd() const;

    /// Laplace-Stieltjes transform E[exp(-s X)] for s >= 0.
    double lst(double s) const;

    double cdf(double x) const;
    /// Left limit F(x-); differs from cdf only at point-mass atoms.
    double cdf_left(double x) const;

    double sample(RngStream& rng) const;

    std::string to_string() const;

    // Parameter accessors (meaningful per kind).
    double rate() const { return rate_; }
    unsigned shape() const { return shape_; }
    const std::vector<double>& rates() const { return rates_; }
    const std::vector<double>& weights() const { return weights_; }
    const std::vector<Distribution>& components() const { return components_; }
    double value() const { return value_; }

    bool operator==(const Distribution& other) const;

private:
    Distribution() = default;

    Kind kind_ = Kind::PointMass;
    double rate_ = 0;        // Exponential, Erlang
    unsigned shape_ = 0;     // Erlang
    double value_ = 0;       // PointMass
    std::vector<double> rates_;            // Hypoexponential
    std::vector<double> weights_;          // Mixture
    std::vector<Distribution> components_; // Mixture
};

}  // namespace aoilab
