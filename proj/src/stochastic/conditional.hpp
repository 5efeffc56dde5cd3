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

#include "stochastic/distribution.hpp"

namespace aoilab {

/// P(X > Y) for X ~ Exp(lambda) independent of Y; equals the LST of Y at
/// lambda.
double prob_exp_exceeds(double lambda, const Distribution& y);

/// Conditional laws of a race between X1 ~ Exp(rate1) and X2 ~ Exp(rate2),
/// conditioned on the event {X2 > X1} (X2 outlasts X1).
struct ExpRaceConditionals {
    double p_win;                   // P(X2 > X1) = rate1 / (rate1 + rate2)
    Distribution loser_given_win;   // X1 | {X2>X1} ~ Exp(rate1 + rate2)
    Distribution gap_given_win;     // X2-X1 | {X2>X1} ~ Exp(rate2)
    Distribution winner_given_win;  // X2 | {X2>X1}: Exp(rate1+rate2) stage
                                    // then an independent Exp(rate2) stage
};

ExpRaceConditionals exp_race_conditionals(double rate1, double rate2);

/// Conditional laws for X ~ Exp(lambda) vs Y ~ Hypoexponential(mu1, mu2),
/// conditioned on {Y > X}, with Z = Y - X the overshoot. The mixing weight w
/// is signed (it may exceed 1); the resulting densities are nonetheless
/// nonnegative. Requires mu1 != mu2.
class HypoexpVsExpConditionals {
public:
    HypoexpVsExpConditionals(double lambda, double mu1, double mu2);

    double p_exceed() const { return p_exceed_; }
    double mixing_weight() const { return w_; }

    double overshoot_pdf(double z) const;      // f_{Z | Y>X}
    double conditional_x_pdf(double x) const;  // f_{X | Y>X}
    double joint_pdf(double z, double x) const;

private:
    double lambda_, mu1_, mu2_, w_, p_exceed_;
};

}  // namespace aoilab
