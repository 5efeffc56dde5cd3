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
#include <vector>

#include "scenarios/scenario.hpp"

namespace aoilab::verify {

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckLine> lines;
    int failed() const {
        int n = 0;
        for (const auto& l : lines)
            if (!l.pass) ++n;
        return n;
    }
};

std::vector<std::string> suite_names();

/// Runs one named suite: "theorem1" (decomposition closure on the five
/// canonical systems), "appendix-lemmas" (Monte Carlo and KS checks of the
/// conditional exponential laws), or "bounds" (correction-bound containment
/// and sign sweeps). Throws UsageError for unknown names.
SuiteResult run_suite(const std::string& name, std::uint64_t seed = kDefaultSeed,
                      unsigned threads = 0);

}  // namespace aoilab::verify
