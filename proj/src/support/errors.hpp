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

#include <stdexcept>
#include <string>

namespace aoilab {

/// Parameters outside a formula's domain: instability, degenerate rates,
/// inconsistent statistics. Maps to exit code 2 at the CLI.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed requests: unknown model names, bad config files. Exit code 64.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// A cross-check between two independent computation routes disagreed.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

inline void require_domain(bool cond, const char* msg) {
    if (!cond) throw DomainError(msg);
}

/// Strict inequality lhs < rhs with a relative slack margin, so that formulas
/// are never evaluated right at a divergence boundary.
inline bool strictly_below(double lhs, double rhs, double rel_slack = 1e-9) {
    return lhs < rhs * (1.0 - rel_slack);
}

}  // namespace aoilab
