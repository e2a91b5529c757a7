// Copyright 2026 Loopline Contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace loopline {

/// All pipeline arithmetic runs on an integer clock of 1/100 ns so that
/// fractional gap values (e.g. 281.25 ns) stay exact and analytic formulas
/// can be compared to the event simulator with operator==.
using tick_t = std::int64_t;

inline constexpr tick_t kTicksPerNs = 100;

constexpr tick_t ticks_from_ns(std::int64_t ns) { return ns * kTicksPerNs; }

/// Converts a (possibly fractional) nanosecond value to ticks, requiring the
/// value to be representable on the 1/100 ns grid.
inline tick_t ticks_from_ns_f(double ns) {
    double scaled = ns * static_cast<double>(kTicksPerNs);
    double rounded = std::nearbyint(scaled);
    if (std::abs(scaled - rounded) > 1e-6) {
        throw std::invalid_argument("duration " + std::to_string(ns) +
                                    " ns is not representable in 1/100 ns ticks");
    }
    return static_cast<tick_t>(rounded);
}

constexpr double ns_from_ticks(tick_t t) {
    return static_cast<double>(t) / static_cast<double>(kTicksPerNs);
}

constexpr double us_from_ticks(tick_t t) { return ns_from_ticks(t) / 1000.0; }

}  // namespace loopline
