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

#include <algorithm>
#include <optional>
#include <vector>

#include "loopline/pipeline.hpp"

namespace loopline {

struct CollisionReport {
    std::size_t step = 0;  // station (or loop datum) where two qubits meet
    int qubit_front = 0;   // 1-based stream positions
    int qubit_back = 0;
    tick_t time = 0;
};

struct DesResult {
    tick_t completion = 0;  // exit time of the last qubit; valid when no collision
    std::optional<CollisionReport> collision;
};

/// Walks every qubit through every station of the pipeline under the given
/// gap schedule, tracking station occupancy and loop wrap-around. This is the
/// ground-truth oracle for the closed-form timing operations: it shares the
/// resolved gap plan with them but derives completion times qubit by qubit.
///
/// A collision means two qubits would need one exclusive station (or the
/// same position on the loop) at overlapping times. It is reported, not
/// thrown; the returned completion is the planned value and is only
/// meaningful when no collision occurred.
inline DesResult des_simulate(const PipelineSpec& spec, int k, const GapSchedule& sched) {
    spec.validate();
    if (k < 1) throw std::invalid_argument("k must be >= 1");

    detail::GapPlan plan;
    {
        // An infeasible varying profile must surface as a collision report,
        // so bypass the feasibility throw and let occupancy checking see it.
        const std::size_t m = spec.steps.size();
        if (sched.mode == GapSchedule::Mode::Varying) {
            if (sched.gaps.size() != m)
                throw std::invalid_argument("varying gap profile must cover every step");
            plan.entry = sched.gaps;
            plan.corridor.resize(m);
            for (std::size_t i = 0; i < m; ++i)
                plan.corridor[i] = (i + 1 < m) ? sched.gaps[i + 1] : sched.gaps[i];
        } else {
            plan = detail::resolve_gaps(spec, sched);
        }
    }

    const std::size_t m = spec.steps.size();
    const std::size_t rounds = spec.loop_rounds.size();
    // The loop datum of a round is its first on-loop station: consecutive
    // traversals re-enter the loop there, so that is where the head of the
    // stream can catch the tail.
    std::vector<std::size_t> datum(rounds, m);
    for (std::size_t r = 0; r < rounds; ++r) {
        for (std::size_t i = spec.loop_rounds[r].begin; i < spec.loop_rounds[r].end; ++i) {
            if (spec.steps[i].on_loop) {
                datum[r] = i;
                break;
            }
        }
    }
    std::vector<tick_t> last_exit(m, -1);
    std::vector<tick_t> first_qubit_passage(rounds, 0);
    std::vector<tick_t> last_qubit_passage(rounds, 0);
    std::vector<CollisionReport> found;
    tick_t completion = 0;

    for (int q = 1; q <= k; ++q) {
        tick_t t = static_cast<tick_t>(q - 1) * plan.entry[0];
        for (std::size_t i = 0; i < m; ++i) {
            if (i > 0) {
                tick_t jump = plan.entry[i] - plan.corridor[i - 1];
                if (jump > 0) t += static_cast<tick_t>(q - 1) * jump;   // gap rise into the station
                if (jump < 0) t += static_cast<tick_t>(k - q) * -jump;  // gap fall into the station
            }
            const Step& s = spec.steps[i];
            if (!s.is_track()) {
                if (q > 1 && t < last_exit[i]) found.push_back({i, q - 1, q, t});
                last_exit[i] = t + s.duration;
            }
            for (std::size_t r = 0; r < rounds; ++r) {
                if (datum[r] == i) {
                    if (q == 1) first_qubit_passage[r] = t;
                    if (q == k) last_qubit_passage[r] = t;
                }
            }
            t += s.duration;
            tick_t change = plan.corridor[i] - plan.entry[i];
            if (change > 0) t += static_cast<tick_t>(q - 1) * change;   // corridor gap rise
            if (change < 0) t += static_cast<tick_t>(k - q) * -change;  // corridor gap fall
        }
        if (q == k) completion = t;
    }

    // Loop wrap-around: the first qubit re-enters round r+1's datum no
    // earlier than the last qubit reached round r's datum, else the head of
    // the stream has caught its own tail on the shared track.
    for (std::size_t r = 0; r + 1 < rounds; ++r) {
        if (datum[r] == m || datum[r + 1] == m) continue;
        if (k > 1 && first_qubit_passage[r + 1] < last_qubit_passage[r]) {
            found.push_back({datum[r + 1], k, 1, first_qubit_passage[r + 1]});
        }
    }

    DesResult result;
    result.completion = completion;
    if (!found.empty()) {
        auto first = std::min_element(found.begin(), found.end(),
                                      [](const CollisionReport& a, const CollisionReport& b) {
                                          return a.time < b.time;
                                      });
        result.collision = *first;
    }
    return result;
}

}  // namespace loopline
