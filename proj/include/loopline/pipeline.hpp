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
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "loopline/units.hpp"

namespace loopline {

enum class StepKind { Shuttle, Gate1Q, Gate2Q, Init, Measure, Buffer };

inline const char* step_kind_name(StepKind k) {
    switch (k) {
        case StepKind::Shuttle: return "shuttle";
        case StepKind::Gate1Q: return "gate1q";
        case StepKind::Gate2Q: return "gate2q";
        case StepKind::Init: return "init";
        case StepKind::Measure: return "measure";
        case StepKind::Buffer: return "buffer";
    }
    return "?";
}

/// One station of a qubit pipeline. Gate, init and measure steps hold
/// exactly one qubit at a time. Shuttle steps model whole track sections
/// (an edge of a loop) which carry several qubits in transit and double as
/// buffering regions; buffer steps are explicit unbounded FIFO holds.
struct Step {
    StepKind kind = StepKind::Shuttle;
    tick_t duration = 0;
    bool on_loop = true;

    static Step shuttle(tick_t d, bool on_loop = true) { return {StepKind::Shuttle, d, on_loop}; }
    static Step gate1q(tick_t d, bool on_loop = true) { return {StepKind::Gate1Q, d, on_loop}; }
    static Step gate2q(tick_t d, bool on_loop = true) { return {StepKind::Gate2Q, d, on_loop}; }
    static Step init(tick_t d, bool on_loop = false) { return {StepKind::Init, d, on_loop}; }
    static Step measure(tick_t d, bool on_loop = false) { return {StepKind::Measure, d, on_loop}; }
    static Step buffer(tick_t d, bool on_loop = true) { return {StepKind::Buffer, d, on_loop}; }

    /// Track-like steps hold many qubits at once and never rate-limit.
    bool is_track() const { return kind == StepKind::Buffer || kind == StepKind::Shuttle; }
};

/// Half-open index range [begin, end) of steps forming one loop traversal.
struct RoundSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
};

struct PipelineSpec {
    std::vector<Step> steps;
    std::vector<RoundSpan> loop_rounds;
    int qubit_count = 1;

    std::size_t size() const { return steps.size(); }

    void validate() const {
        if (steps.empty()) throw std::invalid_argument("pipeline spec has no steps");
        if (qubit_count < 1) throw std::invalid_argument("qubit_count must be >= 1");
        for (const Step& s : steps) {
            if (s.duration < 0) throw std::invalid_argument("negative step duration");
        }
        std::size_t cursor = 0;
        std::vector<bool> in_round(steps.size(), false);
        for (const RoundSpan& r : loop_rounds) {
            if (r.begin < cursor || r.end < r.begin || r.end > steps.size())
                throw std::invalid_argument("loop rounds must be consecutive index ranges");
            for (std::size_t i = r.begin; i < r.end; ++i) in_round[i] = true;
            cursor = r.end;
        }
        for (std::size_t i = 0; i < steps.size(); ++i) {
            if (steps[i].on_loop && !loop_rounds.empty() && !in_round[i])
                throw std::invalid_argument("on-loop step outside every round");
        }
    }

    tick_t round_duration(const RoundSpan& r) const {
        tick_t t = 0;
        for (std::size_t i = r.begin; i < r.end; ++i) t += steps[i].duration;
        return t;
    }

    /// Minimum cycling period over the spec's loop traversals.
    tick_t min_round_duration() const {
        if (loop_rounds.empty()) throw std::invalid_argument("spec has no loop rounds");
        tick_t best = round_duration(loop_rounds.front());
        for (const RoundSpan& r : loop_rounds) best = std::min(best, round_duration(r));
        return best;
    }
};

/// Per-qubit inter-arrival spacing through the pipeline. The mode selects a
/// pipelining scheme; Varying carries an explicit per-step entry-gap profile.
struct GapSchedule {
    enum class Mode { SteadyFlow, SteadyLoopFlow, ConstantGap, Varying };

    Mode mode = Mode::SteadyFlow;
    tick_t constant_gap = 0;
    std::vector<tick_t> gaps;  // Varying only; entry gap per step

    static GapSchedule steady_flow() { return {Mode::SteadyFlow, 0, {}}; }
    static GapSchedule steady_loop_flow() { return {Mode::SteadyLoopFlow, 0, {}}; }
    static GapSchedule constant(tick_t gap) { return {Mode::ConstantGap, gap, {}}; }
    static GapSchedule varying(std::vector<tick_t> g) { return {Mode::Varying, 0, std::move(g)}; }
};

struct BufferEntry {
    int qubit = 0;         // 1-based position in the stream
    std::size_t step = 0;  // wait inserted before entering this step index (size() = pipeline exit)
    tick_t wait = 0;
};

struct TimingResult {
    tick_t t_circ = 0;
    tick_t tau_max = 0;
    tick_t t_eff = 0;   // first-qubit completion including inserted buffering
    tick_t t_pipe = 0;  // completion time of the last qubit
    std::vector<BufferEntry> buffering_ledger;
};

/// Time for one qubit to flow through every step.
inline tick_t circuit_time(const PipelineSpec& spec) {
    spec.validate();
    tick_t total = 0;
    for (const Step& s : spec.steps) total += s.duration;
    return total;
}

/// Rate-limiting step time. Buffer steps are holds, not stations, and never
/// rate-limit the stream.
inline tick_t rate_limiting_time(const PipelineSpec& spec) {
    tick_t m = 0;
    for (const Step& s : spec.steps)
        if (!s.is_track()) m = std::max(m, s.duration);
    return m;
}

inline tick_t rate_limiting_time_on_loop(const PipelineSpec& spec) {
    tick_t m = -1;
    for (const Step& s : spec.steps)
        if (!s.is_track() && s.on_loop) m = std::max(m, s.duration);
    if (m < 0) throw std::invalid_argument("steady loop flow needs at least one on-loop station");
    return m;
}

/// Maximum number of qubits that fit on a loop of minimum cycling period
/// T_loop_min at stream spacing tau_gap before the head catches the tail.
inline std::int64_t loop_capacity(tick_t t_loop_min, tick_t tau_gap) {
    if (tau_gap == 0) throw std::invalid_argument("unbounded capacity");
    if (tau_gap < 0 || t_loop_min < 0) throw std::invalid_argument("negative time");
    return t_loop_min / tau_gap + 1;
}

namespace detail {

/// A fully resolved pipelining plan: the spacing of the stream entering each
/// step, and the spacing it is held at in the corridor after each step. The
/// corridor after the last step is the output spacing.
struct GapPlan {
    std::vector<tick_t> entry;     // size M
    std::vector<tick_t> corridor;  // size M; corridor[m] = spacing kept after step m
};

inline GapPlan resolve_gaps(const PipelineSpec& spec, const GapSchedule& sched) {
    const std::size_t m = spec.steps.size();
    GapPlan plan;
    plan.entry.resize(m);
    plan.corridor.resize(m);
    auto fill_base = [&](tick_t base) {
        for (std::size_t i = 0; i < m; ++i) {
            const Step& s = spec.steps[i];
            plan.entry[i] = s.is_track() ? base : std::max(base, s.duration);
            plan.corridor[i] = base;
        }
    };
    switch (sched.mode) {
        case GapSchedule::Mode::SteadyFlow:
            fill_base(rate_limiting_time(spec));
            break;
        case GapSchedule::Mode::SteadyLoopFlow:
            fill_base(rate_limiting_time_on_loop(spec));
            break;
        case GapSchedule::Mode::ConstantGap:
            if (sched.constant_gap <= 0) throw std::invalid_argument("constant gap must be > 0");
            fill_base(sched.constant_gap);
            break;
        case GapSchedule::Mode::Varying:
            if (sched.gaps.size() != m)
                throw std::invalid_argument("varying gap profile must cover every step");
            for (std::size_t i = 0; i < m; ++i) {
                if (!spec.steps[i].is_track() && sched.gaps[i] < spec.steps[i].duration)
                    throw std::invalid_argument("infeasible gap schedule");
                plan.entry[i] = sched.gaps[i];
                plan.corridor[i] = (i + 1 < m) ? sched.gaps[i + 1] : sched.gaps[i];
            }
            break;
    }
    return plan;
}

/// Evaluates a plan analytically: first-qubit waits accumulate at every gap
/// fall (entry spacing down to the following corridor spacing); later qubits
/// absorb the rises. Returns the timing plus the per-qubit wait ledger.
inline TimingResult evaluate_plan(const PipelineSpec& spec, int k, const GapPlan& plan,
                                  bool want_ledger) {
    TimingResult r;
    r.t_circ = circuit_time(spec);
    r.tau_max = rate_limiting_time(spec);
    const std::size_t m = spec.steps.size();
    tick_t falls = 0;
    for (std::size_t i = 0; i < m; ++i) falls += std::max<tick_t>(plan.entry[i] - plan.corridor[i], 0);
    r.t_eff = r.t_circ + static_cast<tick_t>(k - 1) * falls;
    r.t_pipe = r.t_eff + static_cast<tick_t>(k - 1) * plan.corridor.back();
    if (want_ledger && k > 1) {
        for (std::size_t i = 0; i < m; ++i) {
            tick_t prev = (i == 0) ? plan.entry[0] : plan.corridor[i - 1];
            tick_t rise = std::max<tick_t>(plan.entry[i] - prev, 0);
            tick_t fall = std::max<tick_t>(plan.entry[i] - plan.corridor[i], 0);
            for (int q = 1; q <= k; ++q) {
                if (rise > 0 && q > 1)
                    r.buffering_ledger.push_back({q, i, static_cast<tick_t>(q - 1) * rise});
                if (fall > 0 && q < k)
                    r.buffering_ledger.push_back({q, i + 1, static_cast<tick_t>(k - q) * fall});
            }
        }
    }
    return r;
}

}  // namespace detail

/// Steady-flow scheme: constant spacing equal to the rate-limiting step
/// time; nothing is ever put on hold.
inline TimingResult steady_flow_time(const PipelineSpec& spec, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    TimingResult r;
    r.t_circ = circuit_time(spec);
    r.tau_max = rate_limiting_time(spec);
    r.t_eff = r.t_circ;
    r.t_pipe = r.t_circ + static_cast<tick_t>(k - 1) * r.tau_max;
    return r;
}

/// Constant-gap scheme: the stream keeps spacing tau_gap except transiently
/// around steps slower than the gap, each of which costs a gap rise and a
/// fall absorbed as first-qubit buffering.
inline TimingResult constant_gap_time(const PipelineSpec& spec, int k, tick_t tau_gap) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    return detail::evaluate_plan(spec, k, detail::resolve_gaps(spec, GapSchedule::constant(tau_gap)),
                                 true);
}

/// Steady flow restricted to the loop: spacing equals the slowest on-loop
/// step, with buffering only around slower off-loop stations.
inline TimingResult steady_loop_flow_time(const PipelineSpec& spec, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    return detail::evaluate_plan(spec, k, detail::resolve_gaps(spec, GapSchedule::steady_loop_flow()),
                                 true);
}

/// Explicit varying-gap profile. Entry gaps must clear every station and
/// every local maximum of the profile must sit at the step that forces it.
inline TimingResult varying_gap_time(const PipelineSpec& spec, int k, const GapSchedule& sched) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (sched.mode != GapSchedule::Mode::Varying)
        throw std::invalid_argument("varying_gap_time needs a Varying schedule");
    detail::GapPlan plan = detail::resolve_gaps(spec, sched);
    for (std::size_t i = 0; i < spec.steps.size(); ++i) {
        bool rises = (i == 0) ? plan.entry[i] > 0 : plan.entry[i] > plan.entry[i - 1];
        bool falls = plan.entry[i] > plan.corridor[i] || i + 1 == spec.steps.size();
        if (rises && falls && !spec.steps[i].is_track() &&
            plan.entry[i] != spec.steps[i].duration)
            throw std::invalid_argument("gap peak must equal the duration of its step");
    }
    return detail::evaluate_plan(spec, k, plan, true);
}

/// Extra hold the rest of the array must absorb when a mid-circuit
/// measurement spans more than its allotted window of global clock cycles.
inline tick_t midcircuit_measurement_buffer(tick_t meas_span, int window_cycles,
                                            tick_t clock_period) {
    if (window_cycles < 1) throw std::invalid_argument("window_cycles must be >= 1");
    if (meas_span < 0 || clock_period < 0) throw std::invalid_argument("negative time");
    tick_t allowance = static_cast<tick_t>(window_cycles - 1) * clock_period;
    return std::max<tick_t>(meas_span - allowance, 0);
}

}  // namespace loopline
