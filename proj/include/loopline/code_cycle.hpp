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
#include <stdexcept>

#include "loopline/hardware.hpp"
#include "loopline/pipeline.hpp"
#include "loopline/rational.hpp"

namespace loopline {

enum class CodeFamily { Surface, Colour };

inline const char* code_family_name(CodeFamily c) {
    return c == CodeFamily::Surface ? "surface" : "colour";
}

/// Derived per-code-cycle quantities. Times are exact rationals in ticks;
/// fractional values arise only from parallel measurement devices (tau_meas/m)
/// and from loop edges that do not divide the full round time.
struct CodeCycleModel {
    CodeFamily code = CodeFamily::Surface;
    HardwareTiming hw;
    Rat t_circ_data;
    Rat t_circ_anc;
    Rat t_cycle;
    Rat t_loop_min;
    Rat tau_gap;  // steady-flow stream spacing: slowest station of either stream
    std::int64_t k_loop = 1;
    Rat buffering_data;  // synchronization wait added to the faster stream
    Rat buffering_anc;

    double t_cycle_ns() const { return t_cycle.value() / kTicksPerNs; }
    double t_circ_data_ns() const { return t_circ_data.value() / kTicksPerNs; }
    double t_circ_anc_ns() const { return t_circ_anc.value() / kTicksPerNs; }
};

namespace detail {

inline std::int64_t rat_floor_div(const Rat& a, const Rat& b) {
    // floor(a / b) for positive rationals.
    return (a.num * b.den) / (a.den * b.num);
}

inline CodeCycleModel finish_model(CodeCycleModel m) {
    m.t_cycle = std::max(m.t_circ_data, m.t_circ_anc);
    m.buffering_data = m.t_cycle - m.t_circ_data;
    m.buffering_anc = m.t_cycle - m.t_circ_anc;
    if (m.tau_gap.num == 0) {
        m.k_loop = 1;  // degenerate all-zero hardware
    } else {
        m.k_loop = rat_floor_div(m.t_loop_min, m.tau_gap) + 1;
    }
    return m;
}

}  // namespace detail

/// Surface-code cycle: data qubits make three loop rounds with 8 CZ slots
/// and 2 Hadamards; each ancilla makes one round with init, 4 CZs and a
/// measurement. The X-check CZ block is sandwiched by the data Hadamards and
/// the lightest round (one CZ, one H) sets the minimum cycling period.
inline CodeCycleModel surface_cycle(const HardwareTiming& hw) {
    hw.validate();
    CodeCycleModel m;
    m.code = CodeFamily::Surface;
    m.hw = hw;
    m.t_circ_data = Rat(3 * hw.tau_sh + 8 * hw.tau_cz + 2 * hw.tau_h);
    m.t_circ_anc = Rat(hw.tau_sh + 4 * hw.tau_cz + hw.tau_init) + hw.effective_meas();
    m.t_loop_min =
        Rat(std::min(hw.tau_sh + 4 * hw.tau_cz, hw.tau_sh + hw.tau_cz + hw.tau_h));
    m.tau_gap = std::max({Rat(hw.tau_cz), Rat(hw.tau_h), Rat(hw.tau_init), hw.effective_meas()});
    return detail::finish_model(m);
}

/// Colour-code cycle: weight-six checks measured by hexagon ancilla loops,
/// X and Z checks strictly sequential through the same ancilla.
inline CodeCycleModel colour_cycle(const HardwareTiming& hw) {
    hw.validate();
    CodeCycleModel m;
    m.code = CodeFamily::Colour;
    m.hw = hw;
    m.t_circ_data = Rat(2 * hw.tau_sh + 12 * hw.tau_cz + 2 * hw.tau_h);
    m.t_circ_anc =
        Rat(2 * hw.tau_sh + 12 * hw.tau_cz + 2 * hw.tau_init) + Rat(2) * hw.effective_meas();
    m.t_loop_min = Rat(hw.tau_sh + 6 * hw.tau_cz);
    m.tau_gap = std::max({Rat(hw.tau_cz), Rat(hw.tau_h), Rat(hw.tau_init), hw.effective_meas()});
    return detail::finish_model(m);
}

inline CodeCycleModel code_cycle(const HardwareTiming& hw, CodeFamily code) {
    return code == CodeFamily::Surface ? surface_cycle(hw) : colour_cycle(hw);
}

/// Time to pipeline k logical qubits (layers) through D code cycles:
/// D * T_cycle plus one stream spacing per extra layer.
inline Rat qec_pipeline_time(const CodeCycleModel& model, int cycles, int k) {
    if (cycles < 1) throw std::invalid_argument("cycles must be >= 1");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (k > model.k_loop) throw std::domain_error("collision: k exceeds loop capacity");
    return Rat(cycles) * model.t_cycle + Rat(k - 1) * model.tau_gap;
}

struct CodeCyclePipelines {
    PipelineSpec data;
    PipelineSpec ancilla;
};

struct EmitOptions {
    bool colour_doubled_ancilla = false;
};

namespace detail {

inline tick_t exact_div(tick_t value, tick_t parts, const char* what) {
    if (value % parts != 0)
        throw std::invalid_argument(std::string(what) +
                                    " not divisible into equal edges; scale the timings");
    return value / parts;
}

inline tick_t exact_meas(const HardwareTiming& hw) {
    if (hw.tau_meas % hw.meas_devices != 0)
        throw std::invalid_argument(
            "effective measurement time not an integer tick; scale the timings");
    return hw.tau_meas / hw.meas_devices;
}

}  // namespace detail

/// Explicit one-cycle step lists for the data and ancilla streams,
/// consumable by the pipeline timing engine and the event simulator.
inline CodeCyclePipelines emit_cycle_pipeline(const CodeCycleModel& model,
                                              EmitOptions opt = {}) {
    const HardwareTiming& hw = model.hw;
    CodeCyclePipelines out;
    if (model.code == CodeFamily::Surface) {
        const tick_t e = detail::exact_div(hw.tau_sh, 4, "surface loop round");
        PipelineSpec& d = out.data;
        // Round 1: Z-check corners.
        for (int j = 0; j < 4; ++j) {
            d.steps.push_back(Step::shuttle(e));
            d.steps.push_back(Step::gate2q(hw.tau_cz));
        }
        d.loop_rounds.push_back({0, d.steps.size()});
        // Round 2: opening Hadamard, three X-check corners.
        std::size_t r2 = d.steps.size();
        d.steps.push_back(Step::gate1q(hw.tau_h));
        for (int j = 0; j < 3; ++j) {
            d.steps.push_back(Step::shuttle(e));
            d.steps.push_back(Step::gate2q(hw.tau_cz));
        }
        d.steps.push_back(Step::shuttle(e));
        d.loop_rounds.push_back({r2, d.steps.size()});
        // Round 3: last X-check corner, closing Hadamard, free run home.
        std::size_t r3 = d.steps.size();
        d.steps.push_back(Step::shuttle(e));
        d.steps.push_back(Step::gate2q(hw.tau_cz));
        d.steps.push_back(Step::gate1q(hw.tau_h));
        for (int j = 0; j < 3; ++j) d.steps.push_back(Step::shuttle(e));
        d.loop_rounds.push_back({r3, d.steps.size()});

        PipelineSpec& a = out.ancilla;
        a.steps.push_back(Step::init(hw.tau_init));
        std::size_t ra = a.steps.size();
        for (int j = 0; j < 4; ++j) {
            a.steps.push_back(Step::shuttle(e));
            a.steps.push_back(Step::gate2q(hw.tau_cz));
        }
        a.loop_rounds.push_back({ra, a.steps.size()});
        a.steps.push_back(Step::measure(detail::exact_meas(hw)));
    } else {
        const tick_t ed = detail::exact_div(hw.tau_sh, 3, "triangle data loop round");
        PipelineSpec& d = out.data;
        // X-check round, Hadamard-sandwiched; two CZ slots per corner.
        d.steps.push_back(Step::gate1q(hw.tau_h));
        for (int j = 0; j < 3; ++j) {
            d.steps.push_back(Step::shuttle(ed));
            d.steps.push_back(Step::gate2q(hw.tau_cz));
            d.steps.push_back(Step::gate2q(hw.tau_cz));
        }
        d.steps.push_back(Step::gate1q(hw.tau_h));
        d.loop_rounds.push_back({0, d.steps.size()});
        // Z-check round.
        std::size_t r2 = d.steps.size();
        for (int j = 0; j < 3; ++j) {
            d.steps.push_back(Step::shuttle(ed));
            d.steps.push_back(Step::gate2q(hw.tau_cz));
            d.steps.push_back(Step::gate2q(hw.tau_cz));
        }
        d.loop_rounds.push_back({r2, d.steps.size()});

        const tick_t ea = detail::exact_div(hw.tau_sh, 6, "hexagon ancilla loop round");
        PipelineSpec& a = out.ancilla;
        int check_rounds = opt.colour_doubled_ancilla ? 1 : 2;
        for (int r = 0; r < check_rounds; ++r) {
            a.steps.push_back(Step::init(hw.tau_init));
            std::size_t ra = a.steps.size();
            for (int j = 0; j < 6; ++j) {
                a.steps.push_back(Step::shuttle(ea));
                a.steps.push_back(Step::gate2q(hw.tau_cz));
            }
            a.loop_rounds.push_back({ra, a.steps.size()});
            a.steps.push_back(Step::measure(detail::exact_meas(hw)));
        }
    }
    out.data.validate();
    out.ancilla.validate();
    return out;
}

/// Concatenates n copies of a one-cycle spec into a multi-cycle stream.
inline PipelineSpec unroll(const PipelineSpec& cycle, int n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    PipelineSpec out;
    out.qubit_count = cycle.qubit_count;
    for (int c = 0; c < n; ++c) {
        std::size_t base = out.steps.size();
        for (const Step& s : cycle.steps) out.steps.push_back(s);
        for (const RoundSpan& r : cycle.loop_rounds)
            out.loop_rounds.push_back({base + r.begin, base + r.end});
    }
    return out;
}

}  // namespace loopline
