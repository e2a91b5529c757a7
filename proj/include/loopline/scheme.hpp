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

#include <optional>
#include <stdexcept>

#include "loopline/code_cycle.hpp"
#include "loopline/hardware.hpp"
#include "loopline/rational.hpp"

namespace loopline {

enum class SchemeRegime { NoBufferDataLimited, NoBufferAncillaLimited, BufferedDataPipeline };

inline const char* scheme_regime_name(SchemeRegime r) {
    switch (r) {
        case SchemeRegime::NoBufferDataLimited: return "no-buffer-data-limited";
        case SchemeRegime::NoBufferAncillaLimited: return "no-buffer-ancilla-limited";
        case SchemeRegime::BufferedDataPipeline: return "buffered-data-pipeline";
    }
    return "?";
}

/// A resolved surface-code pipelining scheme for k qubits per loop and the
/// hardware's measurement-device count: stream spacing, loop period, and the
/// resulting code cycle time. Times are exact rationals in ticks.
struct SchemeSolution {
    int k = 1;
    int m = 1;
    Rat tau_gap;
    Rat t_loop_min;
    Rat t_cycle;
    SchemeRegime regime = SchemeRegime::NoBufferDataLimited;

    double tau_gap_ns() const { return tau_gap.value() / kTicksPerNs; }
    double t_cycle_ns() const { return t_cycle.value() / kTicksPerNs; }
    double t_loop_min_ns() const { return t_loop_min.value() / kTicksPerNs; }
};

/// Largest k that needs no time-gap buffering in the data pipeline, i.e.
/// keeps the stream spacing at or above the CZ time.
inline std::int64_t max_k_no_buffer(const HardwareTiming& hw) {
    if (hw.tau_cz == 0) throw std::invalid_argument("max_k_no_buffer needs tau_cz > 0");
    return (hw.tau_sh + hw.tau_cz + hw.tau_h) / hw.tau_cz + 1;
}

/// Fewest measurement devices per loop that keep the data pipeline
/// rate-limiting when k qubits share the loop with no data buffering.
inline int required_meas_devices(const HardwareTiming& hw, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    std::int64_t denom = 3 * hw.tau_sh + 4 * hw.tau_cz + 3 * hw.tau_h;
    if (denom == 0) throw std::invalid_argument("degenerate hardware timing");
    std::int64_t m = ceil_div(hw.tau_meas * k, denom);
    return static_cast<int>(std::max<std::int64_t>(m, 1));
}

/// Picks the cheapest surface-code pipelining regime for k qubits per loop:
/// no data buffering with the data pipeline rate-limiting, no data buffering
/// with the ancilla pipeline rate-limiting, or a buffered data pipeline run
/// at the cycle-time optimum. Falls back to the plain steady-flow scheme
/// when measurement is not the rate-limiting device.
inline SchemeSolution solve_scheme(const HardwareTiming& hw, int k) {
    hw.validate();
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    const CodeCycleModel model = surface_cycle(hw);
    const Rat meas_eff = hw.effective_meas();

    SchemeSolution sol;
    sol.k = k;
    sol.m = hw.meas_devices;

    // Steady flow covers k = 1 and hardware where some gate, not the
    // measurement, is the slowest device.
    if (k == 1 || meas_eff < Rat(hw.tau_cz)) {
        if (k > model.k_loop) throw std::domain_error("requires sub-CZ gap, unsupported");
        sol.tau_gap = model.tau_gap;
        sol.t_loop_min = model.t_loop_min;
        sol.t_cycle = model.t_cycle;
        sol.regime = model.t_circ_anc > model.t_circ_data
                         ? SchemeRegime::NoBufferAncillaLimited
                         : SchemeRegime::NoBufferDataLimited;
        return sol;
    }

    std::optional<SchemeSolution> best;
    auto consider = [&](const SchemeSolution& cand) {
        if (!best || cand.t_cycle < best->t_cycle) best = cand;
    };

    const Rat t_data = model.t_circ_data;
    const Rat t_loop_base = Rat(hw.tau_sh + hw.tau_cz + hw.tau_h);

    if (k <= max_k_no_buffer(hw)) {
        // Reduced spacing, no buffering in the data pipeline; the ancilla
        // stream absorbs the gap deficit around its measurement.
        SchemeSolution cand = sol;
        cand.tau_gap = t_loop_base / Rat(k - 1);
        cand.t_loop_min = t_loop_base;
        Rat t_anc_eff = Rat(4 * hw.tau_cz - hw.tau_h) + Rat(k) * meas_eff;
        if (t_anc_eff <= t_data) {
            cand.t_cycle = t_data;
            cand.regime = SchemeRegime::NoBufferDataLimited;
        } else {
            cand.t_cycle = t_anc_eff;
            cand.regime = SchemeRegime::NoBufferAncillaLimited;
        }
        consider(cand);
    }

    // Buffered data pipeline at the balanced optimum, valid while all three
    // data rounds can share the stretched period and the spacing stays at or
    // above the CZ time.
    {
        Rat t_star = (Rat(hw.tau_sh + 4 * hw.tau_cz) + Rat(k) * meas_eff) / Rat(4);
        Rat gap_star = t_star / Rat(k - 1);
        if (t_star >= Rat(hw.tau_sh + 4 * hw.tau_cz) && gap_star >= Rat(hw.tau_cz)) {
            SchemeSolution cand = sol;
            cand.t_loop_min = t_star;
            cand.tau_gap = gap_star;
            cand.t_cycle = Rat(3) * t_star;
            cand.regime = SchemeRegime::BufferedDataPipeline;
            consider(cand);
        }
    }

    if (!best) throw std::domain_error("requires sub-CZ gap, unsupported");
    return *best;
}

/// Magnetic dipole-dipole coupling strength (in hertz) between two electron
/// spins separated by r meters.
inline double dipole_coupling(double r_meters) {
    if (r_meters <= 0) throw std::invalid_argument("separation must be > 0");
    constexpr double mu0 = 1.25663706212e-6;    // vacuum permeability, N/A^2
    constexpr double g_e = 2.00231930436256;    // electron g-factor
    constexpr double mu_b = 9.2740100783e-24;   // Bohr magneton, J/T
    constexpr double planck = 6.62607015e-34;   // Planck constant, J s
    double r3 = r_meters * r_meters * r_meters;
    return mu0 * g_e * g_e * mu_b * mu_b / (4.0 * 3.14159265358979323846 * r3 * planck);
}

}  // namespace loopline
