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

#include <stdexcept>
#include <string>

#include "loopline/io/toml.hpp"
#include "loopline/rational.hpp"
#include "loopline/units.hpp"

namespace loopline {

/// Named step durations of the physical platform. tau_sh is the time for a
/// full round of the shuttling loop; the others are single-operation times.
/// meas_devices parallel readout devices reduce the effective measurement
/// time seen by the stream to tau_meas / meas_devices.
struct HardwareTiming {
    tick_t tau_sh = 0;
    tick_t tau_cz = 0;
    tick_t tau_h = 0;
    tick_t tau_init = 0;
    tick_t tau_meas = 0;
    int meas_devices = 1;

    void validate() const {
        if (tau_sh < 0 || tau_cz < 0 || tau_h < 0 || tau_init < 0 || tau_meas < 0)
            throw std::invalid_argument("hardware timings must be >= 0");
        if (meas_devices < 1) throw std::invalid_argument("meas_devices must be >= 1");
    }

    /// Effective per-qubit measurement time in ticks, exact rational.
    Rat effective_meas() const { return Rat(tau_meas, meas_devices); }

    HardwareTiming with_meas_devices(int m) const {
        HardwareTiming hw = *this;
        hw.meas_devices = m;
        return hw;
    }

    HardwareTiming scaled(tick_t factor) const {
        return {tau_sh * factor, tau_cz * factor, tau_h * factor,
                tau_init * factor, tau_meas * factor, meas_devices};
    }
};

/// Silicon spin-qubit preset with EDSR single-qubit gates.
inline HardwareTiming edsr_preset() {
    return {ticks_from_ns(1000), ticks_from_ns(100), ticks_from_ns(25),
            ticks_from_ns(0), ticks_from_ns(1000), 1};
}

/// Silicon spin-qubit preset with ESR single-qubit gates.
inline HardwareTiming esr_preset() {
    return {ticks_from_ns(1000), ticks_from_ns(300), ticks_from_ns(250),
            ticks_from_ns(0), ticks_from_ns(1000), 1};
}

inline HardwareTiming preset_by_name(const std::string& name) {
    if (name == "edsr") return edsr_preset();
    if (name == "esr") return esr_preset();
    throw std::invalid_argument("unknown preset: " + name + " (expected edsr or esr)");
}

inline HardwareTiming hardware_from_toml(const toml::Table& t) {
    HardwareTiming hw;
    hw.tau_sh = ticks_from_ns_f(t.get_double("tau_sh_ns", 0));
    hw.tau_cz = ticks_from_ns_f(t.get_double("tau_cz_ns", 0));
    hw.tau_h = ticks_from_ns_f(t.get_double("tau_h_ns", 0));
    hw.tau_init = ticks_from_ns_f(t.get_double("tau_init_ns", 0));
    hw.tau_meas = ticks_from_ns_f(t.get_double("tau_meas_ns", 0));
    hw.meas_devices = static_cast<int>(t.get_int("meas_devices", 1));
    hw.validate();
    return hw;
}

}  // namespace loopline
