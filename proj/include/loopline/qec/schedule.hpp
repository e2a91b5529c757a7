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

#include <cstdint>
#include <vector>

#include "loopline/qec/lattice.hpp"

namespace loopline::qec {

enum class MeasConvention { DepolarizeThenMeasure, ClassicalFlip };

/// Fault probabilities for one code cycle. Defaults give standard gate noise
/// only.
struct NoiseModel {
    double p = 0.0;       // meas/init/CZ fully depolarizing probability
    double p_sh = 0.0;    // dephasing per qubit per cycle (shuttling residue)
    double p_leak = 0.0;  // leakage flag probability per qubit per cycle
    double p_rash = 0.0;  // X+Y shuttling noise per full loop round
    MeasConvention meas_convention = MeasConvention::DepolarizeThenMeasure;

    void validate() const {
        for (double v : {p, p_sh, p_leak, p_rash})
            if (v < 0.0 || v > 1.0) throw std::invalid_argument("probabilities must lie in [0,1]");
    }
};

enum class Op : std::uint8_t {
    Hadamard,    // a = qubit
    Cz,          // a = ancilla, b = data
    InitAnc,     // a = ancilla (prepared |+>)
    MeasAnc,     // a = ancilla, check/time set (X-basis readout)
    Dephase,     // a = qubit: Z w.p. p_sh plus the twirl-gate depolarizing fault
    RashbaEdge,  // a = qubit: one loop edge of shuttling
    LeakFlag,    // a = qubit: leak with probability p_leak
    LeakEnd,     // a = qubit: leaked qubit depolarized and restored
};

struct Instruction {
    Op op;
    std::int32_t a = -1;
    std::int32_t b = -1;
    std::int32_t check = -1;
    std::int32_t time = -1;
};

/// One memory experiment: `cycles` noisy syndrome-extraction cycles followed
/// by a noiseless data readout. Checks are staggered within a cycle -- the
/// Z-check block runs first, then the Hadamard-sandwiched X-check block, so
/// the lightest loop round (one CZ plus one Hadamard) closes the cycle.
/// Within a block every ancilla walks its loop corners in the same rotation:
/// Z checks gate N, E, S, W; X checks gate W, N, E, S. Rotational orders keep
/// single ancilla faults to adjacent (diagonal) data pairs, which do not
/// align with either logical operator.
struct CircuitSchedule {
    SurfaceLattice lattice;
    int cycles = 0;
    std::vector<Instruction> instructions;

    int n_checks() const { return lattice.n_checks(); }
    int n_qubits() const { return lattice.n_qubits(); }
    int n_outcomes() const { return n_checks() * cycles; }
    int n_detectors() const { return n_checks() * (cycles + 1); }
    int detector_index(int check, int layer) const { return layer * n_checks() + check; }
};

inline CircuitSchedule build_circuit(int d, int cycles) {
    if (cycles < 1) throw std::invalid_argument("cycles must be >= 1");
    CircuitSchedule sched;
    sched.lattice = SurfaceLattice::make(d);
    sched.cycles = cycles;
    const SurfaceLattice& lat = sched.lattice;
    auto& ins = sched.instructions;

    const int dir_z[4] = {0, 1, 2, 3};  // N, E, S, W
    const int dir_x[4] = {3, 0, 1, 2};  // W, N, E, S

    for (int t = 0; t < cycles; ++t) {
        for (int q = 0; q < lat.n_qubits(); ++q) ins.push_back({Op::LeakFlag, q, -1, -1, t});

        // Z-check block.
        for (const auto& chk : lat.checks)
            if (!chk.is_x) ins.push_back({Op::InitAnc, chk.ancilla, -1, chk.check_id, t});
        for (int j = 0; j < 4; ++j) {
            for (int q = 0; q < lat.n_data; ++q) ins.push_back({Op::RashbaEdge, q, -1, -1, t});
            for (const auto& chk : lat.checks)
                if (!chk.is_x) ins.push_back({Op::RashbaEdge, chk.ancilla, -1, -1, t});
            for (const auto& chk : lat.checks) {
                if (chk.is_x) continue;
                int data = chk.data[dir_z[j]];
                if (data >= 0) ins.push_back({Op::Cz, chk.ancilla, data, chk.check_id, t});
            }
        }
        for (const auto& chk : lat.checks)
            if (!chk.is_x) {
                ins.push_back({Op::Dephase, chk.ancilla, -1, -1, t});
                ins.push_back({Op::MeasAnc, chk.ancilla, -1, chk.check_id, t});
            }

        // X-check block, Hadamard sandwich on the data.
        for (int q = 0; q < lat.n_data; ++q) ins.push_back({Op::Hadamard, q, -1, -1, t});
        for (const auto& chk : lat.checks)
            if (chk.is_x) ins.push_back({Op::InitAnc, chk.ancilla, -1, chk.check_id, t});
        for (int j = 0; j < 4; ++j) {
            for (int q = 0; q < lat.n_data; ++q) ins.push_back({Op::RashbaEdge, q, -1, -1, t});
            for (const auto& chk : lat.checks)
                if (chk.is_x) ins.push_back({Op::RashbaEdge, chk.ancilla, -1, -1, t});
            for (const auto& chk : lat.checks) {
                if (!chk.is_x) continue;
                int data = chk.data[dir_x[j]];
                if (data >= 0) ins.push_back({Op::Cz, chk.ancilla, data, chk.check_id, t});
            }
        }
        for (int q = 0; q < lat.n_data; ++q) ins.push_back({Op::Hadamard, q, -1, -1, t});
        // Free-run shuttling home after the closing Hadamard.
        for (int j = 0; j < 4; ++j)
            for (int q = 0; q < lat.n_data; ++q) ins.push_back({Op::RashbaEdge, q, -1, -1, t});
        for (const auto& chk : lat.checks)
            if (chk.is_x) {
                ins.push_back({Op::Dephase, chk.ancilla, -1, -1, t});
                ins.push_back({Op::MeasAnc, chk.ancilla, -1, chk.check_id, t});
            }

        for (int q = 0; q < lat.n_data; ++q) ins.push_back({Op::Dephase, q, -1, -1, t});
        for (int q = 0; q < lat.n_qubits(); ++q) ins.push_back({Op::LeakEnd, q, -1, -1, t});
    }
    return sched;
}

}  // namespace loopline::qec
