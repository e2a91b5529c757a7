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

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "loopline/qec/schedule.hpp"

namespace loopline::qec {

/// Probability classes of single-fault events. An atom's probability is a
/// fixed function of the noise model; the circuit position and effect are
/// frozen in the structure.
enum class FaultClass : std::uint8_t {
    CzDepol,            // one of the 15 two-qubit Paulis, p/15 each
    Gate1Depol,         // one of {X,Y,Z} after a single-qubit gate, p/30 each
    InitFlip,           // |+> prepared flipped: Z after init, 2p/3
    MeasDepolFlip,      // outcome flip from depolarize-then-measure, 2p/3
    MeasClassicalFlip,  // outcome flip, p (classical-flip convention)
    DephaseZ,           // residual shuttling dephasing, p_sh
    TwirlDepol,         // twirl-gate noise, one of {X,Y,Z}, p/30 each
    RashbaPauli,        // X or Y per loop edge, p_rash/8 each
    LeakCoin,           // one constituent coin of a leakage event, p_leak/2
};

inline double atom_probability(FaultClass cls, const NoiseModel& noise) {
    switch (cls) {
        case FaultClass::CzDepol: return noise.p / 15.0;
        case FaultClass::Gate1Depol: return noise.p / 30.0;
        case FaultClass::InitFlip: return 2.0 * noise.p / 3.0;
        case FaultClass::MeasDepolFlip:
            return noise.meas_convention == MeasConvention::DepolarizeThenMeasure
                       ? 2.0 * noise.p / 3.0
                       : 0.0;
        case FaultClass::MeasClassicalFlip:
            return noise.meas_convention == MeasConvention::ClassicalFlip ? noise.p : 0.0;
        case FaultClass::DephaseZ: return noise.p_sh;
        case FaultClass::TwirlDepol: return noise.p / 30.0;
        case FaultClass::RashbaPauli: return noise.p_rash / 8.0;
        case FaultClass::LeakCoin: return noise.p_leak / 2.0;
    }
    return 0.0;
}

struct FaultAtom {
    std::int32_t source = -1;  // independent-event grouping
    FaultClass cls = FaultClass::CzDepol;
    std::int32_t pos = 0;  // Pauli applied just before executing this instruction
    std::int32_t qubit = -1;
    std::uint8_t px = 0, pz = 0;
    std::int32_t qubit2 = -1;  // second leg of a two-qubit fault
    std::uint8_t px2 = 0, pz2 = 0;
    std::int32_t flip_check = -1, flip_time = -1;  // direct outcome flip
};

/// Detector and logical footprint of one atom, split by sector. Sector 0
/// holds Z-check detectors (they see X errors and guard the Z logical
/// readout); sector 1 holds X-check detectors (Z errors, X logical readout).
/// Detector entries are global indices (layer * n_checks + check).
struct AtomFootprint {
    std::array<std::array<std::int32_t, 2>, 2> det{{{-1, -1}, {-1, -1}}};
    std::array<std::uint8_t, 2> det_count{0, 0};
    std::array<std::uint8_t, 2> logical{0, 0};
};

struct FaultModel {
    CircuitSchedule sched;
    std::vector<FaultAtom> atoms;
    std::vector<AtomFootprint> footprints;
    std::int32_t n_sources = 0;
    std::vector<std::uint8_t> source_is_leak;

    int sector_of_check(int check) const {
        return sched.lattice.check_is_x(check) ? 1 : 0;
    }
    int sector_node_count(int sector) const {
        int per_layer = sector == 0 ? sched.lattice.n_checks_z : sched.lattice.n_checks_x;
        return per_layer * (sched.cycles + 1);
    }
    /// Node index of detector (check, layer) inside its sector.
    int sector_node(int check, int layer) const {
        const auto& lat = sched.lattice;
        if (lat.check_is_x(check)) return layer * lat.n_checks_x + check;
        return layer * lat.n_checks_z + (check - lat.n_checks_x);
    }
};

namespace detail {

/// Scratch buffers for frame propagation, reusable across atoms and shots.
struct FrameScratch {
    std::vector<std::uint8_t> fx, fz, outcome, leaked;

    void reset(const CircuitSchedule& sched) {
        fx.assign(sched.n_qubits(), 0);
        fz.assign(sched.n_qubits(), 0);
        outcome.assign(sched.n_outcomes(), 0);
        leaked.assign(sched.n_qubits(), 0);
    }
};

/// Noiseless frame propagation from instruction `start` to the end.
inline void propagate(const CircuitSchedule& sched, std::size_t start, FrameScratch& w) {
    const auto& ins = sched.instructions;
    const int n_checks = sched.n_checks();
    for (std::size_t i = start; i < ins.size(); ++i) {
        const Instruction& op = ins[i];
        switch (op.op) {
            case Op::Hadamard: std::swap(w.fx[op.a], w.fz[op.a]); break;
            case Op::Cz:
                w.fz[op.a] ^= w.fx[op.b];
                w.fz[op.b] ^= w.fx[op.a];
                break;
            case Op::InitAnc:
                w.fx[op.a] = 0;
                w.fz[op.a] = 0;
                break;
            case Op::MeasAnc:
                w.outcome[op.time * n_checks + op.check] ^= w.fz[op.a];
                break;
            default: break;
        }
    }
}

/// Reads the detector flips and logical flips out of a walked frame.
template <typename DetectorSink>
inline void extract(const CircuitSchedule& sched, const FrameScratch& w, DetectorSink&& sink,
                    bool* zbar_flip, bool* xbar_flip) {
    const auto& lat = sched.lattice;
    const int n_checks = sched.n_checks();
    for (int c = 0; c < n_checks; ++c) {
        const auto& chk = lat.checks[c];
        std::uint8_t final_flip = 0;
        for (int dq : chk.data)
            if (dq >= 0) final_flip ^= chk.is_x ? w.fz[dq] : w.fx[dq];
        std::uint8_t prev = 0;
        for (int t = 0; t < sched.cycles; ++t) {
            std::uint8_t cur = w.outcome[t * n_checks + c];
            if (cur ^ prev) sink(c, t);
            prev = cur;
        }
        if (prev ^ final_flip) sink(c, sched.cycles);
    }
    bool zb = false, xb = false;
    for (int q : lat.zbar_support) zb ^= w.fx[q];
    for (int q : lat.xbar_support) xb ^= w.fz[q];
    if (zbar_flip) *zbar_flip = zb;
    if (xbar_flip) *xbar_flip = xb;
}

}  // namespace detail

/// Enumerates every single-fault atom of the schedule and its detector and
/// logical footprint. Throws if any atom touches more than two detectors in
/// one sector, which the check structure rules out.
inline FaultModel build_fault_model(CircuitSchedule sched) {
    FaultModel model;
    model.sched = std::move(sched);
    const CircuitSchedule& sc = model.sched;
    const auto& ins = sc.instructions;

    // Leak sources are shared by coins spread over a whole cycle.
    std::vector<std::int32_t> leak_source(
        static_cast<std::size_t>(sc.n_qubits()) * sc.cycles, -1);
    auto leak_source_of = [&](int qubit, int t) -> std::int32_t {
        auto idx = static_cast<std::size_t>(t) * sc.n_qubits() + qubit;
        if (leak_source[idx] < 0) {
            leak_source[idx] = model.n_sources++;
            model.source_is_leak.push_back(1);
        }
        return leak_source[idx];
    };
    auto fresh_source = [&]() {
        model.source_is_leak.push_back(0);
        return model.n_sources++;
    };

    auto pauli_atom = [&](std::int32_t source, FaultClass cls, std::size_t pos, int qubit,
                          int px, int pz) {
        FaultAtom a;
        a.source = source;
        a.cls = cls;
        a.pos = static_cast<std::int32_t>(pos);
        a.qubit = qubit;
        a.px = static_cast<std::uint8_t>(px);
        a.pz = static_cast<std::uint8_t>(pz);
        model.atoms.push_back(a);
    };
    auto flip_atom = [&](std::int32_t source, FaultClass cls, int check, int t) {
        FaultAtom a;
        a.source = source;
        a.cls = cls;
        a.flip_check = check;
        a.flip_time = t;
        model.atoms.push_back(a);
    };

    for (std::size_t i = 0; i < ins.size(); ++i) {
        const Instruction& op = ins[i];
        switch (op.op) {
            case Op::Hadamard: {
                std::int32_t s = fresh_source();
                pauli_atom(s, FaultClass::Gate1Depol, i + 1, op.a, 1, 0);
                pauli_atom(s, FaultClass::Gate1Depol, i + 1, op.a, 1, 1);
                pauli_atom(s, FaultClass::Gate1Depol, i + 1, op.a, 0, 1);
                break;
            }
            case Op::Cz: {
                std::int32_t s = fresh_source();
                for (int pa = 0; pa < 4; ++pa)
                    for (int pb = 0; pb < 4; ++pb) {
                        if (pa == 0 && pb == 0) continue;
                        FaultAtom a;
                        a.source = s;
                        a.cls = FaultClass::CzDepol;
                        a.pos = static_cast<std::int32_t>(i + 1);
                        a.qubit = op.a;
                        a.px = static_cast<std::uint8_t>(pa & 1);
                        a.pz = static_cast<std::uint8_t>(pa >> 1);
                        a.qubit2 = op.b;
                        a.px2 = static_cast<std::uint8_t>(pb & 1);
                        a.pz2 = static_cast<std::uint8_t>(pb >> 1);
                        model.atoms.push_back(a);
                    }
                // Leakage of either participant damages the other.
                std::int32_t sa = leak_source_of(op.a, op.time);
                pauli_atom(sa, FaultClass::LeakCoin, i + 1, op.b, 1, 0);
                pauli_atom(sa, FaultClass::LeakCoin, i + 1, op.b, 0, 1);
                std::int32_t sb = leak_source_of(op.b, op.time);
                pauli_atom(sb, FaultClass::LeakCoin, i + 1, op.a, 1, 0);
                pauli_atom(sb, FaultClass::LeakCoin, i + 1, op.a, 0, 1);
                break;
            }
            case Op::InitAnc:
                pauli_atom(fresh_source(), FaultClass::InitFlip, i + 1, op.a, 0, 1);
                break;
            case Op::MeasAnc: {
                flip_atom(fresh_source(), FaultClass::MeasDepolFlip, op.check, op.time);
                flip_atom(fresh_source(), FaultClass::MeasClassicalFlip, op.check, op.time);
                flip_atom(leak_source_of(op.a, op.time), FaultClass::LeakCoin, op.check, op.time);
                break;
            }
            case Op::Dephase: {
                pauli_atom(fresh_source(), FaultClass::DephaseZ, i + 1, op.a, 0, 1);
                std::int32_t s = fresh_source();
                pauli_atom(s, FaultClass::TwirlDepol, i + 1, op.a, 1, 0);
                pauli_atom(s, FaultClass::TwirlDepol, i + 1, op.a, 1, 1);
                pauli_atom(s, FaultClass::TwirlDepol, i + 1, op.a, 0, 1);
                break;
            }
            case Op::RashbaEdge: {
                std::int32_t s = fresh_source();
                pauli_atom(s, FaultClass::RashbaPauli, i + 1, op.a, 1, 0);
                pauli_atom(s, FaultClass::RashbaPauli, i + 1, op.a, 1, 1);
                break;
            }
            case Op::LeakFlag: break;
            case Op::LeakEnd: {
                std::int32_t s = leak_source_of(op.a, op.time);
                pauli_atom(s, FaultClass::LeakCoin, i, op.a, 1, 0);
                pauli_atom(s, FaultClass::LeakCoin, i, op.a, 0, 1);
                break;
            }
        }
    }

    // Walk every atom through the noiseless remainder of the circuit.
    detail::FrameScratch scratch;
    model.footprints.resize(model.atoms.size());
    for (std::size_t ai = 0; ai < model.atoms.size(); ++ai) {
        const FaultAtom& a = model.atoms[ai];
        scratch.reset(sc);
        if (a.qubit >= 0) {
            scratch.fx[a.qubit] ^= a.px;
            scratch.fz[a.qubit] ^= a.pz;
            if (a.qubit2 >= 0) {
                scratch.fx[a.qubit2] ^= a.px2;
                scratch.fz[a.qubit2] ^= a.pz2;
            }
            detail::propagate(sc, a.pos, scratch);
        } else {
            scratch.outcome[a.flip_time * sc.n_checks() + a.flip_check] ^= 1;
        }
        AtomFootprint& fp = model.footprints[ai];
        bool zb = false, xb = false;
        detail::extract(
            sc, scratch,
            [&](int check, int layer) {
                int sector = model.sector_of_check(check);
                if (fp.det_count[sector] >= 2)
                    throw std::logic_error("single fault flips more than two detectors");
                fp.det[sector][fp.det_count[sector]++] =
                    static_cast<std::int32_t>(sc.detector_index(check, layer));
            },
            &zb, &xb);
        fp.logical[0] = zb ? 1 : 0;
        fp.logical[1] = xb ? 1 : 0;
        if ((fp.logical[0] && fp.det_count[0] == 0) || (fp.logical[1] && fp.det_count[1] == 0))
            throw std::logic_error("undetectable single fault flips a logical");
    }
    return model;
}

}  // namespace loopline::qec
