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
#include <unordered_map>
#include <vector>

#include "loopline/qec/faults.hpp"
#include "loopline/rng.hpp"

namespace loopline::qec {

struct ShotRecord {
    std::vector<std::uint8_t> outcome_flips;  // (check, cycle) readout flips
    std::vector<std::uint8_t> detectors;      // (check, layer) incl. the final layer
    bool zbar_flip = false;                   // actual Z-logical readout flip
    bool xbar_flip = false;                   // actual X-logical readout flip
    std::uint64_t seed = 0;
    std::uint64_t shot = 0;
};

/// Pauli-frame propagation of one noisy memory experiment. Randomness is
/// drawn from a counter-based stream keyed by (seed, shot), so records are
/// reproducible and independent of threading.
inline ShotRecord sample_shot(const CircuitSchedule& sched, const NoiseModel& noise,
                              std::uint64_t seed, std::uint64_t shot,
                              detail::FrameScratch* scratch_opt = nullptr) {
    noise.validate();
    detail::FrameScratch local;
    detail::FrameScratch& w = scratch_opt ? *scratch_opt : local;
    w.reset(sched);
    CounterRng rng(seed, shot);

    const int n_checks = sched.n_checks();
    const double p_cz = noise.p;
    const double p_1q = noise.p / 10.0;
    const double p_init = 2.0 * noise.p / 3.0;
    const double p_meas = noise.meas_convention == MeasConvention::DepolarizeThenMeasure
                              ? 2.0 * noise.p / 3.0
                              : noise.p;
    const double p_rash_edge = noise.p_rash / 8.0;

    auto depol1 = [&](int q) {
        // one of {X, Y, Z} uniformly
        switch (rng.next_below(3)) {
            case 0: w.fx[q] ^= 1; break;
            case 1: w.fx[q] ^= 1; w.fz[q] ^= 1; break;
            default: w.fz[q] ^= 1; break;
        }
    };

    for (const Instruction& op : sched.instructions) {
        switch (op.op) {
            case Op::Hadamard:
                std::swap(w.fx[op.a], w.fz[op.a]);
                if (p_1q > 0 && rng.bernoulli(p_1q)) depol1(op.a);
                break;
            case Op::Cz: {
                bool la = w.leaked[op.a], lb = w.leaked[op.b];
                if (!la && !lb) {
                    w.fz[op.a] ^= w.fx[op.b];
                    w.fz[op.b] ^= w.fx[op.a];
                } else {
                    // A leaked participant scrambles its partner instead of
                    // enacting the gate.
                    if (!la) {
                        w.fx[op.a] ^= rng.next_below(2);
                        w.fz[op.a] ^= rng.next_below(2);
                    }
                    if (!lb) {
                        w.fx[op.b] ^= rng.next_below(2);
                        w.fz[op.b] ^= rng.next_below(2);
                    }
                }
                if (p_cz > 0 && rng.bernoulli(p_cz)) {
                    int pauli = 1 + static_cast<int>(rng.next_below(15));
                    int pa = pauli & 3, pb = pauli >> 2;
                    w.fx[op.a] ^= pa & 1;
                    w.fz[op.a] ^= (pa >> 1) & 1;
                    w.fx[op.b] ^= pb & 1;
                    w.fz[op.b] ^= (pb >> 1) & 1;
                }
                break;
            }
            case Op::InitAnc:
                w.fx[op.a] = 0;
                w.fz[op.a] = 0;
                if (p_init > 0 && rng.bernoulli(p_init)) w.fz[op.a] ^= 1;
                break;
            case Op::MeasAnc: {
                std::uint8_t flip = w.fz[op.a];
                if (p_meas > 0 && rng.bernoulli(p_meas)) flip ^= 1;
                if (w.leaked[op.a]) flip ^= static_cast<std::uint8_t>(rng.next_below(2));
                w.outcome[op.time * n_checks + op.check] = flip;
                break;
            }
            case Op::Dephase:
                if (noise.p_sh > 0 && rng.bernoulli(noise.p_sh)) w.fz[op.a] ^= 1;
                if (p_1q > 0 && rng.bernoulli(p_1q)) depol1(op.a);
                break;
            case Op::RashbaEdge:
                if (p_rash_edge > 0) {
                    double u = rng.next_double();
                    if (u < p_rash_edge) {
                        w.fx[op.a] ^= 1;
                    } else if (u < 2 * p_rash_edge) {
                        w.fx[op.a] ^= 1;
                        w.fz[op.a] ^= 1;
                    }
                }
                break;
            case Op::LeakFlag:
                if (noise.p_leak > 0 && rng.bernoulli(noise.p_leak)) w.leaked[op.a] = 1;
                break;
            case Op::LeakEnd:
                if (w.leaked[op.a]) {
                    w.fx[op.a] ^= rng.next_below(2);
                    w.fz[op.a] ^= rng.next_below(2);
                    w.leaked[op.a] = 0;
                }
                break;
        }
    }

    ShotRecord rec;
    rec.seed = seed;
    rec.shot = shot;
    rec.outcome_flips = w.outcome;
    rec.detectors.assign(sched.n_detectors(), 0);
    bool zb = false, xb = false;
    detail::extract(
        sched, w,
        [&](int check, int layer) { rec.detectors[sched.detector_index(check, layer)] = 1; },
        &zb, &xb);
    rec.zbar_flip = zb;
    rec.xbar_flip = xb;
    return rec;
}

/// Exact marginal firing rate of every detector, computed as an
/// independent-sources parity product over the enumerated fault atoms:
/// P(detector odd) = (1 - prod_sources (1 - 2 q_src)) / 2. Within one
/// categorical source the outcome probabilities add; a leakage source
/// contributes p_leak/2 once any of its coins touches the detector. This is
/// the analytic oracle that sample_shot is validated against.
inline std::vector<double> analytic_detector_rates(const FaultModel& model,
                                                   const NoiseModel& noise) {
    const CircuitSchedule& sc = model.sched;
    const int n_det = sc.n_detectors();
    std::vector<std::unordered_map<std::int32_t, double>> per_det(n_det);
    for (std::size_t ai = 0; ai < model.atoms.size(); ++ai) {
        const FaultAtom& a = model.atoms[ai];
        double q = atom_probability(a.cls, noise);
        if (q <= 0) continue;
        const AtomFootprint& fp = model.footprints[ai];
        for (int sector = 0; sector < 2; ++sector) {
            for (int k = 0; k < fp.det_count[sector]; ++k) {
                auto& m = per_det[fp.det[sector][k]];
                if (model.source_is_leak[a.source]) {
                    m[a.source] = noise.p_leak / 2.0;
                } else {
                    m[a.source] += q;
                }
            }
        }
    }
    std::vector<double> rates(n_det, 0.0);
    for (int det = 0; det < n_det; ++det) {
        double prod = 1.0;
        for (const auto& [src, q] : per_det[det]) prod *= (1.0 - 2.0 * q);
        rates[det] = 0.5 * (1.0 - prod);
    }
    return rates;
}

}  // namespace loopline::qec
