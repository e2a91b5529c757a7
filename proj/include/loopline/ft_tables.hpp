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
#include <stdexcept>
#include <string>
#include <vector>

#include "loopline/code_cycle.hpp"
#include "loopline/rational.hpp"

namespace loopline {

enum class LogicalOp { H, S, CnotSurgery, CnotTransversal, TInit, PauliInit, PauliMeas };

/// Code-cycle count of a logical operation, affine in the code distance.
struct CycleCost {
    std::int64_t per_d = 0;
    std::int64_t constant = 0;

    std::int64_t at(int d) const { return per_d * d + constant; }
    friend bool operator==(const CycleCost&, const CycleCost&) = default;
};

inline CycleCost logical_op_cost(CodeFamily code, LogicalOp op) {
    const bool surface = code == CodeFamily::Surface;
    switch (op) {
        case LogicalOp::H: return surface ? CycleCost{3, 0} : CycleCost{0, 0};
        case LogicalOp::S: return surface ? CycleCost{1, 0} : CycleCost{0, 0};
        case LogicalOp::CnotSurgery: return {2, 0};
        case LogicalOp::CnotTransversal: return {0, 0};
        case LogicalOp::TInit: return {0, 6};
        case LogicalOp::PauliInit: return {0, 0};
        case LogicalOp::PauliMeas: return {0, 0};
    }
    throw std::invalid_argument("unknown logical op");
}

/// The two fifteen-to-one distillation circuit layouts: a wide shallow one
/// consuming all noisy T states in parallel, and a narrow deep one consuming
/// them in three rounds of five.
enum class DistillCircuit { WideShallow, NarrowDeep };

struct CircuitSummary {
    int logical_qubits = 0;
    int multi_target_cnot_rounds = 0;
    int teleport_rounds = 0;
    int t_rounds = 0;
    int t_states_per_round = 0;
    int noisy_t_inputs = 15;
};

inline CircuitSummary scheme_circuit_summary(DistillCircuit c) {
    if (c == DistillCircuit::WideShallow) {
        CircuitSummary s;
        s.logical_qubits = 31;
        s.multi_target_cnot_rounds = 5;
        s.teleport_rounds = 1;
        s.t_rounds = 1;
        s.t_states_per_round = 15;
        return s;
    }
    CircuitSummary s;
    s.logical_qubits = 10;
    s.t_rounds = 3;
    s.t_states_per_round = 5;
    s.teleport_rounds = 3;
    return s;
}

/// Code cycles needed for one fifteen-to-one distillation run with k layers
/// per stack.
inline CycleCost msd_cycles(CodeFamily code, int k) {
    const bool surface = code == CodeFamily::Surface;
    switch (k) {
        case 1: return surface ? CycleCost{13, 0} : CycleCost{12, 0};
        case 5: return surface ? CycleCost{9, 0} : CycleCost{6, 0};
        case 10: return surface ? CycleCost{3, 0} : CycleCost{1, 0};
        default: throw std::invalid_argument("supported layer counts are 1, 5 and 10");
    }
}

/// Loop arrays (stacks) needed for one distillation unit with k layers.
inline int msd_stacks(int k) {
    switch (k) {
        case 1: return 50;  // 31 data patches plus ancilla space of similar order
        case 5: return 3;
        case 10: return 1;
        default: throw std::invalid_argument("supported layer counts are 1, 5 and 10");
    }
}

inline DistillCircuit msd_circuit(int k) {
    return k == 1 ? DistillCircuit::WideShallow : DistillCircuit::NarrowDeep;
}

struct DistillationScheme {
    int layers = 1;
    int stacks = 50;
    CycleCost cycles;
    DistillCircuit circuit = DistillCircuit::WideShallow;
};

inline DistillationScheme distillation_scheme(CodeFamily code, int k) {
    return {k, msd_stacks(k), msd_cycles(code, k), msd_circuit(k)};
}

struct SavingReport {
    Rat space_factor{1};
    Rat time_factor{1};
    Rat spacetime_factor{1};
    std::string assumptions;
};

/// Space-time saving of the k-layer distillation scheme against the
/// unpipelined one-layer baseline. The overhead of a scheme is the product
/// of its stack count, cycle count and cycle time; factors divide the
/// baseline overhead by the scheme overhead.
inline SavingReport msd_spacetime(CodeFamily code, int k, int d, Rat t_cycle_k, Rat t_cycle_1) {
    if (d < 1) throw std::invalid_argument("distance must be >= 1");
    if (t_cycle_k <= Rat(0) || t_cycle_1 <= Rat(0))
        throw std::invalid_argument("cycle times must be positive");
    DistillationScheme scheme = distillation_scheme(code, k);
    DistillationScheme base = distillation_scheme(code, 1);
    SavingReport r;
    r.space_factor = Rat(base.stacks, scheme.stacks);
    r.time_factor = (Rat(base.cycles.at(d)) * t_cycle_1) / (Rat(scheme.cycles.at(d)) * t_cycle_k);
    r.spacetime_factor = r.space_factor * r.time_factor;
    r.assumptions =
        "distillation acceptance treated as deterministic; stack count for one layer is an "
        "order-of-magnitude estimate treated as exact";
    return r;
}

/// One row of the whole-computation saving table.
struct StageSaving {
    std::string stage;
    Rat space_factor{1};
    Rat time_factor{1};
    std::string time_note;  // set when the time saving is symbolic
};

struct FullFtSavings {
    int k = 1;
    std::vector<StageSaving> stages;
    std::string assumptions;
};

/// Space and time savings per stage of a full surface-code computation:
/// first-round distillation, second-round distillation, and the main
/// computation. Assumes equal cycle times across schemes.
inline FullFtSavings full_ft_savings(int k) {
    FullFtSavings out;
    out.k = k;
    out.assumptions = "equal code cycle times across pipelining schemes";
    if (k == 1) {
        out.stages.push_back({"msd-round-1", Rat(1), Rat(1), ""});
        out.stages.push_back({"msd-round-2", Rat(1), Rat(1), ""});
        out.stages.push_back({"main-computation", Rat(1), Rat(1), ""});
        return out;
    }
    if (k != 5 && k != 10) throw std::invalid_argument("supported layer counts are 1, 5 and 10");
    const std::int64_t d1 = msd_cycles(CodeFamily::Surface, 1).per_d;  // 13
    const std::int64_t dk = msd_cycles(CodeFamily::Surface, k).per_d;
    out.stages.push_back({"msd-round-1", Rat(50, msd_stacks(k)), Rat(d1, dk), ""});
    // Second round: all fifteen input T states must coexist with the
    // distillation code, so the stack count grows and, for ten layers, the
    // cycle count stretches to 7d.
    const int stacks2 = (k == 5) ? 5 : 3;
    const std::int64_t cycles2 = (k == 5) ? 9 : 7;
    out.stages.push_back({"msd-round-2", Rat(50, stacks2), Rat(d1, cycles2), ""});
    out.stages.push_back({"main-computation", Rat(k), Rat(0),
                          "intra-stack CNOTs: O(d); inter-stack CNOTs: <= k"});
    return out;
}

}  // namespace loopline
