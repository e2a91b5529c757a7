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

#include <string>

#include <json.hpp>

#include "loopline/pipeline.hpp"

namespace loopline {

inline StepKind step_kind_from_name(const std::string& name) {
    if (name == "shuttle") return StepKind::Shuttle;
    if (name == "gate1q") return StepKind::Gate1Q;
    if (name == "gate2q") return StepKind::Gate2Q;
    if (name == "init") return StepKind::Init;
    if (name == "measure") return StepKind::Measure;
    if (name == "buffer") return StepKind::Buffer;
    throw std::invalid_argument("unknown step kind: " + name);
}

inline nlohmann::json pipeline_to_json(const PipelineSpec& spec) {
    nlohmann::json steps = nlohmann::json::array();
    for (const Step& s : spec.steps) {
        steps.push_back({{"kind", step_kind_name(s.kind)},
                         {"duration_ns", ns_from_ticks(s.duration)},
                         {"on_loop", s.on_loop}});
    }
    nlohmann::json rounds = nlohmann::json::array();
    for (const RoundSpan& r : spec.loop_rounds) rounds.push_back({r.begin, r.end});
    return {{"qubits", spec.qubit_count}, {"steps", steps}, {"rounds", rounds}};
}

inline PipelineSpec pipeline_from_json(const nlohmann::json& j) {
    PipelineSpec spec;
    spec.qubit_count = j.value("qubits", 1);
    for (const auto& js : j.at("steps")) {
        Step s;
        s.kind = step_kind_from_name(js.at("kind").get<std::string>());
        s.duration = ticks_from_ns_f(js.at("duration_ns").get<double>());
        s.on_loop = js.value("on_loop", true);
        spec.steps.push_back(s);
    }
    if (j.contains("rounds")) {
        for (const auto& jr : j.at("rounds"))
            spec.loop_rounds.push_back({jr.at(0).get<std::size_t>(), jr.at(1).get<std::size_t>()});
    }
    spec.validate();
    return spec;
}

}  // namespace loopline
