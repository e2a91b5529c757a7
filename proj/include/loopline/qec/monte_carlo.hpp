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

#include <cmath>
#include <thread>
#include <vector>

#include "loopline/qec/graph.hpp"
#include "loopline/qec/sampler.hpp"

namespace loopline::qec {

struct RateResult {
    std::int64_t shots = 0;
    std::int64_t fails_either = 0;
    std::int64_t fails_z = 0;  // mispredicted Z-logical readout
    std::int64_t fails_x = 0;  // mispredicted X-logical readout

    double rate() const { return static_cast<double>(fails_either) / std::max<std::int64_t>(shots, 1); }
    double rate_z() const { return static_cast<double>(fails_z) / std::max<std::int64_t>(shots, 1); }
    double rate_x() const { return static_cast<double>(fails_x) / std::max<std::int64_t>(shots, 1); }
    double stderr_rate() const {
        double r = rate();
        return std::sqrt(std::max(r * (1.0 - r), 0.0) / std::max<std::int64_t>(shots, 1));
    }
};

/// Samples and decodes one shot; returns per-sector misprediction flags.
inline void decode_shot(const FaultModel& model, const DecodingGraph& graph,
                        const NoiseModel& noise, std::uint64_t seed, std::uint64_t shot,
                        detail::FrameScratch& scratch, bool* fail_z, bool* fail_x) {
    const CircuitSchedule& sc = model.sched;
    ShotRecord rec = sample_shot(sc, noise, seed, shot, &scratch);
    std::vector<int> defects[2];
    const int n_checks = sc.n_checks();
    for (int det = 0; det < sc.n_detectors(); ++det) {
        if (!rec.detectors[det]) continue;
        int check = det % n_checks;
        int sector = model.sector_of_check(check);
        defects[sector].push_back(model.sector_node(check, det / n_checks));
    }
    bool pred_z = decode_sector(graph.sector[0], defects[0]);
    bool pred_x = decode_sector(graph.sector[1], defects[1]);
    *fail_z = pred_z != rec.zbar_flip;
    *fail_x = pred_x != rec.xbar_flip;
}

/// Logical error rate over a batch of shots: the fraction of shots where the
/// decoder's prediction differs from the actual flip of either logical
/// operator. Shots are independent counter-seeded streams, so the result is
/// identical for any thread count.
inline RateResult logical_error_rate(const FaultModel& model, const DecodingGraph& graph,
                                     const NoiseModel& noise, std::int64_t shots,
                                     std::uint64_t seed, int threads = 1) {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    if (threads < 1) threads = 1;
    std::vector<RateResult> partial(threads);
    auto worker = [&](int tid) {
        detail::FrameScratch scratch;
        RateResult& acc = partial[tid];
        for (std::int64_t s = tid; s < shots; s += threads) {
            bool fz = false, fx = false;
            decode_shot(model, graph, noise, seed, static_cast<std::uint64_t>(s), scratch, &fz,
                        &fx);
            acc.shots++;
            acc.fails_z += fz;
            acc.fails_x += fx;
            acc.fails_either += (fz || fx);
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    RateResult total;
    for (const RateResult& p : partial) {
        total.shots += p.shots;
        total.fails_either += p.fails_either;
        total.fails_z += p.fails_z;
        total.fails_x += p.fails_x;
    }
    return total;
}

}  // namespace loopline::qec
