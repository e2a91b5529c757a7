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
#include <limits>
#include <map>
#include <queue>
#include <vector>

#include "loopline/qec/faults.hpp"
#include "loopline/qec/matching.hpp"

namespace loopline::qec {

inline constexpr std::int64_t kDistInf = std::numeric_limits<std::int64_t>::max() / 4;
inline constexpr double kWeightScale = 65536.0;

/// Matchable error graph of one sector: detector nodes plus one boundary
/// node, weighted edges from merged single-fault probabilities, and
/// all-pairs shortest paths with the logical parity of each shortest path.
struct SectorGraph {
    int n_nodes = 0;  // real detector nodes; the boundary is node n_nodes
    struct Arc {
        std::int32_t to;
        std::int64_t weight;
        std::uint8_t parity;
    };
    std::vector<std::vector<Arc>> adj;      // size n_nodes + 1
    std::vector<std::vector<std::int64_t>> dist;
    std::vector<std::vector<std::uint8_t>> parity;

    std::int64_t boundary_dist(int u) const { return dist[u][n_nodes]; }
    std::uint8_t boundary_parity(int u) const { return parity[u][n_nodes]; }
};

struct DecodingGraph {
    int cycles = 0;
    int n_checks = 0;
    std::array<SectorGraph, 2> sector;
};

namespace detail {

inline void dijkstra_all_pairs(SectorGraph& g) {
    const int n = g.n_nodes + 1;
    g.dist.assign(n, std::vector<std::int64_t>(n, kDistInf));
    g.parity.assign(n, std::vector<std::uint8_t>(n, 0));
    using Item = std::pair<std::int64_t, int>;
    for (int src = 0; src < n; ++src) {
        auto& dist = g.dist[src];
        auto& par = g.parity[src];
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        dist[src] = 0;
        heap.push({0, src});
        while (!heap.empty()) {
            auto [d, u] = heap.top();
            heap.pop();
            if (d > dist[u]) continue;
            for (const auto& arc : g.adj[u]) {
                std::int64_t nd = d + arc.weight;
                if (nd < dist[arc.to]) {
                    dist[arc.to] = nd;
                    par[arc.to] = par[u] ^ arc.parity;
                    heap.push({nd, arc.to});
                }
            }
        }
    }
}

}  // namespace detail

/// Merges every single-fault atom into sector edge probabilities and
/// produces the weighted matching graph. Requires all fault probabilities
/// below one half so that weights stay positive.
inline DecodingGraph build_decoding_graph(const FaultModel& model, const NoiseModel& noise) {
    noise.validate();
    for (double v : {noise.p, noise.p_sh, noise.p_leak, noise.p_rash})
        if (v >= 0.5) throw std::invalid_argument("fault probabilities must stay below 1/2");

    const CircuitSchedule& sc = model.sched;
    DecodingGraph graph;
    graph.cycles = sc.cycles;
    graph.n_checks = sc.n_checks();

    // Keyed by (u, v, parity) with v == n_nodes meaning the boundary.
    std::array<std::map<std::tuple<int, int, int>, double>, 2> merged;
    std::array<int, 2> n_nodes = {model.sector_node_count(0), model.sector_node_count(1)};

    auto to_sector_node = [&](int det) {
        int layer = det / graph.n_checks;
        int check = det % graph.n_checks;
        return model.sector_node(check, layer);
    };

    for (std::size_t ai = 0; ai < model.atoms.size(); ++ai) {
        double q = atom_probability(model.atoms[ai].cls, noise);
        if (q <= 0.0) continue;
        const AtomFootprint& fp = model.footprints[ai];
        for (int s = 0; s < 2; ++s) {
            if (fp.det_count[s] == 0) continue;
            int u, v;
            if (fp.det_count[s] == 1) {
                u = to_sector_node(fp.det[s][0]);
                v = n_nodes[s];
            } else {
                u = to_sector_node(fp.det[s][0]);
                v = to_sector_node(fp.det[s][1]);
                if (u > v) std::swap(u, v);
            }
            double& acc = merged[s][{u, v, fp.logical[s]}];
            acc = acc + q - 2.0 * acc * q;
        }
    }

    for (int s = 0; s < 2; ++s) {
        SectorGraph& g = graph.sector[s];
        g.n_nodes = n_nodes[s];
        g.adj.assign(g.n_nodes + 1, {});
        for (const auto& [key, q] : merged[s]) {
            auto [u, v, parity] = key;
            if (q <= 0.0) continue;
            double w = std::log((1.0 - q) / q);
            auto weight =
                std::max<std::int64_t>(1, static_cast<std::int64_t>(std::llround(w * kWeightScale)));
            g.adj[u].push_back({v, weight, static_cast<std::uint8_t>(parity)});
            g.adj[v].push_back({u, weight, static_cast<std::uint8_t>(parity)});
        }
        detail::dijkstra_all_pairs(g);
    }
    return graph;
}

/// Minimum-weight perfect matching decode of one sector's defect list.
/// Returns the predicted logical flip. Pairwise path weights may route
/// through the boundary, which realizes separate boundary matchings.
inline bool decode_sector(const SectorGraph& g, const std::vector<int>& defects) {
    if (defects.empty()) return false;
    const int n = static_cast<int>(defects.size());
    const bool odd = n % 2 != 0;
    const int total = n + (odd ? 1 : 0);
    std::vector<std::vector<std::int64_t>> w(total, std::vector<std::int64_t>(total, -1));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            std::int64_t d = g.dist[defects[i]][defects[j]];
            if (d < kDistInf) w[i][j] = w[j][i] = d;
        }
        if (odd) {
            std::int64_t d = g.boundary_dist(defects[i]);
            if (d < kDistInf) w[i][n] = w[n][i] = d;
        }
    }
    std::vector<int> mate = min_weight_perfect_matching(w);
    bool flip = false;
    for (int i = 0; i < n; ++i) {
        int j = mate[i];
        if (j < i) continue;
        if (j == n) {
            flip ^= g.boundary_parity(defects[i]) != 0;
        } else {
            flip ^= g.parity[defects[i]][defects[j]] != 0;
        }
    }
    return flip;
}

/// Minimum matching weight of a defect set (for decoder optimality checks).
inline std::int64_t matching_weight(const SectorGraph& g, const std::vector<int>& defects) {
    if (defects.empty()) return 0;
    const int n = static_cast<int>(defects.size());
    const bool odd = n % 2 != 0;
    const int total = n + (odd ? 1 : 0);
    std::vector<std::vector<std::int64_t>> w(total, std::vector<std::int64_t>(total, -1));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            std::int64_t d = g.dist[defects[i]][defects[j]];
            if (d < kDistInf) w[i][j] = w[j][i] = d;
        }
        if (odd) {
            std::int64_t d = g.boundary_dist(defects[i]);
            if (d < kDistInf) w[i][n] = w[n][i] = d;
        }
    }
    std::int64_t total_weight = 0;
    min_weight_perfect_matching(w, &total_weight);
    return total_weight;
}

}  // namespace loopline::qec
