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
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <vector>

namespace loopline::qec {

/// Exact maximum-weight general matching (primal-dual blossom algorithm,
/// dense O(n^3)). Weights are 64-bit integers; duals are kept integral by
/// doubling every weight internally.
class WeightedBlossom {
  public:
    /// weights[u][v] < 0 marks an absent edge. Returns the mate of every
    /// vertex (-1 if unmatched) maximizing total weight over present edges.
    static std::vector<int> max_weight_matching(const std::vector<std::vector<std::int64_t>>& w) {
        WeightedBlossom solver(w);
        solver.run();
        std::vector<int> mate(w.size(), -1);
        for (int u = 1; u <= solver.n_; ++u)
            if (solver.match_[u]) mate[u - 1] = solver.match_[u] - 1;
        return mate;
    }

  private:
    struct Edge {
        int u = 0, v = 0;
        std::int64_t w = 0;
    };

    int n_ = 0;
    int n_x_ = 0;
    std::vector<std::vector<Edge>> g_;
    std::vector<std::int64_t> lab_;
    std::vector<int> match_, slack_, st_, pa_, s_, vis_;
    std::vector<std::vector<int>> flower_;
    std::vector<std::vector<int>> flower_from_;
    std::deque<int> q_;
    int timestamp_ = 0;

    explicit WeightedBlossom(const std::vector<std::vector<std::int64_t>>& w) {
        n_ = static_cast<int>(w.size());
        const int m = n_ * 2 + 1;
        g_.assign(m, std::vector<Edge>(m));
        lab_.assign(m, 0);
        match_.assign(m, 0);
        slack_.assign(m, 0);
        st_.assign(m, 0);
        pa_.assign(m, 0);
        s_.assign(m, 0);
        vis_.assign(m, 0);
        flower_.assign(m, {});
        flower_from_.assign(m, std::vector<int>(n_ + 1, 0));
        for (int u = 1; u <= n_; ++u)
            for (int v = 1; v <= n_; ++v) {
                std::int64_t weight = w[u - 1][v - 1];
                g_[u][v] = Edge{u, v, (u != v && weight >= 0) ? weight * 2 : 0};
            }
    }

    std::int64_t e_delta(const Edge& e) const { return lab_[e.u] + lab_[e.v] - g_[e.u][e.v].w; }

    void update_slack(int u, int x) {
        if (!slack_[x] || e_delta(g_[u][x]) < e_delta(g_[slack_[x]][x])) slack_[x] = u;
    }

    void set_slack(int x) {
        slack_[x] = 0;
        for (int u = 1; u <= n_; ++u)
            if (g_[u][x].w > 0 && st_[u] != x && s_[st_[u]] == 0) update_slack(u, x);
    }

    void q_push(int x) {
        if (x <= n_) {
            q_.push_back(x);
        } else {
            for (int y : flower_[x]) q_push(y);
        }
    }

    void set_st(int x, int b) {
        st_[x] = b;
        if (x > n_)
            for (int y : flower_[x]) set_st(y, b);
    }

    int get_pr(int b, int xr) {
        int pr = static_cast<int>(std::find(flower_[b].begin(), flower_[b].end(), xr) -
                                  flower_[b].begin());
        if (pr % 2 == 1) {
            std::reverse(flower_[b].begin() + 1, flower_[b].end());
            return static_cast<int>(flower_[b].size()) - pr;
        }
        return pr;
    }

    void set_match(int u, int v) {
        match_[u] = g_[u][v].v;
        if (u <= n_) return;
        Edge e = g_[u][v];
        int xr = flower_from_[u][e.u];
        int pr = get_pr(u, xr);
        for (int i = 0; i < pr; ++i) set_match(flower_[u][i], flower_[u][i ^ 1]);
        set_match(xr, v);
        std::rotate(flower_[u].begin(), flower_[u].begin() + pr, flower_[u].end());
    }

    void augment(int u, int v) {
        while (true) {
            int xnv = st_[match_[u]];
            set_match(u, v);
            if (!xnv) return;
            set_match(xnv, st_[pa_[xnv]]);
            u = st_[pa_[xnv]];
            v = xnv;
        }
    }

    int get_lca(int u, int v) {
        for (++timestamp_; u || v; std::swap(u, v)) {
            if (u == 0) continue;
            if (vis_[u] == timestamp_) return u;
            vis_[u] = timestamp_;
            u = st_[match_[u]];
            if (u) u = st_[pa_[u]];
        }
        return 0;
    }

    void add_blossom(int u, int lca, int v) {
        int b = n_ + 1;
        while (b <= n_x_ && st_[b]) ++b;
        if (b > n_x_) ++n_x_;
        lab_[b] = 0;
        s_[b] = 0;
        match_[b] = match_[lca];
        flower_[b].clear();
        flower_[b].push_back(lca);
        for (int x = u, y; x != lca; x = st_[pa_[y]]) {
            flower_[b].push_back(x);
            y = st_[match_[x]];
            flower_[b].push_back(y);
            q_push(y);
        }
        std::reverse(flower_[b].begin() + 1, flower_[b].end());
        for (int x = v, y; x != lca; x = st_[pa_[y]]) {
            flower_[b].push_back(x);
            y = st_[match_[x]];
            flower_[b].push_back(y);
            q_push(y);
        }
        set_st(b, b);
        for (int x = 1; x <= n_x_; ++x) {
            g_[b][x].w = 0;
            g_[x][b].w = 0;
        }
        for (int x = 1; x <= n_; ++x) flower_from_[b][x] = 0;
        for (int xs : flower_[b]) {
            if (xs <= n_) {
                flower_from_[b][xs] = xs;
            } else {
                for (int x = 1; x <= n_; ++x)
                    if (flower_from_[xs][x]) flower_from_[b][x] = xs;
            }
            for (int x = 1; x <= n_x_; ++x) {
                if (g_[b][x].w == 0 || e_delta(g_[xs][x]) < e_delta(g_[b][x])) {
                    g_[b][x] = g_[xs][x];
                    g_[x][b] = g_[x][xs];
                }
            }
        }
        set_slack(b);
    }

    void expand_blossom(int b) {
        for (int xs : flower_[b]) set_st(xs, xs);
        int xr = flower_from_[b][g_[b][pa_[b]].u];
        int pr = get_pr(b, xr);
        for (int i = 0; i < pr; i += 2) {
            int xs = flower_[b][i];
            int xns = flower_[b][i + 1];
            pa_[xs] = g_[xns][xs].u;
            s_[xs] = 1;
            s_[xns] = 0;
            slack_[xs] = 0;
            set_slack(xns);
            q_push(xns);
        }
        s_[xr] = 1;
        pa_[xr] = pa_[b];
        for (std::size_t i = pr + 1; i < flower_[b].size(); ++i) {
            int xs = flower_[b][i];
            s_[xs] = -1;
            set_slack(xs);
        }
        st_[b] = 0;
    }

    bool on_found_edge(const Edge& e) {
        int u = st_[e.u];
        int v = st_[e.v];
        if (s_[v] == -1) {
            pa_[v] = e.u;
            s_[v] = 1;
            int nu = st_[match_[v]];
            slack_[v] = 0;
            slack_[nu] = 0;
            s_[nu] = 0;
            q_push(nu);
        } else if (s_[v] == 0) {
            int lca = get_lca(u, v);
            if (!lca) {
                augment(u, v);
                augment(v, u);
                return true;
            }
            add_blossom(u, lca, v);
        }
        return false;
    }

    bool matching() {
        std::fill(s_.begin(), s_.begin() + n_x_ + 1, -1);
        std::fill(slack_.begin(), slack_.begin() + n_x_ + 1, 0);
        q_.clear();
        for (int x = 1; x <= n_x_; ++x) {
            if (st_[x] == x && !match_[x]) {
                pa_[x] = 0;
                s_[x] = 0;
                q_push(x);
            }
        }
        if (q_.empty()) return false;
        while (true) {
            while (!q_.empty()) {
                int u = q_.front();
                q_.pop_front();
                if (s_[st_[u]] == 1) continue;
                for (int v = 1; v <= n_; ++v) {
                    if (g_[u][v].w > 0 && st_[u] != st_[v]) {
                        if (e_delta(g_[u][v]) == 0) {
                            if (on_found_edge(g_[u][v])) return true;
                        } else {
                            update_slack(u, st_[v]);
                        }
                    }
                }
            }
            std::int64_t d = -1;
            for (int b = n_ + 1; b <= n_x_; ++b)
                if (st_[b] == b && s_[b] == 1) {
                    std::int64_t cand = lab_[b] / 2;
                    if (d == -1 || cand < d) d = cand;
                }
            for (int x = 1; x <= n_x_; ++x) {
                if (st_[x] == x && slack_[x]) {
                    std::int64_t delta = e_delta(g_[slack_[x]][x]);
                    if (s_[x] == -1) {
                        if (d == -1 || delta < d) d = delta;
                    } else if (s_[x] == 0) {
                        if (d == -1 || delta / 2 < d) d = delta / 2;
                    }
                }
            }
            if (d == -1) return false;  // no way to grow any alternating tree
            for (int u = 1; u <= n_; ++u) {
                if (s_[st_[u]] == 0) {
                    if (lab_[u] <= d) return false;  // dual would go nonpositive: stop
                    lab_[u] -= d;
                } else if (s_[st_[u]] == 1) {
                    lab_[u] += d;
                }
            }
            for (int b = n_ + 1; b <= n_x_; ++b) {
                if (st_[b] == b && s_[b] != -1) {
                    if (s_[b] == 0)
                        lab_[b] += d * 2;
                    else
                        lab_[b] -= d * 2;
                }
            }
            q_.clear();
            for (int x = 1; x <= n_x_; ++x) {
                if (st_[x] == x && slack_[x] && st_[slack_[x]] != x &&
                    e_delta(g_[slack_[x]][x]) == 0) {
                    if (on_found_edge(g_[slack_[x]][x])) return true;
                }
            }
            for (int b = n_ + 1; b <= n_x_; ++b) {
                if (st_[b] == b && s_[b] == 1 && lab_[b] == 0) expand_blossom(b);
            }
        }
    }

    void run() {
        n_x_ = n_;
        std::int64_t w_max = 0;
        for (int u = 1; u <= n_; ++u) {
            st_[u] = u;
            flower_[u].clear();
            for (int v = 1; v <= n_; ++v) {
                flower_from_[u][v] = (u == v) ? u : 0;
                w_max = std::max(w_max, g_[u][v].w);
            }
        }
        for (int u = 1; u <= n_; ++u) lab_[u] = w_max;
        while (matching()) {
        }
    }
};

/// Minimum-weight perfect matching over present (non-negative) edges.
/// Throws when no perfect matching over present edges exists.
inline std::vector<int> min_weight_perfect_matching(
    const std::vector<std::vector<std::int64_t>>& weights, std::int64_t* total = nullptr) {
    const int n = static_cast<int>(weights.size());
    if (n % 2 != 0) throw std::invalid_argument("perfect matching needs an even vertex count");
    if (n == 0) {
        if (total) *total = 0;
        return {};
    }
    std::int64_t w_max = 1;
    for (const auto& row : weights)
        for (std::int64_t w : row) w_max = std::max(w_max, w);
    // Transform so present edges dominate: maximizing (big - w) over exactly
    // n/2 edges minimizes total w, and any matching that uses an absent edge
    // scores below every all-present perfect matching.
    const std::int64_t big = (w_max + 1) * (n + 1);
    std::vector<std::vector<std::int64_t>> t(n, std::vector<std::int64_t>(n, -1));
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v && weights[u][v] >= 0) t[u][v] = big - weights[u][v];
    std::vector<int> mate = WeightedBlossom::max_weight_matching(t);
    std::int64_t sum = 0;
    for (int u = 0; u < n; ++u) {
        if (mate[u] < 0 || (mate[u] >= 0 && weights[u][mate[u]] < 0))
            throw std::runtime_error("no perfect matching over present edges");
        if (u < mate[u]) sum += weights[u][mate[u]];
    }
    if (total) *total = sum;
    return mate;
}

}  // namespace loopline::qec
