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
#include <vector>

namespace loopline::qec {

/// Distance-d planar (unrotated) surface code on a (2d-1) x (2d-1) grid.
/// Data qubits sit on sites with even coordinate sum; X checks on odd rows /
/// even columns, Z checks on even rows / odd columns. The Z logical runs
/// down column zero, the X logical across row zero.
struct SurfaceLattice {
    int distance = 0;
    int span = 0;
    int n_data = 0;
    int n_checks_x = 0;
    int n_checks_z = 0;

    /// Data qubit ids 0..n_data-1, then X-check ancillas, then Z-check
    /// ancillas. Check ids order X checks before Z checks.
    struct Check {
        int check_id = -1;
        int ancilla = -1;
        bool is_x = false;
        int row = 0, col = 0;
        std::array<int, 4> data{-1, -1, -1, -1};  // N, E, S, W neighbors
    };

    std::vector<Check> checks;
    std::vector<int> data_row, data_col;
    std::vector<int> zbar_support;  // column-0 data: Z-logical support
    std::vector<int> xbar_support;  // row-0 data: X-logical support

    int n_checks() const { return n_checks_x + n_checks_z; }
    int n_qubits() const { return n_data + n_checks(); }
    bool check_is_x(int check_id) const { return check_id < n_checks_x; }

    static SurfaceLattice make(int d) {
        if (d < 3 || d % 2 == 0) throw std::invalid_argument("distance must be odd and >= 3");
        SurfaceLattice lat;
        lat.distance = d;
        lat.span = 2 * d - 1;
        std::vector<std::vector<int>> data_id(lat.span, std::vector<int>(lat.span, -1));
        for (int r = 0; r < lat.span; ++r)
            for (int c = 0; c < lat.span; ++c)
                if ((r + c) % 2 == 0) {
                    data_id[r][c] = lat.n_data++;
                    lat.data_row.push_back(r);
                    lat.data_col.push_back(c);
                }
        auto neighbor = [&](int r, int c) { return r < 0 || r >= lat.span || c < 0 || c >= lat.span ? -1 : data_id[r][c]; };
        auto add_checks = [&](bool want_x) {
            for (int r = 0; r < lat.span; ++r)
                for (int c = 0; c < lat.span; ++c) {
                    if ((r + c) % 2 != 1) continue;
                    bool is_x = (r % 2 == 1);
                    if (is_x != want_x) continue;
                    Check chk;
                    chk.check_id = static_cast<int>(lat.checks.size());
                    chk.is_x = is_x;
                    chk.row = r;
                    chk.col = c;
                    chk.data = {neighbor(r - 1, c), neighbor(r, c + 1), neighbor(r + 1, c),
                                neighbor(r, c - 1)};
                    lat.checks.push_back(chk);
                    (is_x ? lat.n_checks_x : lat.n_checks_z)++;
                }
        };
        add_checks(true);
        add_checks(false);
        for (std::size_t i = 0; i < lat.checks.size(); ++i)
            lat.checks[i].ancilla = lat.n_data + static_cast<int>(i);
        for (int q = 0; q < lat.n_data; ++q) {
            if (lat.data_col[q] == 0) lat.zbar_support.push_back(q);
            if (lat.data_row[q] == 0) lat.xbar_support.push_back(q);
        }
        return lat;
    }
};

}  // namespace loopline::qec
