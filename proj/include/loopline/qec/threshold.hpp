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
#include <map>
#include <string>
#include <vector>

#include "loopline/qec/monte_carlo.hpp"

namespace loopline::qec {

enum class SweepParameter { GateP, ShuttleDephasing, Leakage, Rashba };

inline const char* sweep_parameter_name(SweepParameter p) {
    switch (p) {
        case SweepParameter::GateP: return "p";
        case SweepParameter::ShuttleDephasing: return "p_sh";
        case SweepParameter::Leakage: return "p_leak";
        case SweepParameter::Rashba: return "p_rash";
    }
    return "?";
}

inline SweepParameter sweep_parameter_from_name(const std::string& s) {
    if (s == "p") return SweepParameter::GateP;
    if (s == "p_sh") return SweepParameter::ShuttleDephasing;
    if (s == "p_leak") return SweepParameter::Leakage;
    if (s == "p_rash") return SweepParameter::Rashba;
    throw std::invalid_argument("unknown sweep parameter: " + s);
}

inline NoiseModel with_parameter(NoiseModel base, SweepParameter param, double value) {
    switch (param) {
        case SweepParameter::GateP: base.p = value; break;
        case SweepParameter::ShuttleDephasing: base.p_sh = value; break;
        case SweepParameter::Leakage: base.p_leak = value; break;
        case SweepParameter::Rashba: base.p_rash = value; break;
    }
    return base;
}

struct SweepConfig {
    SweepParameter parameter = SweepParameter::GateP;
    NoiseModel base;  // values of the non-swept parameters
    std::vector<int> distances{5, 7, 9};
    std::vector<double> points;
    std::int64_t shots = 50000;
    std::uint64_t seed = 1;
    int threads = 1;
    // noisy cycles per shot; 0 means "equal to the distance"
    int cycles = 0;
};

struct SweepResult {
    SweepConfig config;
    // results[point_index][distance] -> rates
    std::vector<std::map<int, RateResult>> results;
};

struct ThresholdEstimate {
    double value = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    int d_low = 0, d_high = 0;  // the pair of distances whose crossing is reported
};

inline SweepResult run_sweep(const SweepConfig& config) {
    if (config.distances.size() < 2) throw std::invalid_argument("need at least two distances");
    if (config.points.size() < 2) throw std::invalid_argument("need at least two sweep points");
    SweepResult out;
    out.config = config;
    out.results.resize(config.points.size());
    for (int d : config.distances) {
        int cycles = config.cycles > 0 ? config.cycles : d;
        FaultModel model = build_fault_model(build_circuit(d, cycles));
        for (std::size_t i = 0; i < config.points.size(); ++i) {
            NoiseModel noise = with_parameter(config.base, config.parameter, config.points[i]);
            DecodingGraph graph = build_decoding_graph(model, noise);
            out.results[i][d] =
                logical_error_rate(model, graph, noise, config.shots, config.seed, config.threads);
        }
    }
    return out;
}

namespace detail {

/// Crossing of the log-rate curves of the two given distances, linearly
/// interpolated between the bracketing sweep points. Rates of zero are
/// floored at half an event.
inline double crossing_point(const std::vector<double>& xs, const std::vector<double>& r_low,
                             const std::vector<double>& r_high, std::int64_t shots) {
    auto safe_log = [&](double r) {
        double floor_rate = 0.5 / static_cast<double>(shots);
        return std::log(std::max(r, floor_rate));
    };
    std::vector<double> f(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) f[i] = safe_log(r_high[i]) - safe_log(r_low[i]);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        if (f[i] <= 0.0 && f[i + 1] > 0.0) {
            double t = -f[i] / (f[i + 1] - f[i]);
            return xs[i] + t * (xs[i + 1] - xs[i]);
        }
    }
    throw std::domain_error("bracket the threshold");
}

}  // namespace detail

/// Threshold estimate from the crossing of the two largest distances, with a
/// parametric bootstrap confidence interval over the binomial shot counts.
inline ThresholdEstimate estimate_threshold(const SweepResult& sweep, int bootstrap = 500,
                                            std::uint64_t seed = 0x907a11) {
    std::vector<int> ds = sweep.config.distances;
    std::sort(ds.begin(), ds.end());
    const int d_low = ds[ds.size() - 2];
    const int d_high = ds[ds.size() - 1];
    const auto& xs = sweep.config.points;

    std::vector<double> r_low, r_high;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        r_low.push_back(sweep.results[i].at(d_low).rate());
        r_high.push_back(sweep.results[i].at(d_high).rate());
    }
    ThresholdEstimate est;
    est.d_low = d_low;
    est.d_high = d_high;
    est.value = detail::crossing_point(xs, r_low, r_high, sweep.config.shots);

    std::vector<double> resampled;
    CounterRng rng(seed, 0);
    const double shots = static_cast<double>(sweep.config.shots);
    for (int b = 0; b < bootstrap; ++b) {
        std::vector<double> bl(xs.size()), bh(xs.size());
        auto draw = [&](double r) {
            // Normal approximation to the binomial resample.
            double u1 = std::max(rng.next_double(), 1e-300);
            double u2 = rng.next_double();
            double gauss =
                std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
            double sd = std::sqrt(std::max(r * (1.0 - r), 1.0 / shots) / shots);
            return std::max(r + gauss * sd, 0.0);
        };
        for (std::size_t i = 0; i < xs.size(); ++i) {
            bl[i] = draw(r_low[i]);
            bh[i] = draw(r_high[i]);
        }
        try {
            resampled.push_back(detail::crossing_point(xs, bl, bh, sweep.config.shots));
        } catch (const std::domain_error&) {
            // A resample may fail to bracket; skip it.
        }
    }
    if (resampled.size() >= 20) {
        std::sort(resampled.begin(), resampled.end());
        est.ci_low = resampled[resampled.size() * 25 / 1000];
        est.ci_high = resampled[resampled.size() * 975 / 1000];
    } else {
        est.ci_low = est.ci_high = est.value;
    }
    return est;
}

}  // namespace loopline::qec
