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
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace loopline {

/// Exact rational arithmetic for resource tables and scheme solving, where
/// the reference values are ratios of small integers and floating-point
/// drift would make golden comparisons flaky.
struct Rat {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Rat() = default;
    Rat(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::domain_error("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    bool is_integer() const { return den == 1; }

    friend Rat operator+(Rat a, Rat b) { return Rat(a.num * b.den + b.num * a.den, a.den * b.den); }
    friend Rat operator-(Rat a, Rat b) { return Rat(a.num * b.den - b.num * a.den, a.den * b.den); }
    friend Rat operator*(Rat a, Rat b) { return Rat(a.num * b.num, a.den * b.den); }
    friend Rat operator/(Rat a, Rat b) {
        if (b.num == 0) throw std::domain_error("rational division by zero");
        return Rat(a.num * b.den, a.den * b.num);
    }
    friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) { return a.num * b.den < b.num * a.den; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.num * b.den <= b.num * a.den; }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator>=(const Rat& a, const Rat& b) { return b <= a; }
};

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
    if (b <= 0) throw std::domain_error("ceil_div with non-positive divisor");
    return (a + b - 1) / b;
}

/// Rounds to the given number of significant figures, matching how the
/// reference tables in the literature are typically printed.
inline double round_sig(double x, int sig) {
    if (x == 0.0) return 0.0;
    double mag = std::pow(10.0, sig - 1 - static_cast<int>(std::floor(std::log10(std::abs(x)))));
    return std::nearbyint(x * mag) / mag;
}

inline std::string format_sig(double x, int sig) {
    double r = round_sig(x, sig);
    std::string s = std::to_string(r);
    // trim trailing zeros
    auto pos = s.find_last_not_of('0');
    if (s[pos] == '.') pos--;
    return s.substr(0, pos + 1);
}

}  // namespace loopline
