// Copyright 2026 the fanoutsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fanout/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace fanout::analytic {

uint128 binomial_exact(int n, int k) {
    if (n < 0 || k < 0 || k > n) throw std::invalid_argument("binomial_exact: need 0 <= k <= n");
    if (n > 100) throw std::invalid_argument("binomial_exact: n > 100 overflows 128-bit");
    if (k > n - k) k = n - k;
    uint128 c = 1;
    for (int i = 1; i <= k; ++i) {
        // exact at every step: c * (n-k+i) is divisible by i
        c = c * static_cast<uint128>(n - k + i) / static_cast<uint128>(i);
    }
    return c;
}

double binomial(int n, int k) {
    return static_cast<double>(binomial_exact(n, k));
}

double eit_idle_amplitude(double delta, double omega, double t) {
    const double s2 = delta * delta + 2.0 * omega * omega;
    if (s2 == 0.0) return 1.0;
    const double s = std::sqrt(s2);
    const double sn = std::sin(0.5 * t * s);
    return 1.0 - 4.0 * omega * omega / s2 * sn * sn;
}

double idle_probability(int m, double omega_t, double omega_c, double t) {
    if (m < 0) throw std::invalid_argument("idle_probability: m >= 0 required");
    if (m == 0) return 1.0;
    const double d2 = omega_c * omega_c + m * omega_t * omega_t;
    const double sn = std::sin(0.5 * t * std::sqrt(d2));
    const double amp = 1.0 - 2.0 * m * omega_t * omega_t / d2 * sn * sn;
    return amp * amp;
}

double infidelity_upper_bound(int n, double omega_t, double omega_c) {
    if (n < 1) throw std::invalid_argument("infidelity_upper_bound: n >= 1 required");
    const double x = omega_t / omega_c;
    return (n - 1) * x * x;
}

double infidelity_upper_bound_duration(int n, double omega_c, double t) {
    if (n < 1) throw std::invalid_argument("infidelity_upper_bound: n >= 1 required");
    const double pi = 3.14159265358979323846;
    return (n - 1) * pi * pi / (omega_c * omega_c * t * t);
}

TimingSolution timing_ratio(int k, int n) {
    const double m_eff = 0.5 * n;
    const double arg = 4.0 * static_cast<double>(k) * k - m_eff;
    if (!(arg > 0.0)) throw std::invalid_argument("timing_ratio: 4 k^2 must exceed n/2");
    TimingSolution s;
    s.k = k;
    s.m_eff = m_eff;
    s.ratio = std::sqrt(arg);
    return s;
}

double timed_infidelity(int n, double omega_t, double omega_c) {
    if (n < 1) throw std::invalid_argument("timed_infidelity: n >= 1 required");
    const double pi = 3.14159265358979323846;
    const double x = omega_t / omega_c;
    return pi * pi / 16.0 * (n - 1) * (n - 2) * x * x * x * x;
}

double timed_infidelity_duration(int n, double omega_c, double t) {
    if (n < 1) throw std::invalid_argument("timed_infidelity: n >= 1 required");
    const double pi = 3.14159265358979323846;
    const double p2 = pi * pi;
    const double u = omega_c * t;
    return static_cast<double>(n - 1) * (n - 2) * p2 * p2 * p2 / (16.0 * u * u * u * u);
}

uint128 binomial_weighted_moment_numerator(int n, int power) {
    if (n < 0) throw std::invalid_argument("binomial_weighted_moment: n >= 0 required");
    if (power != 1 && power != 2) throw std::invalid_argument("binomial_weighted_moment: power must be 1 or 2");
    uint128 sum = 0;
    for (int m = 0; m <= n; ++m) {
        uint128 term = binomial_exact(n, m) * static_cast<uint128>(m);
        if (power == 2) term *= static_cast<uint128>(m);
        sum += term;
    }
    return sum;
}

double binomial_weighted_moment(int n, int power) {
    const uint128 num = binomial_weighted_moment_numerator(n, power);
    return static_cast<double>(num) * std::ldexp(1.0, -n);
}

double theory_infidelity_sum(int n, double omega_t, double omega_c, double t) {
    if (n < 1) throw std::invalid_argument("theory_infidelity_sum: n >= 1 required");
    // weights C(n-1,m)/2^(n-1) by multiplicative recurrence; extra factor 1/2
    // accounts for the transition half of the basis, which contributes zero.
    double w = std::ldexp(1.0, -(n - 1));
    double sum = 0.0;
    for (int m = 0; m <= n - 1; ++m) {
        if (m > 0) w *= static_cast<double>(n - m) / static_cast<double>(m);
        const double d2 = omega_c * omega_c + m * omega_t * omega_t;
        if (d2 == 0.0) continue;
        const double sn = std::sin(0.5 * t * std::sqrt(d2));
        sum += w * 4.0 * m * omega_t * omega_t / d2 * sn * sn;
    }
    return 0.5 * sum;
}

}  // namespace fanout::analytic
