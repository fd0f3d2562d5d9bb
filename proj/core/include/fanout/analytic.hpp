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

#pragma once

#include <cstdint>

namespace fanout::analytic {

using uint128 = unsigned __int128;

/// Exact binomial coefficient C(n, k). Valid up to n = 100 without overflow.
uint128 binomial_exact(int n, int k);

/// C(n, k) as a double (exact integer rounded to nearest representable).
double binomial(int n, int k);

/// Ground-state return amplitude of two off-resonant drives with opposite
/// detuning +-delta and equal strength omega:
///   <g|exp(-i H t)|g> = 1 - 4 omega^2/(delta^2+2 omega^2)
///                          * sin^2(t/2 * sqrt(delta^2+2 omega^2)).
/// The amplitude is purely real: the two AC Stark shifts cancel.
double eit_idle_amplitude(double delta, double omega, double t);

/// Survival probability of a computational state with m target ones in the
/// idle subspace, from the three-level truncation of its coupling ladder:
///   (1 - 2 m w_t^2/(w_c^2 + m w_t^2) * sin^2(t/2 sqrt(w_c^2 + m w_t^2)))^2.
/// Exact for m <= 1; for larger m it omits higher probe excitations.
double idle_probability(int m, double omega_t, double omega_c, double t);

/// Worst-case infidelity of the gate, 1 - F <= (n-1) (w_t/w_c)^2.
double infidelity_upper_bound(int n, double omega_t, double omega_c);

/// Same bound expressed through the gate duration: (n-1) pi^2 / (w_c t)^2.
double infidelity_upper_bound_duration(int n, double omega_c, double t);

/// Drive ratio synchronizing the off-resonant oscillations so residual
/// leakage cancels at the end of the gate.
struct TimingSolution {
    int k = 0;           ///< pulse-count parameter of the resonance ansatz
    double m_eff = 0.0;  ///< effective number of ones, n/2
    double ratio = 0.0;  ///< omega_c / omega_t = sqrt(4 k^2 - n/2)
};

/// Solves the timing condition for given k and qubit count n.
/// Requires 4 k^2 > n/2.
TimingSolution timing_ratio(int k, int n);

/// Infidelity estimate of a gate timed at k = w_c / (2 w_t):
///   1 - F = pi^2/16 (n-1)(n-2) (w_t/w_c)^4.
double timed_infidelity(int n, double omega_t, double omega_c);

/// Duration form of the timed estimate: (n-1)(n-2) pi^6 / (16 t^4 w_c^4).
double timed_infidelity_duration(int n, double omega_c, double t);

/// Binomially weighted moment 2^-n sum_m C(n,m) m^power for power in {1,2}.
/// Evaluated with exact 128-bit integer accumulation; power 1 gives n/2,
/// power 2 gives n(n+1)/4.
double binomial_weighted_moment(int n, int power);

/// Exact numerator sum_m C(n,m) m^power as a 128-bit integer (the weighted
/// moment times 2^n), for integer-arithmetic identity checks.
uint128 binomial_weighted_moment_numerator(int n, int power);

/// Full binomially weighted infidelity sum without the small-ratio Taylor
/// truncation:
///   2^-n sum_m C(n-1,m) 4 m w_t^2/(w_c^2+m w_t^2) sin^2(t/2 sqrt(...)).
double theory_infidelity_sum(int n, double omega_t, double omega_c, double t);

}  // namespace fanout::analytic
