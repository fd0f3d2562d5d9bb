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
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fanout/block_operator.hpp"
#include "fanout/drive_config.hpp"

namespace fanout {

/// Ideal phase acquired by a computational basis state: (-1)^(control * m).
double target_phase(int control, int m);

/// Average gate fidelity assembled from the per-sector block simulations,
/// together with the analytic bounds evaluated at the same drive settings.
struct GateFidelityReport {
    int n = 0;
    DriveConfig drives;
    std::vector<std::pair<int, double>> per_m_idle;  ///< (m, simulated survival probability)
    double transition_fidelity = 1.0;
    double fidelity = 0.0;
    double bound = 0.0;           ///< (n-1) (omega_t/omega_c)^2
    double timed_estimate = 0.0;  ///< pi^2/16 (n-1)(n-2) (omega_t/omega_c)^4
    std::string to_json() const;
};

/// Simulates every idle sector on its full collective ladder (all 2m+1
/// states) and every transition sector, then averages over the computational
/// basis with binomial weights. Coherent runs assert that transition sectors
/// return (-1)^m exactly (within 1e-9) when the duration is a 2*pi pulse.
GateFidelityReport average_gate_fidelity(int n, const DriveConfig& drives, double t);

/// Memoized per-sector idle return amplitudes at omega_t = 1, t fixed.
/// Ratios are quantized to 1e-4 so repeated optimizations share work and
/// results do not depend on evaluation order.
class SurvivalCache {
public:
    explicit SurvivalCache(double t);
    static double quantize(double ratio);

    /// <psi0| exp(-i H_m t) |psi0> on the coherent idle sector with m ones.
    cplx idle_amplitude(int m, double ratio);
    /// 1 - |idle_amplitude|^2
    double idle_error(int m, double ratio);
    /// Binomially weighted coherent infidelity 1 - F(n, ratio).
    double gate_error(int n, double ratio);

    double duration() const { return t_; }
    std::size_t size() const { return amps_.size(); }

private:
    double t_;
    std::unordered_map<std::uint64_t, cplx> amps_;
};

/// Grid scan of the drive ratio followed by golden-section refinement to
/// resolution 1e-4, maximizing the average gate fidelity. The scan grid is
/// densified to at most 0.5 spacing, a quarter of the expected spacing of
/// neighboring infidelity minima. Returns the best ratio with its report.
std::pair<double, GateFidelityReport> optimize_timing(int n, double ratio_lo, double ratio_hi,
                                                      int grid, SurvivalCache* cache = nullptr);

/// Input-output table of the gate on computational basis states. Population
/// can only remain on the input state; everything else is leakage into the
/// excited levels.
struct TruthTable {
    struct Row {
        std::string input;   ///< basis label, control bit first
        std::string output;  ///< retained output label (same as input)
        double population = 0.0;
        double phase = 0.0;
        double leakage = 0.0;
    };
    int n = 0;
    std::vector<Row> rows;
};

TruthTable truth_table(int n, const DriveConfig& drives, double t);

}  // namespace fanout
