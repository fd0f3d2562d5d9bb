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
#include <vector>

#include "fanout/block_operator.hpp"
#include "fanout/drive_config.hpp"
#include "fanout/gate_fidelity.hpp"
#include "fanout/propagate.hpp"
#include "fanout/rng.hpp"

namespace fanout {

struct TrajectoryConfig {
    int n_traj = 1000;
    std::uint64_t seed = 0;
    double kappa = 0.0;
    int phonon_cutoff = 5;
    double tol = 1e-10;
    /// 0 = use the FANOUT_THREADS environment override, else one thread.
    int threads = 0;
    /// Optional heating-only padding before and after the conditional-phase
    /// step, standing in for the excitation/de-excitation pulses whose
    /// durations the gate model leaves open. 0 disables it.
    double pulse_duration = 0.0;

    void validate() const;
};

struct TrajectoryEstimate {
    double mean = 0.0;
    double stderr_mean = 0.0;  ///< sample standard deviation / sqrt(n_traj)
    int n_traj = 0;
    std::uint64_t seed = 0;
};

struct TrajectorySample {
    int control = 0;
    int m = 0;
    int index = 0;
    double fidelity = 0.0;
};

struct TrajectoryRunResult {
    GateFidelityReport report;
    TrajectoryEstimate estimate;
    std::vector<TrajectorySample> samples;  ///< filled when keep_samples is set
};

/// One Monte Carlo wave function trajectory: deterministic evolution under
/// H_eff = H - i/2 sum c^dag c, with a jump applied whenever the squared
/// norm crosses a pre-drawn uniform threshold. Jump times are refined by
/// bisection to 1e-6 of the total duration. The returned state is
/// renormalized. Fully deterministic given the stream.
StateVector run_trajectory(const BlockOperator& H, const std::vector<BlockOperator>& c_ops,
                           const StateVector& psi0, double t, RngStream& rng, double tol = 1e-10);

/// Trajectory estimate of the average gate fidelity under oscillator
/// heating. Every sector runs cfg.n_traj trajectories on stream
/// derive(seed, sector id, trajectory index); the reduction is a fixed-order
/// sum, so results are identical for any thread count.
TrajectoryRunResult trajectory_gate_fidelity(int n, const DriveConfig& drives,
                                             const TrajectoryConfig& cfg,
                                             bool keep_samples = false);

/// Thread count resolution: explicit > 0 wins, else the FANOUT_THREADS
/// environment variable, else 1.
int resolve_thread_count(int requested);

}  // namespace fanout
