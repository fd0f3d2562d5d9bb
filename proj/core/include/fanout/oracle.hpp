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
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fanout/block_operator.hpp"
#include "fanout/drive_config.hpp"

namespace fanout::oracle {

/// Qudit levels of the full tensor-product reference space.
enum Level : int { kZero = 0, kOne = 1, kExcited = 2, kAux = 3 };

/// Full Hilbert space of n four-level qudits (qudit 0 is the control) and a
/// truncated oscillator. Small n only; this is the brute-force reference the
/// symmetric-sector machinery is validated against.
class FullSpace {
public:
    FullSpace(int n, int phonon_cutoff);

    int n() const { return n_; }
    int cutoff() const { return cutoff_; }
    int dim() const { return dim_; }

    int index(const std::vector<int>& digits, int p) const;
    std::pair<std::vector<int>, int> label(int index) const;

    /// Index of the computational basis state `bits` (control bit first)
    /// tensored with phonon number p.
    int computational_index(std::uint32_t bits, int p) const;

    /// Index of the same state after the excitation pulse: control |0> is
    /// replaced by |e> with one phonon, control |1> stays with zero phonons.
    int mid_index(std::uint32_t bits) const;

private:
    int n_ = 2;
    int cutoff_ = 1;
    int dim_ = 0;
};

struct StepHamiltonians {
    SparseMatrixC h1;  ///< control excitation, Omega_c (a^dag |e><0|_1 + h.c.)
    SparseMatrixC h2;  ///< conditional phase, probe + blocking sideband on targets
    SparseMatrixC h3;  ///< de-excitation (same generator as h1)
};

StepHamiltonians build_full_step_hamiltonians(int n, const DriveConfig& drives, int cutoff);

/// Oscillator annihilation operator on the full space, truncated at cutoff.
SparseMatrixC full_annihilation(const FullSpace& space);

/// Three-step unitary e^{-i H3 t3} e^{-i H2 t2} e^{-i H1 t1} with
/// t1 = t3 = pi/(2 omega_c) and t2 = drives.duration.
Eigen::MatrixXcd full_gate_sequence(int n, const DriveConfig& drives, int cutoff);

/// Ideal target of the full sequence on the computational subspace: the
/// phase-flip fanout composed with the deterministic extra (-1) the two
/// excitation pulses leave on the control-|0> half.
cplx full_sequence_target_phase(std::uint32_t bits, int n);

/// Dense master-equation propagation on the full space. Guarded at
/// dimension 4096.
Eigen::MatrixXcd exact_lindblad_evolve(const Eigen::MatrixXcd& rho0, const SparseMatrixC& H,
                                       const std::vector<SparseMatrixC>& c_ops, double t,
                                       double tol = 1e-9);

/// Conditional-phase-step amplitudes <target_mid| e^{-i H2 t} |mid> per
/// computational basis state (index = bitstring value, control bit first).
std::vector<cplx> step2_basis_amplitudes(int n, const DriveConfig& drives, int cutoff);

/// Same comparison point with heating: <target_mid| rho(t) |target_mid> per
/// computational basis state, via the dense master equation.
std::vector<double> step2_basis_fidelities(int n, const DriveConfig& drives, int cutoff,
                                           double kappa, double tol = 1e-9);

/// Disjoint full-space index sets, one per (preserved qudit-0 level, number
/// of targets outside |0>). The conditional-phase dynamics and the phonon
/// jump operators never connect different sets.
class BlockPartition {
public:
    static BlockPartition build(const FullSpace& space);
    int class_of(int index) const { return class_of_[static_cast<std::size_t>(index)]; }
    int num_classes() const { return num_classes_; }

private:
    std::vector<int> class_of_;
    int num_classes_ = 0;
};

struct BlockStructureReport {
    double max_off_block = 0.0;
    bool pass() const { return max_off_block < 1e-12; }
};

BlockStructureReport verify_block_structure(const SparseMatrixC& op, const BlockPartition& partition);

/// Comparison of the per-basis-state fidelity approximation against the
/// exact dense master equation on Haar-random computational-subspace states.
struct RandomStateComparison {
    double rmse = 0.0;
    double overestimate_fraction = 0.0;
    double min_gap = 0.0;  ///< min over samples of (approx - exact)
    double max_gap = 0.0;
    int n_states = 0;
    std::uint64_t seed = 0;
};

RandomStateComparison rmse_random_states(int n, const DriveConfig& drives, double kappa,
                                         int n_states, std::uint64_t seed, int cutoff = 2,
                                         double tol = 1e-8);

}  // namespace fanout::oracle
