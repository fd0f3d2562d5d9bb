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

#include <vector>

#include <Eigen/Dense>

#include "fanout/block_operator.hpp"

namespace fanout {

using StateVector = Eigen::VectorXcd;

/// Basis vector |k> of the given dimension.
StateVector basis_state(int dim, int k);

/// Overlap amplitude and phase of <target|psi(t)> on a uniform time grid.
struct OverlapTrace {
    std::vector<double> times;
    std::vector<double> amplitude;  ///< |<target|psi(t)>|
    std::vector<double> phase;      ///< arg <target|psi(t)>, in (-pi, pi]
};

/// Propagates psi0 under a Hermitian block operator for time t with global
/// L2 error below tol. Dimensions up to dense_limit use an exact
/// eigendecomposition; larger systems fall back to adaptive integration.
StateVector evolve_state(const BlockOperator& H, const StateVector& psi0, double t,
                         double tol = 1e-10, int dense_limit = 256);

/// Dense unitary exp(-i H t). Refuses dimensions beyond dense_limit.
Eigen::MatrixXcd propagator(const BlockOperator& H, double t, int dense_limit = 256);

/// Samples <target|psi(t)> on `samples` uniformly spaced times in [0, t_max].
OverlapTrace overlap_trace(const BlockOperator& H, const StateVector& psi0,
                           const StateVector& target, double t_max, int samples,
                           double tol = 1e-10);

/// Chebyshev propagation of exp(-i H t) psi0 for real symmetric sparse H.
/// Spectral bounds come from Gershgorin discs; the expansion is truncated at
/// machine precision, making this path exact for all practical purposes and
/// much faster than diagonalization for the wide gate blocks.
StateVector chebyshev_evolve(const SparseMatrixD& H, const StateVector& psi0, double t);

/// Convenience overload; requires the hermitian flag and purely real entries.
StateVector chebyshev_evolve(const BlockOperator& H, const StateVector& psi0, double t);

}  // namespace fanout
