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

#include "fanout/block_basis.hpp"
#include "fanout/block_operator.hpp"
#include "fanout/drive_config.hpp"

namespace fanout {

/// Collective matrix element of the symmetrized probe sum_i |e><1|_i between
/// the normalized symmetric states (n_e, n_f) -> (n_e+1, n_f) of a sector
/// with m active targets: sqrt((m - n_e - n_f)(n_e + 1)). Returns 0 for a
/// step that would leave the sector.
double probe_factor(int m, int n_e, int n_f);

/// Collective matrix element of sum_i a|f><e|_i for
/// (n_e, n_f, p) -> (n_e-1, n_f+1, p-1): sqrt(n_e (n_f + 1)) * sqrt(p).
/// Returns 0 when n_e = 0 or p = 0 (dark state).
double sideband_factor(int n_e, int n_f, int p);

/// Collective sigma_x ladder element sqrt((N - k)(k + 1)); 0 at k = N.
double dicke_ladder_coupling(int N, int k);

/// Hermitian block Hamiltonian of the conditional-phase step: probe terms
/// omega_t * probe_factor on (n_e,n_f,p) <-> (n_e+1,n_f,p) and sideband terms
/// omega_c * sideband_factor on (n_e,n_f,p) <-> (n_e-1,n_f+1,p-1).
BlockOperator build_block_hamiltonian(const BlockBasis& basis, const DriveConfig& drives);

/// Hot-bath collapse operators {sqrt(kappa) a, sqrt(kappa) a^dag} restricted
/// to the block. The annihilation amplitude is sqrt(p); creation entries that
/// would exceed the phonon cutoff are dropped.
std::vector<BlockOperator> build_block_collapse_ops(const BlockBasis& basis, double kappa);

}  // namespace fanout
