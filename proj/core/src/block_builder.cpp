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

#include "fanout/block_builder.hpp"

#include <cmath>
#include <stdexcept>

namespace fanout {

double probe_factor(int m, int n_e, int n_f) {
    if (m < 0 || n_e < 0 || n_f < 0) throw std::invalid_argument("probe_factor: negative argument");
    const int n_ones = m - n_e - n_f;
    if (n_ones <= 0) return 0.0;
    return std::sqrt(static_cast<double>(n_ones) * (n_e + 1));
}

double sideband_factor(int n_e, int n_f, int p) {
    if (n_e < 0 || n_f < 0 || p < 0) throw std::invalid_argument("sideband_factor: negative argument");
    if (n_e == 0 || p == 0) return 0.0;
    return std::sqrt(static_cast<double>(n_e) * (n_f + 1)) * std::sqrt(static_cast<double>(p));
}

double dicke_ladder_coupling(int N, int k) {
    if (N < 0 || k < 0) throw std::invalid_argument("dicke_ladder_coupling: negative argument");
    if (k >= N) return 0.0;
    return std::sqrt(static_cast<double>(N - k) * (k + 1));
}

BlockOperator build_block_hamiltonian(const BlockBasis& basis, const DriveConfig& drives) {
    drives.validate();
    if (basis.dim() == 0) throw std::invalid_argument("build_block_hamiltonian: empty basis");
    const int m = basis.cls().m;
    BlockOperator H(basis.dim(), /*hermitian=*/true);
    for (int j = 0; j < basis.dim(); ++j) {
        const BlockLabel& s = basis.label(j);
        // probe: (n_e, n_f, p) -> (n_e+1, n_f, p)
        const int up = basis.index_of({s.n_e + 1, s.n_f, s.p});
        if (up >= 0) {
            const double g = drives.omega_t * probe_factor(m, s.n_e, s.n_f);
            if (g != 0.0) {
                H.add(up, j, g);
                H.add(j, up, g);
            }
        }
        // sideband: (n_e, n_f, p) -> (n_e-1, n_f+1, p-1)
        const int down = basis.index_of({s.n_e - 1, s.n_f + 1, s.p - 1});
        if (down >= 0) {
            const double g = drives.omega_c * sideband_factor(s.n_e, s.n_f, s.p);
            if (g != 0.0) {
                H.add(down, j, g);
                H.add(j, down, g);
            }
        }
    }
    H.canonicalize();
    return H;
}

std::vector<BlockOperator> build_block_collapse_ops(const BlockBasis& basis, double kappa) {
    if (kappa < 0) throw std::invalid_argument("build_block_collapse_ops: kappa >= 0 required");
    const double amp = std::sqrt(kappa);
    BlockOperator annihilate(basis.dim());
    BlockOperator create(basis.dim());
    for (int j = 0; j < basis.dim(); ++j) {
        const BlockLabel& s = basis.label(j);
        if (s.p >= 1) {
            const int down = basis.index_of({s.n_e, s.n_f, s.p - 1});
            if (down >= 0) annihilate.add(down, j, amp * std::sqrt(static_cast<double>(s.p)));
        }
        if (s.p + 1 <= basis.phonon_cutoff()) {
            const int up = basis.index_of({s.n_e, s.n_f, s.p + 1});
            if (up >= 0) create.add(up, j, amp * std::sqrt(static_cast<double>(s.p + 1)));
        }
    }
    annihilate.canonicalize();
    create.canonicalize();
    return {annihilate, create};
}

}  // namespace fanout
