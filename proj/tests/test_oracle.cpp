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

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "fanout/block_basis.hpp"
#include "fanout/block_builder.hpp"
#include "fanout/gate_fidelity.hpp"
#include "fanout/lindblad.hpp"
#include "fanout/oracle.hpp"
#include "fanout/propagate.hpp"

using namespace fanout;
using oracle::FullSpace;

namespace {
constexpr double kPi = std::numbers::pi;

/// Normalized symmetric state with the first m targets active: n_1 ones,
/// n_e targets in |e>, n_f in |f>, built by explicit permutation sum.
Eigen::VectorXcd symmetric_state(const FullSpace& space, int m, int n_e, int n_f, int p,
                                 int control_digit) {
    const int n = space.n();
    const int n_1 = m - n_e - n_f;
    REQUIRE(n_1 >= 0);
    std::vector<int> occupation;
    for (int i = 0; i < n_1; ++i) occupation.push_back(oracle::kOne);
    for (int i = 0; i < n_e; ++i) occupation.push_back(oracle::kExcited);
    for (int i = 0; i < n_f; ++i) occupation.push_back(oracle::kAux);
    std::sort(occupation.begin(), occupation.end());

    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(space.dim());
    do {
        std::vector<int> digits(static_cast<std::size_t>(n), oracle::kZero);
        digits[0] = control_digit;
        for (int i = 0; i < m; ++i) digits[static_cast<std::size_t>(1 + i)] = occupation[static_cast<std::size_t>(i)];
        v[space.index(digits, p)] = 1.0;
    } while (std::next_permutation(occupation.begin(), occupation.end()));
    v.normalize();
    return v;
}

int ones_among_targets(std::uint32_t bits, int n) {
    const int control = (bits >> (n - 1)) & 1u;
    return std::popcount(bits) - control;
}
}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("collective factors equal exact symmetrized matrix elements") {
    for (int n : {3, 4}) {
        for (int cutoff : {1, 2}) {
            const FullSpace space(n, cutoff);
            const DriveConfig probe_only{1.0, 0.0, 0.0, kPi};
            const DriveConfig sideband_only{1.0, 1.0, 0.0, kPi};
            const auto probe_h = oracle::build_full_step_hamiltonians(n, probe_only, cutoff).h2;
            // omega_t contributions subtracted to isolate the sideband
            auto side_h = oracle::build_full_step_hamiltonians(n, sideband_only, cutoff).h2;
            side_h = SparseMatrixC(side_h - probe_h);

            for (int m = 0; m <= n - 1; ++m) {
                for (int n_e = 0; n_e <= m; ++n_e) {
                    for (int n_f = 0; n_e + n_f <= m; ++n_f) {
                        for (int p = 0; p <= cutoff; ++p) {
                            const auto from = symmetric_state(space, m, n_e, n_f, p, oracle::kExcited);
                            if (n_e + n_f < m) {
                                const auto to = symmetric_state(space, m, n_e + 1, n_f, p, oracle::kExcited);
                                const cplx elem = to.dot(probe_h * from);
                                CHECK(std::abs(elem - cplx(probe_factor(m, n_e, n_f), 0.0)) < 1e-12);
                            }
                            if (n_e >= 1 && p >= 1) {
                                const auto to =
                                    symmetric_state(space, m, n_e - 1, n_f + 1, p - 1, oracle::kExcited);
                                const cplx elem = to.dot(side_h * from);
                                CHECK(std::abs(elem - cplx(sideband_factor(n_e, n_f, p), 0.0)) < 1e-12);
                            }
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("conditional-phase couplings on two qubits") {
    const int n = 2, cutoff = 1;
    const FullSpace space(n, cutoff);
    const DriveConfig drives = DriveConfig::from_ratio(8.0);
    const auto h2 = oracle::build_full_step_hamiltonians(n, drives, cutoff).h2;
    const Eigen::MatrixXcd D(h2);

    // the all-zeros computational state is completely dark
    const int dark = space.index({oracle::kZero, oracle::kZero}, 0);
    CHECK(D.row(dark).cwiseAbs().maxCoeff() == 0.0);
    CHECK(D.col(dark).cwiseAbs().maxCoeff() == 0.0);

    // probe on the target, phonon untouched
    CHECK(D(space.index({oracle::kZero, oracle::kExcited}, 1), space.index({oracle::kZero, oracle::kOne}, 1)) ==
          cplx(drives.omega_t, 0.0));
    // sideband consumes the phonon
    CHECK(D(space.index({oracle::kZero, oracle::kAux}, 0), space.index({oracle::kZero, oracle::kExcited}, 1)) ==
          cplx(drives.omega_c, 0.0));
    // zero-phonon excited state is dark for the sideband
    CHECK(D(space.index({oracle::kZero, oracle::kAux}, 0), space.index({oracle::kZero, oracle::kExcited}, 0)) ==
          cplx(0.0, 0.0));
    // nothing acts on the control
    CHECK(D(space.index({oracle::kExcited, oracle::kZero}, 1), space.index({oracle::kOne, oracle::kZero}, 1)) ==
          cplx(0.0, 0.0));
}

TEST_CASE("excitation pulse transfers the control with phase -i") {
    const FullSpace space(2, 1);
    const DriveConfig drives = DriveConfig::from_ratio(8.0);
    const auto h1 = oracle::build_full_step_hamiltonians(2, drives, 1).h1;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es{Eigen::MatrixXcd(h1)};
    Eigen::VectorXcd phases(space.dim());
    const double t_pulse = kPi / (2.0 * drives.omega_c);
    for (int j = 0; j < space.dim(); ++j)
        phases[j] = std::exp(cplx(0.0, -es.eigenvalues()[j] * t_pulse));
    const Eigen::MatrixXcd U = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();

    const int from = space.index({oracle::kZero, oracle::kZero}, 0);
    const int to = space.index({oracle::kExcited, oracle::kZero}, 1);
    CHECK(std::abs(U(to, from) - cplx(0.0, -1.0)) < 1e-12);
    // transition subspace is untouched
    const int one = space.index({oracle::kOne, oracle::kOne}, 0);
    CHECK(std::abs(U(one, one) - cplx(1.0, 0.0)) < 1e-12);
}

TEST_CASE("full sequence is unitary and blocks in the strong-drive limit") {
    const Eigen::MatrixXcd U = oracle::full_gate_sequence(3, DriveConfig::from_ratio(1e4), 1);
    CHECK((U.adjoint() * U - Eigen::MatrixXcd::Identity(U.rows(), U.cols())).cwiseAbs().maxCoeff() <
          1e-9);
    const FullSpace space(3, 1);
    for (std::uint32_t bits = 0; bits < 8; ++bits) {
        const int idx = space.computational_index(bits, 0);
        const cplx amp = U(idx, idx);
        CHECK(std::norm(amp) > 1.0 - 1e-6);
        // two pulse factors of -i leave -1 on the control-|0> half
        const cplx expected = oracle::full_sequence_target_phase(bits, 3);
        CHECK(std::abs(amp - expected) < 1e-3);
    }
}

TEST_CASE("sector evolution equals the conditional-phase step on the full space") {
    for (int n : {2, 3, 4}) {
        const DriveConfig drives = DriveConfig::from_ratio(8.0);
        const auto full = oracle::step2_basis_amplitudes(n, drives, 2);
        for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
            const int control = (bits >> (n - 1)) & 1u;
            const int m = ones_among_targets(bits, n);
            const ComputationalClass cls{control, m, n};
            const BlockBasis basis =
                BlockBasis::enumerate(cls, cls.initial_phonons(), cls.initial_phonons(), false);
            const BlockOperator H = build_block_hamiltonian(basis, drives);
            const StateVector psi =
                evolve_state(H, basis_state(basis.dim(), basis.initial_index()), drives.duration);
            const cplx amp = target_phase(control, m) * psi[basis.initial_index()];
            CHECK(std::abs(amp - full[bits]) < 1e-8);
        }
    }
}

TEST_CASE("full sequence agrees with the conditional-phase step alone") {
    // the excitation pulses are exact two-level rotations, so per-state
    // magnitudes must coincide with the middle step
    const DriveConfig drives = DriveConfig::from_ratio(8.2824);
    const Eigen::MatrixXcd U = oracle::full_gate_sequence(4, drives, 1);
    const auto step2 = oracle::step2_basis_amplitudes(4, drives, 1);
    const FullSpace space(4, 1);
    for (std::uint32_t bits = 0; bits < 16; ++bits) {
        const int idx = space.computational_index(bits, 0);
        CHECK(std::abs(std::abs(U(idx, idx)) - std::abs(step2[bits])) < 1e-9);
    }
}

TEST_CASE("a corrupted collective factor is caught by the comparison") {
    const DriveConfig drives = DriveConfig::from_ratio(8.0);
    const auto full = oracle::step2_basis_amplitudes(3, drives, 1);
    const ComputationalClass cls{0, 2, 3};
    const BlockBasis basis = BlockBasis::enumerate(cls, 1, 1, false);
    BlockOperator H = build_block_hamiltonian(basis, drives);
    H = H.scaled(1.01);  // wrong collective enhancement
    const StateVector psi =
        evolve_state(H, basis_state(basis.dim(), basis.initial_index()), drives.duration);
    const std::uint32_t bits = 0b011;  // control 0, two ones
    CHECK(std::abs(psi[basis.initial_index()] - full[bits]) > 1e-3);
}

TEST_CASE("generator and jump operators never leave a sector") {
    const FullSpace space(3, 2);
    const auto steps =
        oracle::build_full_step_hamiltonians(3, DriveConfig::from_ratio(8.0), 2);
    const auto partition = oracle::BlockPartition::build(space);
    const auto a = oracle::full_annihilation(space);

    CHECK(oracle::verify_block_structure(steps.h2, partition).pass());
    CHECK(oracle::verify_block_structure(a, partition).pass());
    CHECK(oracle::verify_block_structure(SparseMatrixC(a.adjoint()), partition).pass());

    // a control flip couples the idle and transition sectors
    std::vector<Eigen::Triplet<cplx>> trips;
    for (int col = 0; col < space.dim(); ++col) {
        auto [digits, p] = space.label(col);
        if (digits[0] == oracle::kZero) {
            auto nd = digits;
            nd[0] = oracle::kOne;
            trips.emplace_back(space.index(nd, p), col, cplx(1.0, 0.0));
        }
    }
    SparseMatrixC flip(space.dim(), space.dim());
    flip.setFromTriplets(trips.begin(), trips.end());
    CHECK_FALSE(oracle::verify_block_structure(flip, partition).pass());
}

TEST_CASE("dense master equation: unitary limit and dimension guard") {
    const FullSpace space(2, 1);
    const auto steps = oracle::build_full_step_hamiltonians(2, DriveConfig::from_ratio(8.0), 1);
    Eigen::MatrixXcd rho0 = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
    const int idx = space.mid_index(0b01);
    rho0(idx, idx) = 1.0;
    const Eigen::MatrixXcd rho = oracle::exact_lindblad_evolve(rho0, steps.h2, {}, kPi, 1e-10);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es{Eigen::MatrixXcd(steps.h2)};
    Eigen::VectorXcd phases(space.dim());
    for (int j = 0; j < space.dim(); ++j) phases[j] = std::exp(cplx(0.0, -es.eigenvalues()[j] * kPi));
    const Eigen::MatrixXcd U = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    CHECK((rho - U * rho0 * U.adjoint()).cwiseAbs().maxCoeff() < 1e-8);

    Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(5000, 5000);
    SparseMatrixC hbig(5000, 5000);
    CHECK_THROWS_AS(oracle::exact_lindblad_evolve(big, hbig, {}, 1.0), std::invalid_argument);
}

TEST_CASE("sector master equation matches the dense one per basis state") {
    const int n = 3, cutoff = 2;
    const double kappa = 0.01;
    const DriveConfig drives = DriveConfig::from_ratio(19.0, kappa);
    const auto full = oracle::step2_basis_fidelities(n, drives, cutoff, kappa, 1e-9);
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
        const int control = (bits >> (n - 1)) & 1u;
        const int m = ones_among_targets(bits, n);
        const ComputationalClass cls{control, m, n};
        const BlockBasis basis = BlockBasis::enumerate(cls, cls.initial_phonons(), cutoff, true);
        const BlockOperator H = build_block_hamiltonian(basis, drives);
        const auto c_ops = build_block_collapse_ops(basis, kappa);
        const double fb = lindblad_survival(H, c_ops, basis.initial_index(), drives.duration, 1e-9);
        CHECK(std::abs(fb - full[bits]) < 1e-6);
    }
}

TEST_CASE("random-state factorization overestimates and stays accurate") {
    const DriveConfig drives = DriveConfig::from_ratio(19.0);
    const auto cmp = oracle::rmse_random_states(3, drives, 0.01, 20, 77, 2, 1e-8);
    CHECK(cmp.n_states == 20);
    CHECK(cmp.rmse < 1e-3);
    CHECK(cmp.overestimate_fraction == 1.0);
    CHECK(cmp.min_gap > -1e-9);

    // coherent and strongly blocked: the factorization becomes exact
    const auto tight = oracle::rmse_random_states(2, DriveConfig::from_ratio(1e4), 0.0, 10, 3, 1, 1e-10);
    CHECK(tight.rmse < 1e-7);
}

}  // TEST_SUITE
