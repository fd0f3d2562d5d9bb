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

#include <cmath>
#include <map>

#include <doctest.h>

#include "fanout/block_builder.hpp"
#include "fanout/rng.hpp"

using namespace fanout;

TEST_SUITE("block_builder") {

TEST_CASE("collective factors") {
    CHECK(probe_factor(1, 0, 0) == 1.0);
    CHECK(probe_factor(3, 0, 0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK(probe_factor(3, 2, 1) == 0.0);  // sector boundary, not an error
    CHECK(probe_factor(3, 3, 0) == 0.0);
    CHECK_THROWS_AS(probe_factor(3, -1, 0), std::invalid_argument);

    CHECK(sideband_factor(1, 0, 1) == 1.0);
    CHECK(sideband_factor(1, 0, 0) == 0.0);  // phonon vacuum is dark
    CHECK(sideband_factor(0, 2, 3) == 0.0);
    CHECK(sideband_factor(2, 1, 2) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));

    CHECK(dicke_ladder_coupling(1, 0) == 1.0);
    CHECK(dicke_ladder_coupling(3, 0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK(dicke_ladder_coupling(4, 2) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-15));
    CHECK(dicke_ladder_coupling(4, 4) == 0.0);
    // the probe on a fresh sector is the plain collective ladder
    for (int m = 1; m <= 6; ++m)
        for (int l = 0; l < m; ++l)
            CHECK(probe_factor(m, l, 0) == doctest::Approx(dicke_ladder_coupling(m, l)).epsilon(1e-15));
}

TEST_CASE("m=0 sector has a 1x1 zero Hamiltonian") {
    const BlockBasis basis = BlockBasis::enumerate({0, 0, 3}, 1, 1, false);
    const BlockOperator H = build_block_hamiltonian(basis, DriveConfig::from_ratio(8.0));
    CHECK(H.dim() == 1);
    CHECK(H.nnz() == 0);
}

TEST_CASE("m=1 idle sector is the three-level chain") {
    const BlockBasis basis = BlockBasis::enumerate({0, 1, 2}, 1, 1, false);
    REQUIRE(basis.dim() == 3);
    const DriveConfig drives = DriveConfig::from_ratio(8.0);
    const BlockOperator H = build_block_hamiltonian(basis, drives);
    const int g = basis.index_of({0, 0, 1});
    const int e = basis.index_of({1, 0, 1});
    const int f = basis.index_of({0, 1, 0});
    const Eigen::MatrixXcd D = H.dense();
    CHECK(D(e, g) == cplx(drives.omega_t, 0.0));
    CHECK(D(f, e) == cplx(drives.omega_c, 0.0));
    CHECK(D(f, g) == cplx(0.0, 0.0));
    CHECK(D(g, g) == cplx(0.0, 0.0));
}

TEST_CASE("m=2 idle sector couplings follow the collective factors") {
    const BlockBasis basis = BlockBasis::enumerate({0, 2, 3}, 1, 1, false);
    REQUIRE(basis.dim() == 5);
    const DriveConfig drives = DriveConfig::from_ratio(8.0);
    const BlockOperator H = build_block_hamiltonian(basis, drives);
    const Eigen::MatrixXcd D = H.dense();
    auto at = [&](BlockLabel a, BlockLabel b) {
        return D(basis.index_of(a), basis.index_of(b)).real();
    };
    // spine probe, teeth probe, and the two sideband rungs
    CHECK(at({1, 0, 1}, {0, 0, 1}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(at({2, 0, 1}, {1, 0, 1}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(at({1, 1, 0}, {0, 1, 0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(at({0, 1, 0}, {1, 0, 1}) == doctest::Approx(8.0).epsilon(1e-15));
    CHECK(at({1, 1, 0}, {2, 0, 1}) == doctest::Approx(8.0 * std::sqrt(2.0)).epsilon(1e-15));
    CHECK(H.nnz() == 10);
}

TEST_CASE("Hamiltonians are hermitian and conserve the sector charges") {
    for (int m : {1, 3, 8}) {
        for (bool dissipative : {false, true}) {
            const BlockBasis basis = BlockBasis::enumerate({0, m, m + 1}, 1, dissipative ? 4 : 1, dissipative);
            const BlockOperator H = build_block_hamiltonian(basis, DriveConfig::from_ratio(11.0));
            CHECK(H.hermitian());
            CHECK(H.hermiticity_defect() < 1e-15);
            for (const auto& e : H.entries()) {
                const BlockLabel a = basis.label(e.row);
                const BlockLabel b = basis.label(e.col);
                CHECK(a.p + a.n_f == b.p + b.n_f);  // excitation exchange with the oscillator
                CHECK(a.n_e + a.n_f <= m);          // population stays in the target sector
            }
        }
    }
}

TEST_CASE("collapse operators restrict the oscillator ladder") {
    const BlockBasis basis = BlockBasis::enumerate({0, 1, 3}, 1, 3, true);
    const double kappa = 0.04;
    const auto ops = build_block_collapse_ops(basis, kappa);
    REQUIRE(ops.size() == 2);
    const BlockOperator& down = ops[0];
    const BlockOperator& up = ops[1];

    // annihilation against the dense oscillator ladder on each (n_e, n_f) label
    for (const auto& e : down.entries()) {
        const BlockLabel a = basis.label(e.row);
        const BlockLabel b = basis.label(e.col);
        CHECK(a.n_e == b.n_e);
        CHECK(a.n_f == b.n_f);
        CHECK(a.p == b.p - 1);
        CHECK(e.value.real() ==
              doctest::Approx(std::sqrt(kappa) * std::sqrt(static_cast<double>(b.p))).epsilon(1e-15));
    }
    CHECK(up.adjoint().dense().isApprox(down.dense(), 1e-15));
    // creation out of the top rung is dropped by the truncation
    for (const auto& e : up.entries()) CHECK(basis.label(e.row).p <= basis.phonon_cutoff());

    const auto zero = build_block_collapse_ops(basis, 0.0);
    CHECK(zero[0].nnz() == 0);
    CHECK(zero[1].nnz() == 0);
}

TEST_CASE("single-state sector keeps only the annihilation entry") {
    const BlockBasis basis = BlockBasis::enumerate({0, 0, 2}, 1, 1, true);
    REQUIRE(basis.dim() == 2);  // (0,0,0) and (0,0,1)
    const auto ops = build_block_collapse_ops(basis, 1.0);
    const Eigen::MatrixXcd a = ops[0].dense();
    CHECK(a(basis.index_of({0, 0, 0}), basis.index_of({0, 0, 1})) == cplx(1.0, 0.0));
}

TEST_CASE("coordinate-list JSON round trip") {
    RngStream rng = RngStream::derive(7, 0, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const int dim = 2 + static_cast<int>(rng.uniform() * 12);
        BlockOperator op(dim, false);
        const int entries = 1 + static_cast<int>(rng.uniform() * 20);
        for (int k = 0; k < entries; ++k)
            op.add(static_cast<int>(rng.uniform() * dim), static_cast<int>(rng.uniform() * dim),
                   {rng.normal(), rng.normal()});
        op.canonicalize();
        const BlockOperator back = BlockOperator::from_json(op.to_json());
        CHECK(back.dim() == op.dim());
        CHECK(back.dense().isApprox(op.dense(), 0.0));
    }
    // hermitian flag inconsistent with the entries is rejected
    BlockOperator bad(2, true);
    bad.add(0, 1, {1.0, 0.0});
    bad.canonicalize();
    CHECK_THROWS_AS(BlockOperator::from_json(bad.to_json()), std::invalid_argument);
}

}  // TEST_SUITE
