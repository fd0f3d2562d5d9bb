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
#include <numbers>

#include <doctest.h>

#include "fanout/block_basis.hpp"
#include "fanout/block_builder.hpp"
#include "fanout/lindblad.hpp"
#include "fanout/propagate.hpp"
#include "fanout/rng.hpp"

using namespace fanout;

namespace {
constexpr double kPi = std::numbers::pi;

/// Pure oscillator truncated at `cutoff`: the m = 0 idle sector enumerated
/// dissipatively spans exactly the phonon ladder.
BlockBasis oscillator_basis(int cutoff) {
    return BlockBasis::enumerate({0, 0, 2}, 1, cutoff, true);
}
}  // namespace

TEST_SUITE("lindblad") {

TEST_CASE("no collapse operators reduces to unitary conjugation") {
    RngStream rng = RngStream::derive(21, 0, 0);
    BlockOperator H(6, true);
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            if (rng.uniform() < 0.4) {
                const double v = rng.normal();
                H.add(i, j, v);
                H.add(j, i, v);
            }
    H.canonicalize();

    Eigen::MatrixXcd rho0 = Eigen::MatrixXcd::Zero(6, 6);
    rho0(2, 2) = 0.5;
    rho0(3, 3) = 0.5;
    rho0(2, 3) = cplx(0.25, 0.1);
    rho0(3, 2) = std::conj(rho0(2, 3));

    const Eigen::MatrixXcd rho = lindblad_evolve(H, {}, rho0, 1.7, 1e-11);
    const Eigen::MatrixXcd U = propagator(H, 1.7);
    CHECK((rho - U * rho0 * U.adjoint()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("hot-bath oscillator heats linearly") {
    const int cutoff = 8;
    const BlockBasis basis = oscillator_basis(cutoff);
    REQUIRE(basis.dim() == cutoff + 1);
    const BlockOperator H(basis.dim(), true);
    const double kappa = 0.05;
    const auto c_ops = build_block_collapse_ops(basis, kappa);

    Eigen::MatrixXcd rho0 = Eigen::MatrixXcd::Zero(basis.dim(), basis.dim());
    rho0(basis.index_of({0, 0, 0}), basis.index_of({0, 0, 0})) = 1.0;
    const double t = 2.0;
    const Eigen::MatrixXcd rho = lindblad_evolve(H, c_ops, rho0, t, 1e-11);

    double mean_phonon = 0.0;
    for (int i = 0; i < basis.dim(); ++i) mean_phonon += basis.label(i).p * rho(i, i).real();
    CHECK(mean_phonon == doctest::Approx(kappa * t).epsilon(1e-6));
    CHECK(std::abs(rho.trace().real() - 1.0) < 1e-10);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    CHECK(es.eigenvalues().minCoeff() > -1e-8);
}

TEST_CASE("survival of the heated idle sector decays at the jump rate") {
    const BlockBasis basis = BlockBasis::enumerate({0, 1, 2}, 1, 4, true);
    const BlockOperator H = build_block_hamiltonian(basis, DriveConfig::from_ratio(19.0));
    const double kappa = 0.01;
    const auto c_ops = build_block_collapse_ops(basis, kappa);
    const double survival = lindblad_survival(H, c_ops, basis.initial_index(), kPi, 1e-10);
    // one phonon in flight: total jump rate ~ kappa (2 p + 1) = 3 kappa
    CHECK(survival < 1.0);
    CHECK(survival == doctest::Approx(std::exp(-3.0 * kappa * kPi)).epsilon(0.05));
}

TEST_CASE("rejects mismatched dimensions and negative time") {
    BlockOperator H(3, true);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(2, 2);
    CHECK_THROWS_AS(lindblad_evolve(H, {}, rho, 1.0), std::invalid_argument);
    Eigen::MatrixXcd rho3 = Eigen::MatrixXcd::Identity(3, 3);
    CHECK_THROWS_AS(lindblad_evolve(H, {}, rho3, -1.0), std::invalid_argument);
}

}  // TEST_SUITE
