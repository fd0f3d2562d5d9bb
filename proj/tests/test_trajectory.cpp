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
#include <cstdlib>
#include <numbers>

#include <doctest.h>

#include "fanout/block_basis.hpp"
#include "fanout/block_builder.hpp"
#include "fanout/lindblad.hpp"
#include "fanout/trajectory.hpp"

using namespace fanout;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("trajectory") {

TEST_CASE("without collapse operators a trajectory is the coherent evolution") {
    const BlockBasis basis = BlockBasis::enumerate({0, 2, 3}, 1, 1, false);
    const BlockOperator H = build_block_hamiltonian(basis, DriveConfig::from_ratio(8.0));
    const StateVector psi0 = basis_state(basis.dim(), basis.initial_index());
    RngStream rng = RngStream::derive(5, 0, 0);
    const StateVector traj = run_trajectory(H, {}, psi0, kPi, rng);
    const StateVector exact = evolve_state(H, psi0, kPi);
    CHECK((traj - exact).norm() < 1e-8);
}

TEST_CASE("heated oscillator gains kappa*t phonons on average") {
    const BlockBasis basis = BlockBasis::enumerate({1, 0, 2}, 0, 6, true);
    const BlockOperator H(basis.dim(), true);
    const double kappa = 0.02;
    const auto c_ops = build_block_collapse_ops(basis, kappa);
    const StateVector psi0 = basis_state(basis.dim(), basis.initial_index());

    const int n_traj = 2000;
    const double t = 1.0;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n_traj; ++i) {
        RngStream rng = RngStream::derive(99, 0, static_cast<std::uint64_t>(i));
        const StateVector psi = run_trajectory(H, c_ops, psi0, t, rng);
        double phonons = 0.0;
        for (int j = 0; j < basis.dim(); ++j) phonons += basis.label(j).p * std::norm(psi[j]);
        sum += phonons;
        sq += phonons * phonons;
    }
    const double mean = sum / n_traj;
    const double stderr_mean = std::sqrt((sq / n_traj - mean * mean) / (n_traj - 1));
    CHECK(std::abs(mean - kappa * t) < 3.0 * stderr_mean + 1e-6);
}

TEST_CASE("trajectory average matches the master equation") {
    const BlockBasis basis = BlockBasis::enumerate({0, 1, 2}, 1, 5, true);
    const DriveConfig drives = DriveConfig::from_ratio(19.0);
    const BlockOperator H = build_block_hamiltonian(basis, drives);
    const double kappa = 0.01;
    const auto c_ops = build_block_collapse_ops(basis, kappa);
    const int j0 = basis.initial_index();
    const StateVector psi0 = basis_state(basis.dim(), j0);

    const int n_traj = 1000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n_traj; ++i) {
        RngStream rng = RngStream::derive(4242, 1, static_cast<std::uint64_t>(i));
        const StateVector psi = run_trajectory(H, c_ops, psi0, kPi, rng);
        const double f = std::norm(psi[j0]);
        sum += f;
        sq += f * f;
    }
    const double mean = sum / n_traj;
    const double stderr_mean = std::sqrt((sq / n_traj - mean * mean) / (n_traj - 1));
    const double exact = lindblad_survival(H, c_ops, j0, kPi, 1e-10);
    CHECK(std::abs(mean - exact) < 3.0 * stderr_mean);
    CHECK(stderr_mean < 0.02);
}

TEST_CASE("gate estimate at zero heating reduces to the coherent fidelity") {
    TrajectoryConfig cfg;
    cfg.n_traj = 10;
    cfg.kappa = 0.0;
    const auto run = trajectory_gate_fidelity(3, DriveConfig::from_ratio(8.0), cfg);
    const auto coherent = average_gate_fidelity(3, DriveConfig::from_ratio(8.0), kPi);
    CHECK(run.estimate.mean == coherent.fidelity);
    CHECK(run.estimate.stderr_mean == 0.0);
}

TEST_CASE("fixed seed gives bit-identical estimates for any thread count") {
    TrajectoryConfig cfg;
    cfg.n_traj = 60;
    cfg.kappa = 0.01;
    cfg.seed = 31337;
    cfg.phonon_cutoff = 4;
    const DriveConfig drives = DriveConfig::from_ratio(19.0);

    cfg.threads = 1;
    const auto serial = trajectory_gate_fidelity(3, drives, cfg, true);
    cfg.threads = 3;
    const auto threaded = trajectory_gate_fidelity(3, drives, cfg, true);
    CHECK(serial.estimate.mean == threaded.estimate.mean);
    CHECK(serial.estimate.stderr_mean == threaded.estimate.stderr_mean);
    REQUIRE(serial.samples.size() == threaded.samples.size());
    for (std::size_t i = 0; i < serial.samples.size(); ++i)
        CHECK(serial.samples[i].fidelity == threaded.samples[i].fidelity);

    // and the samples are ordered deterministically
    CHECK(serial.samples.front().control == 0);
    CHECK(serial.samples.front().m == 0);
    CHECK(serial.samples.front().index == 0);
}

TEST_CASE("standard error shrinks like the square root of the sample count") {
    const DriveConfig drives = DriveConfig::from_ratio(19.0);
    double ratio_sum = 0.0;
    const int seeds = 8;
    for (int s = 0; s < seeds; ++s) {
        TrajectoryConfig small;
        small.n_traj = 150;
        small.kappa = 0.02;
        small.phonon_cutoff = 4;
        small.seed = static_cast<std::uint64_t>(s);
        TrajectoryConfig big = small;
        big.n_traj = 300;
        const auto a = trajectory_gate_fidelity(2, drives, small);
        const auto b = trajectory_gate_fidelity(2, drives, big);
        ratio_sum += b.estimate.stderr_mean / a.estimate.stderr_mean;
    }
    const double mean_ratio = ratio_sum / seeds;
    CHECK(mean_ratio > (1.0 / std::sqrt(2.0)) * 0.8);
    CHECK(mean_ratio < (1.0 / std::sqrt(2.0)) * 1.2);
}

TEST_CASE("heating-only padding can only hurt the fidelity") {
    const DriveConfig drives = DriveConfig::from_ratio(19.0);
    TrajectoryConfig cfg;
    cfg.n_traj = 300;
    cfg.kappa = 0.02;
    cfg.phonon_cutoff = 4;
    cfg.seed = 5;
    const auto bare = trajectory_gate_fidelity(2, drives, cfg);
    cfg.pulse_duration = 1.0;
    const auto padded = trajectory_gate_fidelity(2, drives, cfg);
    CHECK(padded.estimate.mean <
          bare.estimate.mean + 3.0 * (bare.estimate.stderr_mean + padded.estimate.stderr_mean));
}

TEST_CASE("configuration validation") {
    TrajectoryConfig cfg;
    cfg.n_traj = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.n_traj = 1;
    cfg.phonon_cutoff = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

}  // TEST_SUITE
