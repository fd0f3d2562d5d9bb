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

#include <numbers>

#include <benchmark/benchmark.h>

#include "fanout/block_basis.hpp"
#include "fanout/block_builder.hpp"
#include "fanout/gate_fidelity.hpp"
#include "fanout/lindblad.hpp"
#include "fanout/propagate.hpp"
#include "fanout/rng.hpp"
#include "fanout/trajectory.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

void BM_BuildIdleBlock(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const fanout::DriveConfig drives = fanout::DriveConfig::from_ratio(19.0);
    for (auto _ : state) {
        const auto basis = fanout::BlockBasis::enumerate({0, m, m + 1}, 1, 1, false);
        auto H = fanout::build_block_hamiltonian(basis, drives);
        benchmark::DoNotOptimize(H);
    }
}
BENCHMARK(BM_BuildIdleBlock)->Arg(10)->Arg(50)->Arg(99);

void BM_ChebyshevSurvival(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const auto basis = fanout::BlockBasis::enumerate({0, m, m + 1}, 1, 1, false);
    const auto H = fanout::build_block_hamiltonian(basis, fanout::DriveConfig::from_ratio(19.0));
    const auto psi0 = fanout::basis_state(basis.dim(), basis.initial_index());
    for (auto _ : state) {
        auto psi = fanout::chebyshev_evolve(H, psi0, kPi);
        benchmark::DoNotOptimize(psi);
    }
}
BENCHMARK(BM_ChebyshevSurvival)->Arg(10)->Arg(50)->Arg(99);

void BM_EigenSurvival(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const auto basis = fanout::BlockBasis::enumerate({0, m, m + 1}, 1, 1, false);
    const auto H = fanout::build_block_hamiltonian(basis, fanout::DriveConfig::from_ratio(19.0));
    const auto psi0 = fanout::basis_state(basis.dim(), basis.initial_index());
    for (auto _ : state) {
        auto psi = fanout::evolve_state(H, psi0, kPi);
        benchmark::DoNotOptimize(psi);
    }
}
BENCHMARK(BM_EigenSurvival)->Arg(10)->Arg(50)->Arg(99);

void BM_GateFidelity(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const fanout::DriveConfig drives = fanout::DriveConfig::from_ratio(19.0);
    for (auto _ : state) {
        auto rep = fanout::average_gate_fidelity(n, drives, kPi);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_GateFidelity)->Arg(10)->Arg(40)->Arg(100);

void BM_SectorLindblad(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const auto basis = fanout::BlockBasis::enumerate({0, m, m + 1}, 1, 4, true);
    const auto H = fanout::build_block_hamiltonian(basis, fanout::DriveConfig::from_ratio(19.0));
    const auto c_ops = fanout::build_block_collapse_ops(basis, 0.01);
    for (auto _ : state) {
        auto f = fanout::lindblad_survival(H, c_ops, basis.initial_index(), kPi, 1e-8);
        benchmark::DoNotOptimize(f);
    }
}
BENCHMARK(BM_SectorLindblad)->Arg(2)->Arg(5);

void BM_Trajectory(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const auto basis = fanout::BlockBasis::enumerate({0, m, m + 1}, 1, 5, true);
    const auto H = fanout::build_block_hamiltonian(basis, fanout::DriveConfig::from_ratio(19.0));
    const auto c_ops = fanout::build_block_collapse_ops(basis, 0.01);
    const auto psi0 = fanout::basis_state(basis.dim(), basis.initial_index());
    std::uint64_t i = 0;
    for (auto _ : state) {
        auto rng = fanout::RngStream::derive(1, 0, i++);
        auto psi = fanout::run_trajectory(H, c_ops, psi0, kPi, rng, 1e-8);
        benchmark::DoNotOptimize(psi);
    }
}
BENCHMARK(BM_Trajectory)->Arg(1)->Arg(5)->Arg(11);

}  // namespace

BENCHMARK_MAIN();
