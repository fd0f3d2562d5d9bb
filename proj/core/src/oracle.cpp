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

#include "fanout/oracle.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fanout/block_basis.hpp"
#include "fanout/block_builder.hpp"
#include "fanout/gate_fidelity.hpp"
#include "fanout/lindblad.hpp"
#include "fanout/rng.hpp"

namespace fanout::oracle {

namespace {

Eigen::MatrixXcd hermitian_propagator(const SparseMatrixC& H, double t) {
    const Eigen::MatrixXcd dense(H);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("oracle: eigendecomposition failed");
    Eigen::VectorXcd phases(H.rows());
    for (Eigen::Index j = 0; j < H.rows(); ++j)
        phases[j] = std::exp(cplx(0.0, -es.eigenvalues()[j] * t));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

FullSpace::FullSpace(int n, int phonon_cutoff) : n_(n), cutoff_(phonon_cutoff) {
    if (n < 2 || n > 5) throw std::invalid_argument("FullSpace: 2 <= n <= 5 required");
    if (phonon_cutoff < 1) throw std::invalid_argument("FullSpace: phonon_cutoff >= 1 required");
    dim_ = (cutoff_ + 1);
    for (int q = 0; q < n_; ++q) dim_ *= 4;
}

int FullSpace::index(const std::vector<int>& digits, int p) const {
    if (static_cast<int>(digits.size()) != n_) throw std::invalid_argument("FullSpace: wrong digit count");
    if (p < 0 || p > cutoff_) throw std::out_of_range("FullSpace: phonon number outside cutoff");
    int v = 0;
    for (int d : digits) {
        if (d < 0 || d > 3) throw std::out_of_range("FullSpace: digit outside 0..3");
        v = v * 4 + d;
    }
    return v * (cutoff_ + 1) + p;
}

std::pair<std::vector<int>, int> FullSpace::label(int index) const {
    if (index < 0 || index >= dim_) throw std::out_of_range("FullSpace: index outside dimension");
    const int p = index % (cutoff_ + 1);
    int v = index / (cutoff_ + 1);
    std::vector<int> digits(static_cast<std::size_t>(n_), 0);
    for (int q = n_ - 1; q >= 0; --q) {
        digits[static_cast<std::size_t>(q)] = v % 4;
        v /= 4;
    }
    return {digits, p};
}

int FullSpace::computational_index(std::uint32_t bits, int p) const {
    std::vector<int> digits(static_cast<std::size_t>(n_), kZero);
    for (int q = 0; q < n_; ++q)
        if (bits & (1u << (n_ - 1 - q))) digits[static_cast<std::size_t>(q)] = kOne;
    return index(digits, p);
}

int FullSpace::mid_index(std::uint32_t bits) const {
    std::vector<int> digits(static_cast<std::size_t>(n_), kZero);
    for (int q = 0; q < n_; ++q)
        if (bits & (1u << (n_ - 1 - q))) digits[static_cast<std::size_t>(q)] = kOne;
    const bool control_zero = digits[0] == kZero;
    if (control_zero) digits[0] = kExcited;
    return index(digits, control_zero ? 1 : 0);
}

StepHamiltonians build_full_step_hamiltonians(int n, const DriveConfig& drives, int cutoff) {
    drives.validate();
    const FullSpace space(n, cutoff);
    const int dim = space.dim();

    std::vector<Eigen::Triplet<cplx>> t1;
    std::vector<Eigen::Triplet<cplx>> t2;
    for (int col = 0; col < dim; ++col) {
        auto [digits, p] = space.label(col);
        // step 1/3: Omega_c a^dag |e><0| on the control
        if (digits[0] == kZero && p + 1 <= cutoff) {
            auto nd = digits;
            nd[0] = kExcited;
            t1.emplace_back(space.index(nd, p + 1), col,
                            drives.omega_c * std::sqrt(static_cast<double>(p + 1)));
        }
        // step 2: targets only
        for (int q = 1; q < n; ++q) {
            if (digits[static_cast<std::size_t>(q)] == kOne) {
                auto nd = digits;
                nd[static_cast<std::size_t>(q)] = kExcited;
                t2.emplace_back(space.index(nd, p), col, drives.omega_t);
            }
            if (digits[static_cast<std::size_t>(q)] == kExcited && p >= 1) {
                auto nd = digits;
                nd[static_cast<std::size_t>(q)] = kAux;
                t2.emplace_back(space.index(nd, p - 1), col,
                                drives.omega_c * std::sqrt(static_cast<double>(p)));
            }
        }
    }

    auto assemble = [dim](std::vector<Eigen::Triplet<cplx>>& trips) {
        SparseMatrixC lower(dim, dim);
        lower.setFromTriplets(trips.begin(), trips.end());
        return SparseMatrixC(lower + SparseMatrixC(lower.adjoint()));
    };
    StepHamiltonians steps;
    steps.h1 = assemble(t1);
    steps.h2 = assemble(t2);
    steps.h3 = steps.h1;
    return steps;
}

SparseMatrixC full_annihilation(const FullSpace& space) {
    std::vector<Eigen::Triplet<cplx>> trips;
    for (int col = 0; col < space.dim(); ++col) {
        auto [digits, p] = space.label(col);
        if (p >= 1) trips.emplace_back(space.index(digits, p - 1), col, std::sqrt(static_cast<double>(p)));
    }
    SparseMatrixC a(space.dim(), space.dim());
    a.setFromTriplets(trips.begin(), trips.end());
    return a;
}

Eigen::MatrixXcd full_gate_sequence(int n, const DriveConfig& drives, int cutoff) {
    const StepHamiltonians steps = build_full_step_hamiltonians(n, drives, cutoff);
    const double t_pulse = std::numbers::pi / (2.0 * drives.omega_c);
    const Eigen::MatrixXcd u1 = hermitian_propagator(steps.h1, t_pulse);
    const Eigen::MatrixXcd u2 = hermitian_propagator(steps.h2, drives.duration);
    return u1 * u2 * u1;
}

cplx full_sequence_target_phase(std::uint32_t bits, int n) {
    const int control = (bits >> (n - 1)) & 1u;
    const int m = std::popcount(bits) - control;
    if (control == 1) return {target_phase(1, m), 0.0};
    return {-1.0, 0.0};
}

Eigen::MatrixXcd exact_lindblad_evolve(const Eigen::MatrixXcd& rho0, const SparseMatrixC& H,
                                       const std::vector<SparseMatrixC>& c_ops, double t,
                                       double tol) {
    if (rho0.rows() > 4096) throw std::invalid_argument("exact_lindblad_evolve: dimension exceeds 4096");
    return lindblad_evolve(H, c_ops, rho0, t, tol);
}

std::vector<cplx> step2_basis_amplitudes(int n, const DriveConfig& drives, int cutoff) {
    const FullSpace space(n, cutoff);
    const StepHamiltonians steps = build_full_step_hamiltonians(n, drives, cutoff);
    const Eigen::MatrixXcd u2 = hermitian_propagator(steps.h2, drives.duration);
    std::vector<cplx> out(1u << n);
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
        const int mid = space.mid_index(bits);
        const int control = (bits >> (n - 1)) & 1u;
        const int m = std::popcount(bits) - control;
        const double phase = target_phase(control, m);
        out[bits] = phase * u2(mid, mid);
    }
    return out;
}

std::vector<double> step2_basis_fidelities(int n, const DriveConfig& drives, int cutoff,
                                           double kappa, double tol) {
    const FullSpace space(n, cutoff);
    const StepHamiltonians steps = build_full_step_hamiltonians(n, drives, cutoff);
    const SparseMatrixC a = full_annihilation(space);
    std::vector<SparseMatrixC> c_ops;
    if (kappa > 0.0) {
        c_ops.push_back(SparseMatrixC(std::sqrt(kappa) * SparseMatrixC(a.adjoint())));
        c_ops.push_back(SparseMatrixC(std::sqrt(kappa) * a));
    }
    std::vector<double> out(1u << n);
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
        const int mid = space.mid_index(bits);
        Eigen::MatrixXcd rho0 = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
        rho0(mid, mid) = 1.0;
        const Eigen::MatrixXcd rho = exact_lindblad_evolve(rho0, steps.h2, c_ops, drives.duration, tol);
        out[bits] = rho(mid, mid).real();
    }
    return out;
}

BlockPartition BlockPartition::build(const FullSpace& space) {
    BlockPartition part;
    part.class_of_.resize(static_cast<std::size_t>(space.dim()));
    for (int i = 0; i < space.dim(); ++i) {
        auto [digits, p] = space.label(i);
        int m = 0;
        for (int q = 1; q < space.n(); ++q)
            if (digits[static_cast<std::size_t>(q)] != kZero) ++m;
        part.class_of_[static_cast<std::size_t>(i)] = digits[0] * (space.n() + 1) + m;
    }
    part.num_classes_ = 4 * (space.n() + 1);
    return part;
}

BlockStructureReport verify_block_structure(const SparseMatrixC& op, const BlockPartition& partition) {
    BlockStructureReport report;
    for (int k = 0; k < op.outerSize(); ++k) {
        for (SparseMatrixC::InnerIterator it(op, k); it; ++it) {
            if (partition.class_of(static_cast<int>(it.row())) !=
                partition.class_of(static_cast<int>(it.col())))
                report.max_off_block = std::max(report.max_off_block, std::abs(it.value()));
        }
    }
    return report;
}

RandomStateComparison rmse_random_states(int n, const DriveConfig& drives, double kappa,
                                         int n_states, std::uint64_t seed, int cutoff, double tol) {
    if (n > 4) throw std::invalid_argument("rmse_random_states: n <= 4 required");
    if (n_states < 1) throw std::invalid_argument("rmse_random_states: n_states >= 1 required");
    const FullSpace space(n, cutoff);
    const StepHamiltonians steps = build_full_step_hamiltonians(n, drives, cutoff);
    const SparseMatrixC a = full_annihilation(space);
    std::vector<SparseMatrixC> c_ops;
    if (kappa > 0.0) {
        c_ops.push_back(SparseMatrixC(std::sqrt(kappa) * SparseMatrixC(a.adjoint())));
        c_ops.push_back(SparseMatrixC(std::sqrt(kappa) * a));
    }

    // per-sector survival fidelities from the symmetric-sector master
    // equation, at the same cutoff and truncation conventions
    std::vector<std::vector<double>> sector_fid(2, std::vector<double>(static_cast<std::size_t>(n)));
    for (int control = 0; control <= 1; ++control) {
        for (int m = 0; m <= n - 1; ++m) {
            const ComputationalClass cls{control, m, n};
            const BlockBasis basis =
                BlockBasis::enumerate(cls, cls.initial_phonons(), kappa > 0.0 ? cutoff : cls.initial_phonons(),
                                      kappa > 0.0);
            const BlockOperator H = build_block_hamiltonian(basis, drives);
            const auto ops = build_block_collapse_ops(basis, kappa);
            sector_fid[static_cast<std::size_t>(control)][static_cast<std::size_t>(m)] =
                lindblad_survival(H, ops, basis.initial_index(), drives.duration, tol);
        }
    }

    const std::uint32_t n_basis = 1u << n;
    RngStream rng = RngStream::derive(seed, 0x72616e64ULL, 0);
    RandomStateComparison cmp;
    cmp.n_states = n_states;
    cmp.seed = seed;
    double sq_sum = 0.0;
    int overestimates = 0;
    cmp.min_gap = 1.0;
    cmp.max_gap = -1.0;

    for (int s = 0; s < n_states; ++s) {
        Eigen::VectorXcd coeff(n_basis);
        for (std::uint32_t b = 0; b < n_basis; ++b) coeff[b] = rng.complex_normal();
        coeff.normalize();

        Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(space.dim());
        Eigen::VectorXcd target = Eigen::VectorXcd::Zero(space.dim());
        double approx = 0.0;
        for (std::uint32_t b = 0; b < n_basis; ++b) {
            const int mid = space.mid_index(b);
            const int control = (b >> (n - 1)) & 1u;
            const int m = std::popcount(b) - control;
            psi0[mid] += coeff[b];
            target[mid] += coeff[b] * target_phase(control, m);
            approx += std::norm(coeff[b]) *
                      sector_fid[static_cast<std::size_t>(control)][static_cast<std::size_t>(m)];
        }
        const Eigen::MatrixXcd rho0 = psi0 * psi0.adjoint();
        const Eigen::MatrixXcd rho = exact_lindblad_evolve(rho0, steps.h2, c_ops, drives.duration, tol);
        const double exact = (target.adjoint() * rho * target)(0, 0).real();
        const double gap = approx - exact;
        sq_sum += gap * gap;
        if (gap >= -1e-9) ++overestimates;
        cmp.min_gap = std::min(cmp.min_gap, gap);
        cmp.max_gap = std::max(cmp.max_gap, gap);
    }
    cmp.rmse = std::sqrt(sq_sum / n_states);
    cmp.overestimate_fraction = static_cast<double>(overestimates) / n_states;
    return cmp;
}

}  // namespace fanout::oracle
