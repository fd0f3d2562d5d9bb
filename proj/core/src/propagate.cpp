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

#include "fanout/propagate.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "fanout/ode.hpp"

namespace fanout {

namespace {

constexpr double kHermitianTol = 1e-12;

void require_hermitian(const BlockOperator& H) {
    if (!H.hermitian())
        throw std::invalid_argument("propagate: operator is not flagged hermitian");
    if (H.hermiticity_defect() > kHermitianTol)
        throw std::invalid_argument("propagate: hermitian flag set but entries are not conjugate-symmetric");
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eigensolve(const BlockOperator& H) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H.dense());
    if (es.info() != Eigen::Success)
        throw std::runtime_error("propagate: eigendecomposition failed");
    return es;
}

/// Bessel J_k(x) for k = 0..kmax by Miller's downward recurrence.
std::vector<double> bessel_j_table(double x, int kmax) {
    std::vector<double> out(static_cast<std::size_t>(kmax) + 1, 0.0);
    if (x == 0.0) {
        out[0] = 1.0;
        return out;
    }
    const int start = kmax + 16 + static_cast<int>(2.0 * std::sqrt(static_cast<double>(kmax) + 1.0));
    double next = 0.0;
    double cur = 1e-300;
    double norm = 0.0;  // J0 + 2 Sum_{k even >=2} Jk
    for (int k = start; k >= 0; --k) {
        const double prev = 2.0 * (k + 1) / x * cur - next;
        next = cur;
        cur = prev;
        if (k <= kmax) out[static_cast<std::size_t>(k)] = cur;
        if (k % 2 == 0) norm += (k == 0 ? 1.0 : 2.0) * cur;
        if (std::abs(cur) > 1e250) {
            const double scale = 1e-250;
            cur *= scale;
            next *= scale;
            norm *= scale;
            for (auto& v : out) v *= scale;
        }
    }
    for (auto& v : out) v /= norm;
    return out;
}

}  // namespace

StateVector basis_state(int dim, int k) {
    if (k < 0 || k >= dim) throw std::out_of_range("basis_state: index outside dimension");
    StateVector v = StateVector::Zero(dim);
    v[k] = 1.0;
    return v;
}

StateVector evolve_state(const BlockOperator& H, const StateVector& psi0, double t, double tol,
                         int dense_limit) {
    require_hermitian(H);
    if (psi0.size() != H.dim()) throw std::invalid_argument("evolve_state: dimension mismatch");
    if (!(tol > 0)) throw std::invalid_argument("evolve_state: tol must be > 0");
    if (t == 0.0) return psi0;

    if (H.dim() <= dense_limit) {
        const auto es = eigensolve(H);
        const Eigen::VectorXcd coeffs = es.eigenvectors().adjoint() * psi0;
        Eigen::VectorXcd phased(coeffs.size());
        for (Eigen::Index j = 0; j < coeffs.size(); ++j)
            phased[j] = coeffs[j] * std::exp(cplx(0.0, -es.eigenvalues()[j] * t));
        return es.eigenvectors() * phased;
    }

    const SparseMatrixC Hs = H.sparse();
    StateVector y = psi0;
    auto rhs = [&Hs](double, const Eigen::VectorXcd& v, Eigen::VectorXcd& dv) {
        dv.noalias() = Hs * v;
        dv *= cplx(0.0, -1.0);
    };
    integrate_dopri5(rhs, y, 0.0, t, tol * 1e-2, tol * 1e-2);
    return y;
}

Eigen::MatrixXcd propagator(const BlockOperator& H, double t, int dense_limit) {
    require_hermitian(H);
    if (H.dim() > dense_limit)
        throw std::invalid_argument("propagator: dimension exceeds dense limit");
    const auto es = eigensolve(H);
    Eigen::VectorXcd phases(H.dim());
    for (int j = 0; j < H.dim(); ++j) phases[j] = std::exp(cplx(0.0, -es.eigenvalues()[j] * t));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

OverlapTrace overlap_trace(const BlockOperator& H, const StateVector& psi0,
                           const StateVector& target, double t_max, int samples, double tol) {
    require_hermitian(H);
    if (psi0.size() != H.dim() || target.size() != H.dim())
        throw std::invalid_argument("overlap_trace: dimension mismatch");
    if (samples < 2) throw std::invalid_argument("overlap_trace: samples >= 2 required");

    OverlapTrace trace;
    trace.times.resize(static_cast<std::size_t>(samples));
    trace.amplitude.resize(static_cast<std::size_t>(samples));
    trace.phase.resize(static_cast<std::size_t>(samples));
    const double dt = t_max / (samples - 1);

    auto record = [&](int i, const StateVector& psi) {
        const cplx ov = target.dot(psi);
        trace.times[static_cast<std::size_t>(i)] = i * dt;
        trace.amplitude[static_cast<std::size_t>(i)] = std::abs(ov);
        trace.phase[static_cast<std::size_t>(i)] = std::arg(ov);
    };

    if (H.dim() <= 256) {
        const auto es = eigensolve(H);
        const Eigen::VectorXcd c0 = es.eigenvectors().adjoint() * psi0;
        const Eigen::VectorXcd ct = es.eigenvectors().adjoint() * target;
        for (int i = 0; i < samples; ++i) {
            cplx ov = 0.0;
            for (Eigen::Index j = 0; j < c0.size(); ++j)
                ov += std::conj(ct[j]) * c0[j] * std::exp(cplx(0.0, -es.eigenvalues()[j] * i * dt));
            trace.times[static_cast<std::size_t>(i)] = i * dt;
            trace.amplitude[static_cast<std::size_t>(i)] = std::abs(ov);
            trace.phase[static_cast<std::size_t>(i)] = std::arg(ov);
        }
        return trace;
    }

    StateVector psi = psi0;
    record(0, psi);
    for (int i = 1; i < samples; ++i) {
        psi = evolve_state(H, psi, dt, tol);
        record(i, psi);
    }
    return trace;
}

StateVector chebyshev_evolve(const SparseMatrixD& H, const StateVector& psi0, double t) {
    if (H.rows() != H.cols() || H.rows() != psi0.size())
        throw std::invalid_argument("chebyshev_evolve: dimension mismatch");
    if (t == 0.0) return psi0;

    // Gershgorin bounds of the spectrum
    const Eigen::Index n = H.rows();
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd radius = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < H.outerSize(); ++k) {
        for (SparseMatrixD::InnerIterator it(H, k); it; ++it) {
            if (it.row() == it.col())
                diag[it.row()] = it.value();
            else
                radius[it.row()] += std::abs(it.value());
        }
    }
    double lo = (diag - radius).minCoeff();
    double hi = (diag + radius).maxCoeff();
    if (hi - lo < 1e-12) {
        // (near-)scalar operator: pure phase
        return std::exp(cplx(0.0, -0.5 * (hi + lo) * t)) * psi0;
    }
    const double center = 0.5 * (hi + lo);
    const double half = 0.5 * (hi - lo) * (1.0 + 1e-12);

    const double x = half * t;
    const int kmax =
        static_cast<int>(std::ceil(x + 14.0 * std::cbrt(x + 1.0) + 18.0));
    const std::vector<double> bessel = bessel_j_table(x, kmax);

    // recurrence on shifted/scaled operator Hs = (H - center)/half
    auto apply = [&](const Eigen::VectorXcd& v, Eigen::VectorXcd& out) {
        out.noalias() = H * v;
        out -= center * v;
        out /= half;
    };

    const cplx mi(0.0, -1.0);
    Eigen::VectorXcd tkm1 = psi0;              // T_0 psi
    Eigen::VectorXcd tk(n);
    apply(psi0, tk);                            // T_1 psi
    Eigen::VectorXcd acc = bessel[0] * tkm1 + 2.0 * bessel[1] * mi * tk;
    Eigen::VectorXcd tkp1(n);
    cplx mik = mi;
    int tiny_run = 0;
    for (int k = 2; k <= kmax; ++k) {
        apply(tk, tkp1);
        tkp1 = 2.0 * tkp1 - tkm1;
        tkm1.swap(tk);
        tk.swap(tkp1);
        mik *= mi;
        const double jk = bessel[static_cast<std::size_t>(k)];
        acc += (2.0 * jk) * mik * tk;
        if (std::abs(jk) < 1e-17) {
            if (++tiny_run >= 4 && k > x) break;
        } else {
            tiny_run = 0;
        }
    }
    return std::exp(mi * center * t) * acc;
}

StateVector chebyshev_evolve(const BlockOperator& H, const StateVector& psi0, double t) {
    require_hermitian(H);
    return chebyshev_evolve(H.sparse_real(), psi0, t);
}

}  // namespace fanout
