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

#include "fanout/lindblad.hpp"

#include <cmath>
#include <stdexcept>

namespace fanout {

namespace {

double gershgorin_norm(const SparseMatrixC& A) {
    Eigen::VectorXd rowsum = Eigen::VectorXd::Zero(A.rows());
    for (int k = 0; k < A.outerSize(); ++k)
        for (SparseMatrixC::InnerIterator it(A, k); it; ++it) rowsum[it.row()] += std::abs(it.value());
    return A.rows() == 0 ? 0.0 : rowsum.maxCoeff();
}

struct LindbladApplier {
    const SparseMatrixC& H;
    std::vector<SparseMatrixC> cs;
    std::vector<SparseMatrixC> cdags;
    std::vector<SparseMatrixC> cdcs;

    LindbladApplier(const SparseMatrixC& H_, const std::vector<SparseMatrixC>& c_ops) : H(H_) {
        for (const auto& c : c_ops) {
            if (c.nonZeros() == 0) continue;
            cs.push_back(c);
            cdags.push_back(SparseMatrixC(c.adjoint()));
            cdcs.push_back(SparseMatrixC((cdags.back() * c).pruned()));
        }
    }

    double radius() const {
        double r = 2.0 * gershgorin_norm(H);
        for (const auto& cdc : cdcs) r += 2.0 * gershgorin_norm(cdc);
        return r;
    }

    void operator()(const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out) const {
        const cplx mi(0.0, -1.0);
        out.noalias() = H * rho;
        out.noalias() -= rho * H;
        out *= mi;
        for (std::size_t k = 0; k < cs.size(); ++k) {
            const Eigen::MatrixXcd crho = cs[k] * rho;
            out.noalias() += crho * cdags[k];
            const Eigen::MatrixXcd anti = cdcs[k] * rho;
            out.noalias() -= 0.5 * anti;
            out.noalias() -= 0.5 * (rho * cdcs[k]);
        }
    }
};

}  // namespace

Eigen::MatrixXcd lindblad_evolve(const SparseMatrixC& H, const std::vector<SparseMatrixC>& c_ops,
                                 const Eigen::MatrixXcd& rho0, double t, double tol) {
    const Eigen::Index d = rho0.rows();
    if (rho0.cols() != d || H.rows() != d || H.cols() != d)
        throw std::invalid_argument("lindblad_evolve: dimension mismatch");
    for (const auto& c : c_ops)
        if (c.rows() != d || c.cols() != d)
            throw std::invalid_argument("lindblad_evolve: collapse operator dimension mismatch");
    if (!(tol > 0)) throw std::invalid_argument("lindblad_evolve: tol must be > 0");
    if (t == 0.0) return rho0;
    if (t < 0.0) throw std::invalid_argument("lindblad_evolve: t >= 0 required");

    const LindbladApplier L(H, c_ops);
    const double radius = L.radius();
    constexpr double theta = 9.0;  // substep phase budget for the Taylor series
    const int substeps = std::max(1, static_cast<int>(std::ceil(radius * t / theta)));
    const double dt = t / substeps;
    const double term_tol = tol / (2.0 * substeps);
    constexpr int max_degree = 160;

    const cplx trace0 = rho0.trace();
    Eigen::MatrixXcd rho = rho0;
    Eigen::MatrixXcd term(d, d), next(d, d);
    for (int s = 0; s < substeps; ++s) {
        term = rho;
        int small_runs = 0;
        int k = 1;
        for (; k <= max_degree; ++k) {
            L(term, next);
            term = next * (dt / k);
            rho += term;
            if (term.norm() <= term_tol * rho.norm()) {
                if (++small_runs >= 2) break;
            } else {
                small_runs = 0;
            }
        }
        if (k > max_degree)
            throw std::runtime_error("lindblad_evolve: Taylor series failed to converge");
    }

    if (std::abs(rho.trace() - trace0) > std::max(1e-8, 100.0 * tol) * std::max(1.0, std::abs(trace0)))
        throw std::runtime_error("lindblad_evolve: trace drift exceeds tolerance");
    return rho;
}

Eigen::MatrixXcd lindblad_evolve(const BlockOperator& H, const std::vector<BlockOperator>& c_ops,
                                 const Eigen::MatrixXcd& rho0, double t, double tol) {
    std::vector<SparseMatrixC> cs;
    cs.reserve(c_ops.size());
    for (const auto& c : c_ops) cs.push_back(c.sparse());
    return lindblad_evolve(H.sparse(), cs, rho0, t, tol);
}

double lindblad_survival(const BlockOperator& H, const std::vector<BlockOperator>& c_ops, int j,
                         double t, double tol) {
    Eigen::MatrixXcd rho0 = Eigen::MatrixXcd::Zero(H.dim(), H.dim());
    rho0(j, j) = 1.0;
    const Eigen::MatrixXcd rho = lindblad_evolve(H, c_ops, rho0, t, tol);
    return rho(j, j).real();
}

}  // namespace fanout
