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

#include <Eigen/Dense>

#include "fanout/block_operator.hpp"

namespace fanout {

/// Propagates a density matrix under the master equation
///   rho' = -i[H, rho] + sum_k (c_k rho c_k^dag - 1/2 {c_k^dag c_k, rho})
/// using the Taylor action of the exponential with spectral-radius-controlled
/// substeps. Exact up to the requested tolerance; trace preservation is
/// checked on exit.
Eigen::MatrixXcd lindblad_evolve(const SparseMatrixC& H, const std::vector<SparseMatrixC>& c_ops,
                                 const Eigen::MatrixXcd& rho0, double t, double tol = 1e-9);

Eigen::MatrixXcd lindblad_evolve(const BlockOperator& H, const std::vector<BlockOperator>& c_ops,
                                 const Eigen::MatrixXcd& rho0, double t, double tol = 1e-9);

/// <j|rho(t)|j> for rho0 = |j><j|: the survival fidelity of one basis state
/// of a block under the dissipative gate dynamics.
double lindblad_survival(const BlockOperator& H, const std::vector<BlockOperator>& c_ops, int j,
                         double t, double tol = 1e-9);

}  // namespace fanout
