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

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace fanout {

using cplx = std::complex<double>;
using SparseMatrixC = Eigen::SparseMatrix<cplx>;
using SparseMatrixD = Eigen::SparseMatrix<double>;

struct BlockEntry {
    std::int32_t row = 0;
    std::int32_t col = 0;
    cplx value{0.0, 0.0};
};

/// Complex sparse operator on one symmetric-sector block, stored as a
/// canonical coordinate list (sorted by row, then column, duplicates merged,
/// exact zeros dropped).
class BlockOperator {
public:
    BlockOperator() = default;
    explicit BlockOperator(int dim, bool hermitian = false) : dim_(dim), hermitian_(hermitian) {
        if (dim < 1) throw std::invalid_argument("BlockOperator: dim >= 1 required");
    }

    int dim() const { return dim_; }
    bool hermitian() const { return hermitian_; }
    const std::vector<BlockEntry>& entries() const { return entries_; }
    std::size_t nnz() const { return entries_.size(); }

    /// Accumulates v at (row, col). Call canonicalize() when done.
    void add(int row, int col, cplx v);
    /// Sorts, merges duplicate coordinates and drops exact zeros.
    void canonicalize();

    /// Max |A(i,j) - conj(A(j,i))| over all stored coordinates.
    double hermiticity_defect() const;

    Eigen::MatrixXcd dense() const;
    SparseMatrixC sparse() const;
    /// Real view of the entries; requires every stored value to have zero
    /// imaginary part.
    SparseMatrixD sparse_real() const;
    bool is_real(double tol = 0.0) const;

    /// y += alpha * A x
    void apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y, cplx alpha = {1.0, 0.0}) const;

    BlockOperator adjoint() const;
    BlockOperator scaled(cplx factor) const;

    /// Coordinate-list JSON: {"dim": d, "hermitian": b,
    ///                        "entries": [[row, col, re, im], ...]}.
    std::string to_json() const;
    static BlockOperator from_json(const std::string& text);

private:
    int dim_ = 1;
    bool hermitian_ = false;
    std::vector<BlockEntry> entries_;
};

}  // namespace fanout
