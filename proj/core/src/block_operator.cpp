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

#include "fanout/block_operator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace fanout {

void BlockOperator::add(int row, int col, cplx v) {
    if (row < 0 || row >= dim_ || col < 0 || col >= dim_)
        throw std::out_of_range("BlockOperator::add: coordinate outside dim");
    entries_.push_back({row, col, v});
}

void BlockOperator::canonicalize() {
    std::sort(entries_.begin(), entries_.end(), [](const BlockEntry& a, const BlockEntry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::vector<BlockEntry> merged;
    merged.reserve(entries_.size());
    for (const auto& e : entries_) {
        if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col) {
            merged.back().value += e.value;
        } else {
            merged.push_back(e);
        }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const BlockEntry& e) { return e.value == cplx{0.0, 0.0}; }),
                 merged.end());
    entries_ = std::move(merged);
}

double BlockOperator::hermiticity_defect() const {
    std::unordered_map<std::uint64_t, cplx> lookup;
    lookup.reserve(entries_.size());
    for (const auto& e : entries_)
        lookup[(static_cast<std::uint64_t>(e.row) << 32) | static_cast<std::uint32_t>(e.col)] = e.value;
    double defect = 0.0;
    for (const auto& e : entries_) {
        const auto key = (static_cast<std::uint64_t>(e.col) << 32) | static_cast<std::uint32_t>(e.row);
        auto it = lookup.find(key);
        const cplx partner = it == lookup.end() ? cplx{0.0, 0.0} : it->second;
        defect = std::max(defect, std::abs(e.value - std::conj(partner)));
    }
    return defect;
}

Eigen::MatrixXcd BlockOperator::dense() const {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim_, dim_);
    for (const auto& e : entries_) out(e.row, e.col) += e.value;
    return out;
}

SparseMatrixC BlockOperator::sparse() const {
    std::vector<Eigen::Triplet<cplx>> trips;
    trips.reserve(entries_.size());
    for (const auto& e : entries_) trips.emplace_back(e.row, e.col, e.value);
    SparseMatrixC out(dim_, dim_);
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

bool BlockOperator::is_real(double tol) const {
    for (const auto& e : entries_)
        if (std::abs(e.value.imag()) > tol) return false;
    return true;
}

SparseMatrixD BlockOperator::sparse_real() const {
    if (!is_real()) throw std::invalid_argument("BlockOperator::sparse_real: operator has imaginary entries");
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(entries_.size());
    for (const auto& e : entries_) trips.emplace_back(e.row, e.col, e.value.real());
    SparseMatrixD out(dim_, dim_);
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

void BlockOperator::apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y, cplx alpha) const {
    if (x.size() != dim_ || y.size() != dim_)
        throw std::invalid_argument("BlockOperator::apply: dimension mismatch");
    for (const auto& e : entries_) y[e.row] += alpha * e.value * x[e.col];
}

BlockOperator BlockOperator::adjoint() const {
    BlockOperator out(dim_, hermitian_);
    for (const auto& e : entries_) out.add(e.col, e.row, std::conj(e.value));
    out.canonicalize();
    return out;
}

BlockOperator BlockOperator::scaled(cplx factor) const {
    BlockOperator out(dim_, hermitian_ && factor.imag() == 0.0);
    for (const auto& e : entries_) out.add(e.row, e.col, factor * e.value);
    out.canonicalize();
    return out;
}

std::string BlockOperator::to_json() const {
    nlohmann::json j;
    j["dim"] = dim_;
    j["hermitian"] = hermitian_;
    auto entries = nlohmann::json::array();
    for (const auto& e : entries_)
        entries.push_back({e.row, e.col, e.value.real(), e.value.imag()});
    j["entries"] = std::move(entries);
    return j.dump();
}

BlockOperator BlockOperator::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    BlockOperator out(j.at("dim").get<int>(), j.at("hermitian").get<bool>());
    for (const auto& e : j.at("entries")) {
        if (!e.is_array() || e.size() != 4)
            throw std::invalid_argument("BlockOperator::from_json: entry must be [row, col, re, im]");
        out.add(e[0].get<int>(), e[1].get<int>(), {e[2].get<double>(), e[3].get<double>()});
    }
    out.canonicalize();
    if (out.hermitian() && out.hermiticity_defect() > 1e-12)
        throw std::invalid_argument("BlockOperator::from_json: hermitian flag inconsistent with entries");
    return out;
}

}  // namespace fanout
