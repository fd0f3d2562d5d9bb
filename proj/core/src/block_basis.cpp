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

#include "fanout/block_basis.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace fanout {

void ComputationalClass::validate() const {
    if (control != 0 && control != 1)
        throw std::invalid_argument("ComputationalClass: control must be 0 or 1");
    if (n < 1) throw std::invalid_argument("ComputationalClass: n >= 1 required");
    if (m < 0 || m > n - 1)
        throw std::invalid_argument("ComputationalClass: need 0 <= m <= n-1");
}

BlockBasis BlockBasis::enumerate(const ComputationalClass& cls, int initial_phonons,
                                 int phonon_cutoff, bool dissipative) {
    cls.validate();
    if (initial_phonons < 0) throw std::invalid_argument("enumerate: initial_phonons >= 0 required");
    if (phonon_cutoff < initial_phonons)
        throw std::invalid_argument("enumerate: phonon_cutoff must be >= initial_phonons");

    const int m = cls.m;
    auto in_range = [&](int n_e, int n_f, int p) {
        return n_e >= 0 && n_f >= 0 && n_e + n_f <= m && p >= 0 && p <= phonon_cutoff;
    };

    std::set<std::tuple<int, int, int>> seen;
    std::deque<std::tuple<int, int, int>> queue;
    seen.insert({0, 0, initial_phonons});
    queue.push_back({0, 0, initial_phonons});
    while (!queue.empty()) {
        auto [n_e, n_f, p] = queue.front();
        queue.pop_front();
        std::vector<std::tuple<int, int, int>> nbrs = {
            {n_e + 1, n_f, p},          // probe up
            {n_e - 1, n_f, p},          // probe down
            {n_e - 1, n_f + 1, p - 1},  // sideband
            {n_e + 1, n_f - 1, p + 1},  // sideband adjoint
        };
        if (dissipative) {
            nbrs.push_back({n_e, n_f, p + 1});
            nbrs.push_back({n_e, n_f, p - 1});
        }
        for (const auto& s : nbrs) {
            auto [e2, f2, p2] = s;
            if (!in_range(e2, f2, p2)) continue;
            if (seen.insert(s).second) queue.push_back(s);
        }
    }

    BlockBasis basis;
    basis.cls_ = cls;
    basis.phonon_cutoff_ = phonon_cutoff;
    basis.initial_phonons_ = initial_phonons;
    basis.dissipative_ = dissipative;
    basis.states_.reserve(seen.size());
    for (const auto& [n_e, n_f, p] : seen) basis.states_.push_back({n_e, n_f, p});
    std::sort(basis.states_.begin(), basis.states_.end(), block_label_less);
    return basis;
}

int BlockBasis::index_of(const BlockLabel& s) const {
    auto it = std::lower_bound(states_.begin(), states_.end(), s, block_label_less);
    if (it == states_.end() || !(*it == s)) return -1;
    return static_cast<int>(it - states_.begin());
}

}  // namespace fanout
