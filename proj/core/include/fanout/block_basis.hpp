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

#include "fanout/analytic.hpp"

namespace fanout {

/// One sector of computational basis states: the control bit selects the
/// idle (0) or transition (1) subspace, m counts target qubits in |1>.
/// All C(n-1, m) basis states of a class share the same restricted dynamics.
struct ComputationalClass {
    int control = 0;  ///< 0 = idle subspace, 1 = transition subspace
    int m = 0;        ///< target qubits in |1>
    int n = 2;        ///< total qubit count (1 control + n-1 targets)

    double multiplicity() const { return analytic::binomial(n - 1, m); }
    analytic::uint128 multiplicity_exact() const { return analytic::binomial_exact(n - 1, m); }

    /// Phonon number at the start of the conditional-phase step: the
    /// oscillator carries one excitation exactly when the control is |0>.
    int initial_phonons() const { return control == 0 ? 1 : 0; }

    void validate() const;
};

/// Label of a permutation-symmetric state within one class: n_e targets in
/// |e>, n_f targets in |f> (the remaining m - n_e - n_f stay in |1>), and p
/// oscillator quanta.
struct BlockLabel {
    int n_e = 0;
    int n_f = 0;
    int p = 0;

    friend bool operator==(const BlockLabel&, const BlockLabel&) = default;
};

/// Canonical ordering: lexicographic in (p, n_e, n_f), so serialized
/// operators are reproducible across runs.
inline bool block_label_less(const BlockLabel& a, const BlockLabel& b) {
    if (a.p != b.p) return a.p < b.p;
    if (a.n_e != b.n_e) return a.n_e < b.n_e;
    return a.n_f < b.n_f;
}

/// Enumerated symmetric-sector basis of one class, closed under the
/// conditional-phase couplings (and, if dissipative, under phonon jumps)
/// up to the oscillator cutoff.
class BlockBasis {
public:
    /// Collects every state reachable from (n_e=0, n_f=0, p=initial_phonons).
    /// Coherent idle sectors come out with dimension exactly 2m + 1.
    static BlockBasis enumerate(const ComputationalClass& cls, int initial_phonons,
                                int phonon_cutoff, bool dissipative);

    const ComputationalClass& cls() const { return cls_; }
    int phonon_cutoff() const { return phonon_cutoff_; }
    int initial_phonons() const { return initial_phonons_; }
    bool dissipative() const { return dissipative_; }

    int dim() const { return static_cast<int>(states_.size()); }
    const std::vector<BlockLabel>& states() const { return states_; }
    const BlockLabel& label(int index) const { return states_[static_cast<std::size_t>(index)]; }

    /// Position of a label in the canonical ordering, or -1 if absent.
    int index_of(const BlockLabel& s) const;

    /// Index of the initial state (0, 0, initial_phonons).
    int initial_index() const { return index_of({0, 0, initial_phonons_}); }

private:
    ComputationalClass cls_;
    int phonon_cutoff_ = 0;
    int initial_phonons_ = 0;
    bool dissipative_ = false;
    std::vector<BlockLabel> states_;
};

}  // namespace fanout
