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

#include "fanout/gate_fidelity.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "fanout/analytic.hpp"
#include "fanout/block_basis.hpp"
#include "fanout/block_builder.hpp"
#include "fanout/propagate.hpp"

namespace fanout {

namespace {

/// Return amplitude <psi0|exp(-i H t)|psi0> of one coherent sector.
cplx sector_amplitude(int n, int control, int m, const DriveConfig& drives, double t) {
    const ComputationalClass cls{control, m, n};
    const int p0 = cls.initial_phonons();
    const BlockBasis basis = BlockBasis::enumerate(cls, p0, p0, /*dissipative=*/false);
    const BlockOperator H = build_block_hamiltonian(basis, drives);
    const int j0 = basis.initial_index();
    const StateVector psi = chebyshev_evolve(H, basis_state(basis.dim(), j0), t);
    return psi[j0];
}

/// C(n-1, m) / 2^(n-1) for m = 0..n-1 by multiplicative recurrence.
std::vector<double> class_weights(int n) {
    std::vector<double> w(static_cast<std::size_t>(n));
    double cur = std::ldexp(1.0, -(n - 1));
    for (int m = 0; m <= n - 1; ++m) {
        if (m > 0) cur *= static_cast<double>(n - m) / static_cast<double>(m);
        w[static_cast<std::size_t>(m)] = cur;
    }
    return w;
}

bool is_two_pi_pulse(const DriveConfig& drives, double t) {
    return std::abs(t * drives.omega_t - std::numbers::pi) < 1e-12;
}

}  // namespace

double target_phase(int control, int m) {
    return (control * m) % 2 == 0 ? 1.0 : -1.0;
}

std::string GateFidelityReport::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["drives"] = {{"omega_t", drives.omega_t},
                   {"omega_c", drives.omega_c},
                   {"kappa", drives.kappa},
                   {"duration", drives.duration}};
    auto idle = nlohmann::json::array();
    for (const auto& [m, p] : per_m_idle) idle.push_back({m, p});
    j["per_m_idle"] = std::move(idle);
    j["transition_fidelity"] = transition_fidelity;
    j["fidelity"] = fidelity;
    j["bound"] = bound;
    j["timed_estimate"] = timed_estimate;
    return j.dump(2);
}

GateFidelityReport average_gate_fidelity(int n, const DriveConfig& drives, double t) {
    if (n < 2) throw std::invalid_argument("average_gate_fidelity: n >= 2 required");
    drives.validate();

    const std::vector<double> w = class_weights(n);
    const bool two_pi = is_two_pi_pulse(drives, t);

    GateFidelityReport report;
    report.n = n;
    report.drives = drives;
    report.drives.duration = t;

    double idle_sum = 0.0;
    double transition_sum = 0.0;
    for (int m = 0; m <= n - 1; ++m) {
        const cplx idle_amp = sector_amplitude(n, 0, m, drives, t);
        const double survival = std::norm(idle_amp);
        report.per_m_idle.emplace_back(m, survival);
        idle_sum += w[static_cast<std::size_t>(m)] * survival;

        const cplx trans_amp = sector_amplitude(n, 1, m, drives, t);
        if (two_pi && std::abs(trans_amp - cplx(target_phase(1, m), 0.0)) > 1e-9)
            throw std::runtime_error(
                "average_gate_fidelity: coherent transition sector deviates from its 2*pi rotation");
        transition_sum += w[static_cast<std::size_t>(m)] * std::norm(trans_amp);
    }

    report.transition_fidelity = transition_sum;
    report.fidelity = 0.5 * transition_sum + 0.5 * idle_sum;
    report.bound = analytic::infidelity_upper_bound(n, drives.omega_t, drives.omega_c);
    report.timed_estimate = analytic::timed_infidelity(n, drives.omega_t, drives.omega_c);
    return report;
}

SurvivalCache::SurvivalCache(double t) : t_(t) {}

double SurvivalCache::quantize(double ratio) {
    return std::round(ratio * 1e4) / 1e4;
}

cplx SurvivalCache::idle_amplitude(int m, double ratio) {
    if (m == 0) return {1.0, 0.0};
    const double q = quantize(ratio);
    const std::uint64_t key =
        (static_cast<std::uint64_t>(m) << 40) | static_cast<std::uint64_t>(std::llround(q * 1e4));
    auto it = amps_.find(key);
    if (it != amps_.end()) return it->second;
    const cplx amp = sector_amplitude(m + 1, 0, m, DriveConfig::from_ratio(q), t_);
    amps_.emplace(key, amp);
    return amp;
}

double SurvivalCache::idle_error(int m, double ratio) {
    return 1.0 - std::norm(idle_amplitude(m, ratio));
}

double SurvivalCache::gate_error(int n, double ratio) {
    const std::vector<double> w = class_weights(n);
    double err = 0.0;
    for (int m = 0; m <= n - 1; ++m) err += w[static_cast<std::size_t>(m)] * idle_error(m, ratio);
    return 0.5 * err;
}

std::pair<double, GateFidelityReport> optimize_timing(int n, double ratio_lo, double ratio_hi,
                                                      int grid, SurvivalCache* cache) {
    if (!(ratio_lo < ratio_hi)) throw std::invalid_argument("optimize_timing: empty interval");
    if (grid < 2) throw std::invalid_argument("optimize_timing: grid >= 2 required");

    SurvivalCache local(std::numbers::pi);
    SurvivalCache& c = cache ? *cache : local;

    // keep the scan finer than a quarter of the ~2 spacing between minima
    const int points = std::max(grid, static_cast<int>(std::ceil((ratio_hi - ratio_lo) / 0.5)) + 1);
    std::vector<double> rs(static_cast<std::size_t>(points));
    std::vector<double> fs(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        rs[static_cast<std::size_t>(i)] = ratio_lo + (ratio_hi - ratio_lo) * i / (points - 1);
        fs[static_cast<std::size_t>(i)] = c.gate_error(n, rs[static_cast<std::size_t>(i)]);
    }

    // golden-section refinement inside every local basin of the scan; the
    // deepest notch is not necessarily adjacent to the global grid argmin
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    auto refine = [&](double lo, double hi) {
        double x1 = SurvivalCache::quantize(hi - invphi * (hi - lo));
        double x2 = SurvivalCache::quantize(lo + invphi * (hi - lo));
        double f1 = c.gate_error(n, x1);
        double f2 = c.gate_error(n, x2);
        while (hi - lo > 1e-4 && x2 - x1 >= 0.5e-4) {
            if (f1 <= f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = SurvivalCache::quantize(hi - invphi * (hi - lo));
                f1 = c.gate_error(n, x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = SurvivalCache::quantize(lo + invphi * (hi - lo));
                f2 = c.gate_error(n, x2);
            }
        }
        return f1 <= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
    };

    double best_ratio = rs[0];
    double best_err = fs[0];
    for (int i = 0; i < points; ++i) {
        if (fs[static_cast<std::size_t>(i)] < best_err) {
            best_err = fs[static_cast<std::size_t>(i)];
            best_ratio = rs[static_cast<std::size_t>(i)];
        }
        const bool left_ok = i == 0 || fs[static_cast<std::size_t>(i - 1)] >= fs[static_cast<std::size_t>(i)];
        const bool right_ok =
            i == points - 1 || fs[static_cast<std::size_t>(i + 1)] >= fs[static_cast<std::size_t>(i)];
        if (!(left_ok && right_ok)) continue;
        const auto [r, e] = refine(rs[static_cast<std::size_t>(std::max(i - 1, 0))],
                                   rs[static_cast<std::size_t>(std::min(i + 1, points - 1))]);
        if (e < best_err) {
            best_err = e;
            best_ratio = r;
        }
    }
    return {best_ratio, average_gate_fidelity(n, DriveConfig::from_ratio(best_ratio), c.duration())};
}

TruthTable truth_table(int n, const DriveConfig& drives, double t) {
    if (n < 2 || n > 12) throw std::invalid_argument("truth_table: 2 <= n <= 12 required");
    drives.validate();

    // one amplitude per class, expanded to basis labels below
    std::vector<std::vector<cplx>> amp(2, std::vector<cplx>(static_cast<std::size_t>(n)));
    for (int control = 0; control <= 1; ++control)
        for (int m = 0; m <= n - 1; ++m)
            amp[static_cast<std::size_t>(control)][static_cast<std::size_t>(m)] =
                sector_amplitude(n, control, m, drives, t);

    TruthTable table;
    table.n = n;
    table.rows.reserve(1u << n);
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
        std::string label(static_cast<std::size_t>(n), '0');
        for (int q = 0; q < n; ++q)
            if (bits & (1u << (n - 1 - q))) label[static_cast<std::size_t>(q)] = '1';
        const int control = label[0] == '1' ? 1 : 0;
        const int m = std::popcount(bits) - control;
        const cplx a = amp[static_cast<std::size_t>(control)][static_cast<std::size_t>(m)];
        TruthTable::Row row;
        row.input = label;
        row.output = label;
        row.population = std::norm(a);
        row.phase = std::arg(a);
        row.leakage = 1.0 - row.population;
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace fanout
