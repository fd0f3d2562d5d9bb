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

#include "fanout/trajectory.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "fanout/analytic.hpp"
#include "fanout/block_basis.hpp"
#include "fanout/block_builder.hpp"
#include "fanout/ode.hpp"

namespace fanout {

void TrajectoryConfig::validate() const {
    if (n_traj < 1) throw std::invalid_argument("TrajectoryConfig: n_traj >= 1 required");
    if (phonon_cutoff < 1) throw std::invalid_argument("TrajectoryConfig: phonon_cutoff >= 1 required");
    if (!(tol > 0)) throw std::invalid_argument("TrajectoryConfig: tol must be > 0");
    if (kappa < 0) throw std::invalid_argument("TrajectoryConfig: kappa >= 0 required");
    if (pulse_duration < 0) throw std::invalid_argument("TrajectoryConfig: pulse_duration >= 0 required");
}

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("FANOUT_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

namespace {

struct EffectiveHamiltonian {
    SparseMatrixC heff;
    std::vector<SparseMatrixC> cs;

    EffectiveHamiltonian(const BlockOperator& H, const std::vector<BlockOperator>& c_ops) {
        SparseMatrixC sum(H.dim(), H.dim());
        cs.reserve(c_ops.size());
        for (const auto& c : c_ops) {
            if (c.nnz() == 0) continue;
            cs.push_back(c.sparse());
            sum = sum + SparseMatrixC(cs.back().adjoint() * cs.back());
        }
        heff = H.sparse() - cplx(0.0, 0.5) * sum;
    }
};

}  // namespace

StateVector run_trajectory(const BlockOperator& H, const std::vector<BlockOperator>& c_ops,
                           const StateVector& psi0, double t, RngStream& rng, double tol) {
    if (psi0.size() != H.dim()) throw std::invalid_argument("run_trajectory: dimension mismatch");
    for (const auto& c : c_ops)
        if (c.dim() != H.dim())
            throw std::invalid_argument("run_trajectory: collapse operator dimension mismatch");

    const EffectiveHamiltonian eff(H, c_ops);
    auto rhs = [&eff](double, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) {
        dy.noalias() = eff.heff * y;
        dy *= cplx(0.0, -1.0);
    };

    const double jump_resolution = 1e-6 * t;
    StateVector psi = psi0;
    double now = 0.0;
    double threshold = rng.uniform();

    while (now < t) {
        StateVector before_step = psi;
        double step_start = now;
        bool crossed = false;
        auto watcher = [&](double t_prev, const Eigen::VectorXcd& y_prev, double,
                           const Eigen::VectorXcd& y_now) {
            if (y_now.squaredNorm() > y_prev.squaredNorm() * (1.0 + 1e-9))
                throw std::runtime_error("run_trajectory: norm increased between jumps");
            if (y_now.squaredNorm() <= threshold) {
                before_step = y_prev;
                step_start = t_prev;
                crossed = true;
                return false;
            }
            return true;
        };
        const double reached = integrate_dopri5(rhs, psi, now, t, tol * 1e-2, tol * 1e-2, watcher);
        if (!crossed) {
            now = reached;
            break;
        }

        // bisect the crossing time inside [step_start, reached]
        double lo = 0.0, hi = reached - step_start;
        StateVector at_hi = psi;
        while (hi - lo > jump_resolution) {
            const double mid = 0.5 * (lo + hi);
            StateVector probe = before_step;
            if (mid > 0.0) integrate_dopri5(rhs, probe, 0.0, mid, tol * 1e-2, tol * 1e-2);
            if (probe.squaredNorm() <= threshold) {
                hi = mid;
                at_hi = probe;
            } else {
                lo = mid;
            }
        }
        now = step_start + hi;
        psi = at_hi;

        // choose the jump channel with probability proportional to |c_k psi|^2
        std::vector<StateVector> jumped;
        jumped.reserve(eff.cs.size());
        double total = 0.0;
        for (const auto& c : eff.cs) {
            jumped.push_back(c * psi);
            total += jumped.back().squaredNorm();
        }
        if (total < 1e-300)
            throw std::runtime_error("run_trajectory: zero-norm collapse, no jump channel available");
        double pick = rng.uniform() * total;
        std::size_t chosen = 0;
        for (; chosen + 1 < jumped.size(); ++chosen) {
            pick -= jumped[chosen].squaredNorm();
            if (pick <= 0.0) break;
        }
        psi = jumped[chosen] / jumped[chosen].norm();
        threshold = rng.uniform();
    }

    psi.normalize();
    return psi;
}

namespace {

struct SectorTask {
    int control = 0;
    int m = 0;
    BlockOperator H{1};
    std::vector<BlockOperator> c_ops;
    StateVector psi0;
    int j0 = 0;
    std::uint64_t block_id = 0;
    std::vector<double> fidelities;  // one slot per trajectory, index-ordered
};

}  // namespace

TrajectoryRunResult trajectory_gate_fidelity(int n, const DriveConfig& drives,
                                             const TrajectoryConfig& cfg, bool keep_samples) {
    if (n < 2) throw std::invalid_argument("trajectory_gate_fidelity: n >= 2 required");
    cfg.validate();
    DriveConfig d = drives;
    d.kappa = cfg.kappa;
    d.validate();

    TrajectoryRunResult result;
    if (cfg.kappa == 0.0) {
        result.report = average_gate_fidelity(n, d, d.duration);
        result.estimate = {result.report.fidelity, 0.0, cfg.n_traj, cfg.seed};
        return result;
    }

    // one task per sector; block ids are control * n + m
    std::vector<SectorTask> tasks;
    tasks.reserve(2 * static_cast<std::size_t>(n));
    for (int control = 0; control <= 1; ++control) {
        for (int m = 0; m <= n - 1; ++m) {
            const ComputationalClass cls{control, m, n};
            SectorTask task;
            task.control = control;
            task.m = m;
            const BlockBasis basis =
                BlockBasis::enumerate(cls, cls.initial_phonons(), cfg.phonon_cutoff, true);
            task.H = build_block_hamiltonian(basis, d);
            task.c_ops = build_block_collapse_ops(basis, cfg.kappa);
            task.j0 = basis.initial_index();
            task.psi0 = basis_state(basis.dim(), task.j0);
            task.block_id = static_cast<std::uint64_t>(control) * n + static_cast<std::uint64_t>(m);
            task.fidelities.assign(static_cast<std::size_t>(cfg.n_traj), 0.0);
            tasks.push_back(std::move(task));
        }
    }

    auto run_one = [&](SectorTask& task, int traj) {
        RngStream rng = RngStream::derive(cfg.seed, task.block_id, static_cast<std::uint64_t>(traj));
        StateVector psi = task.psi0;
        if (cfg.pulse_duration > 0.0) {
            const BlockOperator frozen(task.H.dim(), true);
            psi = run_trajectory(frozen, task.c_ops, psi, cfg.pulse_duration, rng, cfg.tol);
        }
        psi = run_trajectory(task.H, task.c_ops, psi, d.duration, rng, cfg.tol);
        if (cfg.pulse_duration > 0.0) {
            const BlockOperator frozen(task.H.dim(), true);
            psi = run_trajectory(frozen, task.c_ops, psi, cfg.pulse_duration, rng, cfg.tol);
        }
        task.fidelities[static_cast<std::size_t>(traj)] = std::norm(psi[task.j0]);
    };

    const int threads = resolve_thread_count(cfg.threads);
    const std::size_t total_jobs = tasks.size() * static_cast<std::size_t>(cfg.n_traj);
    if (threads <= 1) {
        for (std::size_t job = 0; job < total_jobs; ++job)
            run_one(tasks[job / static_cast<std::size_t>(cfg.n_traj)],
                    static_cast<int>(job % static_cast<std::size_t>(cfg.n_traj)));
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back([&]() {
                for (std::size_t job = next.fetch_add(1); job < total_jobs; job = next.fetch_add(1))
                    run_one(tasks[job / static_cast<std::size_t>(cfg.n_traj)],
                            static_cast<int>(job % static_cast<std::size_t>(cfg.n_traj)));
            });
        }
        for (auto& th : pool) th.join();
    }

    // fixed-order reduction: independent of the thread schedule above
    GateFidelityReport report;
    report.n = n;
    report.drives = d;
    report.bound = analytic::infidelity_upper_bound(n, d.omega_t, d.omega_c);
    report.timed_estimate = analytic::timed_infidelity(n, d.omega_t, d.omega_c);

    double fidelity = 0.0;
    double variance = 0.0;
    double transition_sum = 0.0;
    for (auto& task : tasks) {
        double mean = 0.0;
        for (double f : task.fidelities) mean += f;
        mean /= cfg.n_traj;
        double var = 0.0;
        for (double f : task.fidelities) var += (f - mean) * (f - mean);
        var = cfg.n_traj > 1 ? var / (cfg.n_traj - 1) : 0.0;

        const double weight =
            analytic::binomial(n - 1, task.m) * std::ldexp(1.0, -n);  // C(n-1,m)/2^n
        fidelity += weight * mean;
        variance += weight * weight * var / cfg.n_traj;
        if (task.control == 0)
            report.per_m_idle.emplace_back(task.m, mean);
        else
            transition_sum += 2.0 * weight * mean;

        if (keep_samples) {
            for (int i = 0; i < cfg.n_traj; ++i)
                result.samples.push_back(
                    {task.control, task.m, i, task.fidelities[static_cast<std::size_t>(i)]});
        }
    }
    report.transition_fidelity = transition_sum;
    report.fidelity = fidelity;

    result.report = report;
    result.estimate = {fidelity, std::sqrt(variance), cfg.n_traj, cfg.seed};
    return result;
}

}  // namespace fanout
