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

// fanout: experiment runner for the oscillator-mediated phase-flip fanout
// gate. Subcommands map to the standard data products: time-resolved
// overlap traces, ratio sweeps, scaling scans, heating estimates and
// block-vs-exact verification. All outputs are deterministic CSV/JSON with
// a run manifest next to each file.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fanout/analytic.hpp"
#include "fanout/block_basis.hpp"
#include "fanout/block_builder.hpp"
#include "fanout/gate_fidelity.hpp"
#include "fanout/io.hpp"
#include "fanout/lindblad.hpp"
#include "fanout/oracle.hpp"
#include "fanout/propagate.hpp"
#include "fanout/trajectory.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitVerifyFailed = 3;
constexpr int kExitNumerical = 4;

using nlohmann::json;

struct ManifestClock {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void write_manifest(const std::string& subcommand, const json& params, std::uint64_t seed,
                    const std::vector<std::string>& outputs, double wall_seconds) {
    json j;
    j["subcommand"] = subcommand;
    j["parameters"] = params;
    j["seed"] = seed;
    j["artifact_version"] = FANOUT_VERSION;
    j["outputs"] = outputs;
    j["wall_seconds"] = wall_seconds;
    const std::string path = outputs.empty() ? subcommand + ".manifest.json"
                                             : outputs.front() + ".manifest.json";
    std::ofstream out(path);
    out << j.dump(2) << "\n";
}

/// Fills option defaults from a JSON config file; explicit flags win.
class ConfigOverlay {
public:
    explicit ConfigOverlay(const std::string& path) {
        if (path.empty()) return;
        std::ifstream in(path);
        if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
        in >> data_;
    }

    template <class T>
    void apply(const CLI::Option* opt, const std::string& key, T& value) const {
        if (opt->count() > 0) return;
        if (!data_.contains(key)) return;
        value = data_.at(key).get<T>();
    }

private:
    json data_;
};

std::vector<double> parse_kappas(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    if (out.empty()) throw CLI::ValidationError("--kappas", "no values given");
    return out;
}

std::string class_tag(int control, int m) {
    return "c" + std::to_string(control) + "m" + std::to_string(m);
}

// ---------------------------------------------------------------------------
// trace: per-class overlap amplitude/phase and running fidelity
// ---------------------------------------------------------------------------

int cmd_trace(int n, double ratio, int samples, bool tune, double tune_window,
              const std::string& out_path, const json& params) {
    ManifestClock clock;
    double r = ratio;
    if (tune) {
        fanout::SurvivalCache cache(std::numbers::pi);
        r = fanout::optimize_timing(n, ratio * (1.0 - tune_window), ratio * (1.0 + tune_window), 9,
                                    &cache)
                .first;
    }
    const fanout::DriveConfig drives = fanout::DriveConfig::from_ratio(r);
    const double t_max = drives.duration;

    struct ClassTrace {
        int control;
        int m;
        double weight;
        fanout::OverlapTrace trace;
    };
    std::vector<ClassTrace> traces;
    for (int control = 0; control <= 1; ++control) {
        for (int m = 0; m <= n - 1; ++m) {
            const fanout::ComputationalClass cls{control, m, n};
            const fanout::BlockBasis basis =
                fanout::BlockBasis::enumerate(cls, cls.initial_phonons(), cls.initial_phonons(), false);
            const fanout::BlockOperator H = fanout::build_block_hamiltonian(basis, drives);
            const fanout::StateVector psi0 = fanout::basis_state(basis.dim(), basis.initial_index());
            ClassTrace ct{control, m, cls.multiplicity() * std::ldexp(1.0, -n),
                          fanout::overlap_trace(H, psi0, psi0, t_max, samples)};
            traces.push_back(std::move(ct));
        }
    }

    fanout::CsvWriter csv(out_path);
    csv.header({"t", "class", "amplitude", "phase", "fidelity"});
    for (int i = 0; i < samples; ++i) {
        double fid = 0.0;
        for (const auto& ct : traces)
            fid += ct.weight * ct.trace.amplitude[static_cast<std::size_t>(i)] *
                   ct.trace.amplitude[static_cast<std::size_t>(i)];
        for (const auto& ct : traces) {
            csv.field(ct.trace.times[static_cast<std::size_t>(i)]);
            csv.field(class_tag(ct.control, ct.m));
            csv.field(ct.trace.amplitude[static_cast<std::size_t>(i)]);
            csv.field(ct.trace.phase[static_cast<std::size_t>(i)]);
            csv.field(fid);
            csv.end_row();
        }
    }
    csv.close();

    json effective = params;
    effective["tuned_ratio"] = r;
    write_manifest("trace", effective, 0, {out_path}, clock.seconds());
    std::cout << "trace: n=" << n << " ratio=" << fanout::format_g17(r) << " -> " << out_path << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// sweep-ratio: infidelity vs drive ratio with theory and bound columns
// ---------------------------------------------------------------------------

int cmd_sweep_ratio(int n, double ratio_min, double ratio_max, int steps, bool per_m,
                    const std::string& out_path, const json& params) {
    ManifestClock clock;
    fanout::SurvivalCache cache(std::numbers::pi);

    std::vector<std::string> columns = {"ratio", "infidelity", "theory", "bound"};
    if (per_m)
        for (int m = 0; m <= n - 1; ++m) columns.push_back("err_m" + std::to_string(m));

    fanout::CsvWriter csv(out_path);
    csv.header(columns);
    for (int i = 0; i < steps; ++i) {
        const double r = ratio_min + (ratio_max - ratio_min) * i / (steps - 1);
        csv.field(r);
        csv.field(cache.gate_error(n, r));
        csv.field(fanout::analytic::theory_infidelity_sum(n, 1.0, r, std::numbers::pi));
        csv.field(fanout::analytic::infidelity_upper_bound(n, 1.0, r));
        if (per_m)
            for (int m = 0; m <= n - 1; ++m) csv.field(cache.idle_error(m, r));
        csv.end_row();
    }
    csv.close();
    write_manifest("sweep-ratio", params, 0, {out_path}, clock.seconds());
    std::cout << "sweep-ratio: n=" << n << " [" << ratio_min << ", " << ratio_max << "] x" << steps
              << " -> " << out_path << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// scaling: timed vs untimed infidelity up to n_max qubits
// ---------------------------------------------------------------------------

int cmd_scaling(int n_max, double ratio_lo, double ratio_hi, int grid, const std::string& out_path,
                const json& params) {
    ManifestClock clock;
    fanout::SurvivalCache cache(std::numbers::pi);

    const int points = std::max(grid, static_cast<int>(std::ceil((ratio_hi - ratio_lo) / 0.5)) + 1);
    std::vector<double> grid_ratios(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        grid_ratios[static_cast<std::size_t>(i)] = ratio_lo + (ratio_hi - ratio_lo) * i / (points - 1);

    fanout::CsvWriter csv(out_path);
    csv.header({"n", "timed", "untimed", "bound"});
    for (int n = 2; n <= n_max; ++n) {
        const auto [r_opt, report] = fanout::optimize_timing(n, ratio_lo, ratio_hi, grid, &cache);
        double untimed = 0.0;
        for (double r : grid_ratios) untimed += cache.gate_error(n, r);
        untimed /= points;
        csv.field(static_cast<long long>(n));
        csv.field(1.0 - report.fidelity);
        csv.field(untimed);
        csv.field(fanout::analytic::infidelity_upper_bound(n, 1.0, ratio_hi));
        csv.end_row();
    }
    csv.close();
    write_manifest("scaling", params, 0, {out_path}, clock.seconds());
    std::cout << "scaling: n<=" << n_max << " ratio in [" << ratio_lo << ", " << ratio_hi << "] -> "
              << out_path << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// heating: trajectory estimates of the infidelity under oscillator heating
// ---------------------------------------------------------------------------

int cmd_heating(int n_max, const std::vector<double>& kappas, int n_traj, std::uint64_t seed,
                int cutoff, double pulse_duration, const std::string& out_path,
                const std::string& samples_path, const json& params) {
    ManifestClock clock;
    fanout::SurvivalCache cache(std::numbers::pi);

    std::unique_ptr<fanout::CsvWriter> samples_csv;
    if (!samples_path.empty()) {
        samples_csv = std::make_unique<fanout::CsvWriter>(samples_path);
        samples_csv->header({"n", "kappa", "m", "control", "trajectory", "fidelity"});
    }

    fanout::CsvWriter csv(out_path);
    csv.header({"n", "kappa", "infidelity", "stderr", "n_traj", "seed"});
    for (int n = 2; n <= n_max; ++n) {
        const auto [r_opt, coherent] = fanout::optimize_timing(n, 18.0, 20.0, 9, &cache);
        for (double kappa : kappas) {
            fanout::TrajectoryConfig cfg;
            cfg.n_traj = n_traj;
            cfg.seed = seed;
            cfg.kappa = kappa;
            cfg.phonon_cutoff = cutoff;
            cfg.pulse_duration = pulse_duration;
            const fanout::DriveConfig drives = fanout::DriveConfig::from_ratio(r_opt, kappa);
            const auto run = fanout::trajectory_gate_fidelity(n, drives, cfg, samples_csv != nullptr);
            csv.field(static_cast<long long>(n));
            csv.field(kappa);
            csv.field(1.0 - run.estimate.mean);
            csv.field(run.estimate.stderr_mean);
            csv.field(static_cast<long long>(run.estimate.n_traj));
            csv.field(static_cast<long long>(run.estimate.seed));
            csv.end_row();
            if (samples_csv) {
                for (const auto& s : run.samples) {
                    samples_csv->field(static_cast<long long>(n));
                    samples_csv->field(kappa);
                    samples_csv->field(static_cast<long long>(s.m));
                    samples_csv->field(static_cast<long long>(s.control));
                    samples_csv->field(static_cast<long long>(s.index));
                    samples_csv->field(s.fidelity);
                    samples_csv->end_row();
                }
            }
        }
    }
    csv.close();
    if (samples_csv) samples_csv->close();

    std::vector<std::string> outputs = {out_path};
    if (!samples_path.empty()) outputs.push_back(samples_path);
    write_manifest("heating", params, seed, outputs, clock.seconds());
    std::cout << "heating: n<=" << n_max << " " << kappas.size() << " rates, " << n_traj
              << " trajectories -> " << out_path << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// verify: symmetric-sector method against the exact tensor-product reference
// ---------------------------------------------------------------------------

int cmd_verify(int n, double kappa, int n_states, std::uint64_t seed, bool corrupt_factor,
               const std::string& out_path, const json& params) {
    ManifestClock clock;
    json report;
    bool pass = true;

    fanout::SurvivalCache cache(std::numbers::pi);
    const double r = fanout::optimize_timing(n, 18.0, 20.0, 9, &cache).first;
    const fanout::DriveConfig drives = fanout::DriveConfig::from_ratio(r, kappa);
    const int cutoff = 2;
    report["n"] = n;
    report["ratio"] = r;
    report["kappa"] = kappa;
    report["phonon_cutoff"] = cutoff;

    // coherent per-basis-state amplitudes, sector method vs full space
    {
        const auto full = fanout::oracle::step2_basis_amplitudes(n, drives, cutoff);
        double max_dev = 0.0;
        for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
            const int control = (bits >> (n - 1)) & 1u;
            int m = 0;
            for (int q = 1; q < n; ++q)
                if (bits & (1u << (n - 1 - q))) ++m;
            const fanout::ComputationalClass cls{control, m, n};
            const fanout::BlockBasis basis =
                fanout::BlockBasis::enumerate(cls, cls.initial_phonons(), cls.initial_phonons(), false);
            fanout::BlockOperator H = fanout::build_block_hamiltonian(basis, drives);
            if (corrupt_factor && !H.entries().empty()) {
                // test hook: a deliberately wrong collective factor must trip
                // the comparison below
                H = H.scaled(1.01);
            }
            const fanout::StateVector psi =
                fanout::chebyshev_evolve(H, fanout::basis_state(basis.dim(), basis.initial_index()),
                                         drives.duration);
            const fanout::cplx amp =
                fanout::target_phase(control, m) * psi[basis.initial_index()];
            max_dev = std::max(max_dev, std::abs(amp - full[bits]));
        }
        report["coherent_max_deviation"] = max_dev;
        report["coherent_pass"] = max_dev < 1e-8;
        pass = pass && max_dev < 1e-8;
    }

    // dissipative per-basis-state fidelities, sector method vs dense master equation
    if (kappa > 0.0) {
        const auto full = fanout::oracle::step2_basis_fidelities(n, drives, cutoff, kappa, 1e-9);
        double max_dev = 0.0;
        for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
            const int control = (bits >> (n - 1)) & 1u;
            int m = 0;
            for (int q = 1; q < n; ++q)
                if (bits & (1u << (n - 1 - q))) ++m;
            const fanout::ComputationalClass cls{control, m, n};
            const fanout::BlockBasis basis =
                fanout::BlockBasis::enumerate(cls, cls.initial_phonons(), cutoff, true);
            const fanout::BlockOperator H = fanout::build_block_hamiltonian(basis, drives);
            const auto c_ops = fanout::build_block_collapse_ops(basis, kappa);
            const double fb =
                fanout::lindblad_survival(H, c_ops, basis.initial_index(), drives.duration, 1e-9);
            max_dev = std::max(max_dev, std::abs(fb - full[bits]));
        }
        report["dissipative_max_deviation"] = max_dev;
        report["dissipative_pass"] = max_dev < 1e-6;
        pass = pass && max_dev < 1e-6;
    }

    // block structure of the generator and the jump operators
    {
        const fanout::oracle::FullSpace space(n, cutoff);
        const auto steps = fanout::oracle::build_full_step_hamiltonians(n, drives, cutoff);
        const auto partition = fanout::oracle::BlockPartition::build(space);
        const auto a = fanout::oracle::full_annihilation(space);
        const double h2_off = fanout::oracle::verify_block_structure(steps.h2, partition).max_off_block;
        const double a_off = fanout::oracle::verify_block_structure(a, partition).max_off_block;
        const double adag_off =
            fanout::oracle::verify_block_structure(fanout::SparseMatrixC(a.adjoint()), partition)
                .max_off_block;
        report["block_structure_max_off"] = std::max({h2_off, a_off, adag_off});
        const bool ok = std::max({h2_off, a_off, adag_off}) < 1e-12;
        report["block_structure_pass"] = ok;
        pass = pass && ok;
    }

    // fidelity factorization on random superpositions
    if (kappa > 0.0 || n_states > 0) {
        const auto cmp = fanout::oracle::rmse_random_states(n, drives, kappa, n_states, seed, cutoff);
        report["rmse"] = cmp.rmse;
        report["overestimate_fraction"] = cmp.overestimate_fraction;
        report["min_gap"] = cmp.min_gap;
        report["max_gap"] = cmp.max_gap;
        const bool ok = cmp.rmse < 1e-3 && cmp.overestimate_fraction == 1.0;
        report["random_state_pass"] = ok;
        pass = pass && ok;
    }

    report["pass"] = pass;
    {
        std::ofstream out(out_path);
        out << report.dump(2) << "\n";
    }
    write_manifest("verify", params, seed, {out_path}, clock.seconds());
    std::cout << "verify: n=" << n << " kappa=" << kappa << " -> " << out_path
              << (pass ? " [pass]" : " [FAIL]") << "\n";
    return pass ? 0 : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator for the oscillator-mediated n-qubit phase-flip fanout gate"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON file with option defaults (flags override)")
        ->expected(1);

    // trace
    auto* trace = app.add_subcommand("trace", "Per-class overlap traces and running fidelity");
    int tr_n = 4;
    double tr_ratio = 8.0;
    int tr_samples = 400;
    bool tr_no_tune = false;
    double tr_window = 0.1;
    std::string tr_out = "trace.csv";
    auto* tr_n_opt = trace->add_option("--n", tr_n, "qubit count (2..12)");
    auto* tr_ratio_opt = trace->add_option("--ratio", tr_ratio, "nominal drive ratio omega_c/omega_t");
    auto* tr_samples_opt = trace->add_option("--samples", tr_samples, "time samples");
    trace->add_flag("--no-tune", tr_no_tune, "use the nominal ratio without timing tuning");
    auto* tr_window_opt =
        trace->add_option("--tune-window", tr_window, "relative half-width of the tuning search");
    auto* tr_out_opt = trace->add_option("--out", tr_out, "output CSV path");

    // sweep-ratio
    auto* sweep = app.add_subcommand("sweep-ratio", "Infidelity as a function of the drive ratio");
    int sw_n = 2;
    double sw_min = 2.0, sw_max = 20.0;
    int sw_steps = 200;
    bool sw_per_m = false;
    std::string sw_out = "sweep.csv";
    auto* sw_n_opt = sweep->add_option("--n", sw_n, "qubit count");
    auto* sw_min_opt = sweep->add_option("--ratio-min", sw_min, "lowest ratio");
    auto* sw_max_opt = sweep->add_option("--ratio-max", sw_max, "highest ratio");
    auto* sw_steps_opt = sweep->add_option("--steps", sw_steps, "grid points (>= 2)");
    sweep->add_flag("--per-m", sw_per_m, "add per-sector error probability columns");
    auto* sw_out_opt = sweep->add_option("--out", sw_out, "output CSV path");

    // scaling
    auto* scaling = app.add_subcommand("scaling", "Timed vs untimed infidelity up to n qubits");
    int sc_nmax = 100;
    double sc_lo = 18.0, sc_hi = 20.0;
    int sc_grid = 9;
    std::string sc_out = "scaling.csv";
    auto* sc_nmax_opt = scaling->add_option("--n-max", sc_nmax, "largest qubit count (<= 100)");
    auto* sc_lo_opt = scaling->add_option("--ratio-lo", sc_lo, "interval lower edge");
    auto* sc_hi_opt = scaling->add_option("--ratio-hi", sc_hi, "interval upper edge");
    auto* sc_grid_opt = scaling->add_option("--grid", sc_grid, "scan grid points");
    auto* sc_out_opt = scaling->add_option("--out", sc_out, "output CSV path");

    // heating
    auto* heating = app.add_subcommand("heating", "Trajectory fidelity estimates under heating");
    int he_nmax = 6;
    std::string he_kappas = "0,0.001,0.003,0.01";
    int he_traj = 1000;
    std::uint64_t he_seed = 1;
    int he_cutoff = 5;
    double he_pulse = 0.0;
    std::string he_out = "heating.csv";
    std::string he_samples;
    auto* he_nmax_opt = heating->add_option("--n-max", he_nmax, "largest qubit count (<= 20)");
    auto* he_kappas_opt =
        heating->add_option("--kappas", he_kappas, "comma-separated heating rates (units of omega_t)");
    auto* he_traj_opt = heating->add_option("--n-traj", he_traj, "trajectories per sector");
    auto* he_seed_opt = heating->add_option("--seed", he_seed, "master seed");
    auto* he_cutoff_opt = heating->add_option("--cutoff", he_cutoff, "oscillator truncation");
    auto* he_pulse_opt = heating->add_option(
        "--pulse-duration", he_pulse,
        "heating-only padding before/after the gate step (sensitivity study; default off)");
    auto* he_out_opt = heating->add_option("--out", he_out, "output CSV path");
    auto* he_samples_opt =
        heating->add_option("--samples-out", he_samples, "optional per-trajectory sample CSV");

    // verify
    auto* verify = app.add_subcommand("verify", "Sector method vs exact reference checks");
    int ve_n = 3;
    double ve_kappa = 0.01;
    int ve_states = 50;
    std::uint64_t ve_seed = 1;
    bool ve_corrupt = false;
    std::string ve_out = "verify.json";
    auto* ve_n_opt = verify->add_option("--n", ve_n, "qubit count (2..4)");
    auto* ve_kappa_opt = verify->add_option("--kappa", ve_kappa, "heating rate");
    auto* ve_states_opt = verify->add_option("--n-states", ve_states, "random superpositions to test");
    auto* ve_seed_opt = verify->add_option("--seed", ve_seed, "master seed");
    verify->add_flag("--corrupt-factor", ve_corrupt,
                     "test hook: corrupt a collective factor, verification must fail");
    auto* ve_out_opt = verify->add_option("--out", ve_out, "output JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        const ConfigOverlay config(config_path);

        if (trace->parsed()) {
            config.apply(tr_n_opt, "n", tr_n);
            config.apply(tr_ratio_opt, "ratio", tr_ratio);
            config.apply(tr_samples_opt, "samples", tr_samples);
            config.apply(tr_window_opt, "tune_window", tr_window);
            config.apply(tr_out_opt, "out", tr_out);
            if (tr_n < 2 || tr_n > 12) throw CLI::ValidationError("--n", "need 2 <= n <= 12");
            if (!(tr_ratio > 0)) throw CLI::ValidationError("--ratio", "must be positive");
            if (tr_samples < 2) throw CLI::ValidationError("--samples", "need >= 2");
            json params = {{"n", tr_n},           {"ratio", tr_ratio},
                           {"samples", tr_samples}, {"tune", !tr_no_tune},
                           {"tune_window", tr_window}, {"out", tr_out}};
            return cmd_trace(tr_n, tr_ratio, tr_samples, !tr_no_tune, tr_window, tr_out, params);
        }
        if (sweep->parsed()) {
            config.apply(sw_n_opt, "n", sw_n);
            config.apply(sw_min_opt, "ratio_min", sw_min);
            config.apply(sw_max_opt, "ratio_max", sw_max);
            config.apply(sw_steps_opt, "steps", sw_steps);
            config.apply(sw_out_opt, "out", sw_out);
            if (sw_n < 2 || sw_n > 100) throw CLI::ValidationError("--n", "need 2 <= n <= 100");
            if (sw_steps < 2) throw CLI::ValidationError("--steps", "need >= 2");
            if (!(sw_min > 0) || !(sw_max > sw_min))
                throw CLI::ValidationError("--ratio-min/--ratio-max", "need 0 < min < max");
            json params = {{"n", sw_n},         {"ratio_min", sw_min}, {"ratio_max", sw_max},
                           {"steps", sw_steps}, {"per_m", sw_per_m},   {"out", sw_out}};
            return cmd_sweep_ratio(sw_n, sw_min, sw_max, sw_steps, sw_per_m, sw_out, params);
        }
        if (scaling->parsed()) {
            config.apply(sc_nmax_opt, "n_max", sc_nmax);
            config.apply(sc_lo_opt, "ratio_lo", sc_lo);
            config.apply(sc_hi_opt, "ratio_hi", sc_hi);
            config.apply(sc_grid_opt, "grid", sc_grid);
            config.apply(sc_out_opt, "out", sc_out);
            if (sc_nmax < 2 || sc_nmax > 100) throw CLI::ValidationError("--n-max", "need 2 <= n <= 100");
            if (!(sc_lo > 0) || !(sc_hi > sc_lo))
                throw CLI::ValidationError("--ratio-lo/--ratio-hi", "need 0 < lo < hi");
            if (sc_grid < 2) throw CLI::ValidationError("--grid", "need >= 2");
            json params = {{"n_max", sc_nmax}, {"ratio_lo", sc_lo}, {"ratio_hi", sc_hi},
                           {"grid", sc_grid},  {"out", sc_out}};
            return cmd_scaling(sc_nmax, sc_lo, sc_hi, sc_grid, sc_out, params);
        }
        if (heating->parsed()) {
            config.apply(he_nmax_opt, "n_max", he_nmax);
            config.apply(he_kappas_opt, "kappas", he_kappas);
            config.apply(he_traj_opt, "n_traj", he_traj);
            config.apply(he_seed_opt, "seed", he_seed);
            config.apply(he_cutoff_opt, "cutoff", he_cutoff);
            config.apply(he_pulse_opt, "pulse_duration", he_pulse);
            config.apply(he_out_opt, "out", he_out);
            config.apply(he_samples_opt, "samples_out", he_samples);
            if (he_nmax < 2 || he_nmax > 20) throw CLI::ValidationError("--n-max", "need 2 <= n <= 20");
            if (he_traj < 1) throw CLI::ValidationError("--n-traj", "need >= 1");
            if (he_cutoff < 1) throw CLI::ValidationError("--cutoff", "need >= 1");
            const auto kappas = parse_kappas(he_kappas);
            json params = {{"n_max", he_nmax},   {"kappas", he_kappas}, {"n_traj", he_traj},
                           {"seed", he_seed},    {"cutoff", he_cutoff}, {"pulse_duration", he_pulse},
                           {"out", he_out},      {"samples_out", he_samples}};
            return cmd_heating(he_nmax, kappas, he_traj, he_seed, he_cutoff, he_pulse, he_out,
                               he_samples, params);
        }
        if (verify->parsed()) {
            config.apply(ve_n_opt, "n", ve_n);
            config.apply(ve_kappa_opt, "kappa", ve_kappa);
            config.apply(ve_states_opt, "n_states", ve_states);
            config.apply(ve_seed_opt, "seed", ve_seed);
            config.apply(ve_out_opt, "out", ve_out);
            if (ve_n < 2 || ve_n > 4) throw CLI::ValidationError("--n", "need 2 <= n <= 4");
            if (ve_kappa < 0) throw CLI::ValidationError("--kappa", "need >= 0");
            json params = {{"n", ve_n},           {"kappa", ve_kappa}, {"n_states", ve_states},
                           {"seed", ve_seed},     {"corrupt_factor", ve_corrupt},
                           {"out", ve_out}};
            return cmd_verify(ve_n, ve_kappa, ve_states, ve_seed, ve_corrupt, ve_out, params);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
