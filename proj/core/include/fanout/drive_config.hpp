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

#include <numbers>
#include <stdexcept>

namespace fanout {

/// Control parameters of the fanout gate, in units where rates are angular
/// frequencies. The convention used throughout the project is omega_t = 1,
/// which fixes the unit system; all other rates and all times are expressed
/// in these units.
struct DriveConfig {
    /// Weak carrier (probe) Rabi rate driving |1> <-> |e> on the targets.
    double omega_t = 1.0;
    /// Strong sideband rate. Blocks the probe on the one-phonon manifold.
    double omega_c = 8.0;
    /// Oscillator heating rate (hot-bath limit, equal up/down rates).
    double kappa = 0.0;
    /// Duration of the conditional-phase step. The 2*pi pulse condition
    /// fixes the default at pi / omega_t.
    double duration = std::numbers::pi;

    static DriveConfig from_ratio(double ratio, double kappa = 0.0) {
        DriveConfig d;
        d.omega_t = 1.0;
        d.omega_c = ratio;
        d.kappa = kappa;
        d.duration = std::numbers::pi;
        return d;
    }

    double ratio() const { return omega_c / omega_t; }

    void validate() const {
        if (!(omega_t > 0)) throw std::invalid_argument("DriveConfig: omega_t must be > 0");
        if (omega_c < 0) throw std::invalid_argument("DriveConfig: omega_c must be >= 0");
        if (kappa < 0) throw std::invalid_argument("DriveConfig: kappa must be >= 0");
        if (!(duration > 0)) throw std::invalid_argument("DriveConfig: duration must be > 0");
    }
};

}  // namespace fanout
