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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace fanout {

/// Dormand-Prince 5(4) with PI step control on complex state vectors.
/// rhs(t, y, dydt) fills the derivative. After every accepted step,
/// cb(t_prev, y_prev, t_now, y_now) may return false to stop early;
/// the integrator then leaves y at y_now and returns t_now.
template <class Rhs, class Callback>
double integrate_dopri5(const Rhs& rhs, Eigen::VectorXcd& y, double t0, double t1,
                        double rtol, double atol, Callback&& cb) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // embedded 4th order weights
    static constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                            e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

    if (t1 == t0) return t0;
    const double direction = t1 > t0 ? 1.0 : -1.0;
    if (direction < 0) throw std::invalid_argument("integrate_dopri5: backward integration unsupported");

    const auto n = y.size();
    Eigen::VectorXcd k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), y5(n), yprev(n);

    double t = t0;
    rhs(t, y, k1);
    double dt = (t1 - t0) * 1e-4;
    double err_prev = 1.0;
    int rejected_in_a_row = 0;

    while (t < t1) {
        dt = std::min(dt, t1 - t);
        ytmp = y + dt * (a21 * k1);
        rhs(t + c2 * dt, ytmp, k2);
        ytmp = y + dt * (a31 * k1 + a32 * k2);
        rhs(t + c3 * dt, ytmp, k3);
        ytmp = y + dt * (a41 * k1 + a42 * k2 + a43 * k3);
        rhs(t + c4 * dt, ytmp, k4);
        ytmp = y + dt * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        rhs(t + c5 * dt, ytmp, k5);
        ytmp = y + dt * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        rhs(t + dt, ytmp, k6);
        y5 = y + dt * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        rhs(t + dt, y5, k7);
        ytmp = y + dt * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        double err = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double scale = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
            const double d = std::abs(y5[i] - ytmp[i]) / scale;
            err += d * d;
        }
        err = std::sqrt(err / static_cast<double>(n));

        if (err <= 1.0 || dt <= 1e-14 * (t1 - t0)) {
            yprev.swap(y);
            y = y5;
            const double t_prev = t;
            t += dt;
            k1 = k7;  // FSAL
            if (!cb(t_prev, yprev, t, y)) return t;
            const double grow = 0.9 * std::pow(std::max(err, 1e-10), -0.2) *
                                std::pow(std::max(err_prev, 1e-10), 0.04);
            dt *= std::clamp(grow, 0.2, 6.0);
            err_prev = std::max(err, 1e-10);
            rejected_in_a_row = 0;
        } else {
            // k1 still holds the derivative at (t, y); only dt shrinks.
            dt *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
            if (++rejected_in_a_row > 200)
                throw std::runtime_error("integrate_dopri5: step size control failed to converge");
        }
    }
    return t;
}

/// Convenience overload without a step callback.
template <class Rhs>
void integrate_dopri5(const Rhs& rhs, Eigen::VectorXcd& y, double t0, double t1, double rtol,
                      double atol) {
    integrate_dopri5(rhs, y, t0, t1, rtol, atol,
                     [](double, const Eigen::VectorXcd&, double, const Eigen::VectorXcd&) { return true; });
}

}  // namespace fanout
