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

#include <cmath>
#include <complex>
#include <cstdint>

namespace fanout {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// xoshiro256** stream with counter-based derivation. Streams are keyed by
/// (master seed, block id, trajectory index) so results do not depend on
/// which thread runs which trajectory. All draws are generated from raw
/// 64-bit words, not std:: distributions, so sequences are identical across
/// standard library implementations.
class RngStream {
public:
    static RngStream derive(std::uint64_t master, std::uint64_t block_id, std::uint64_t index) {
        std::uint64_t mix = master;
        (void)splitmix64(mix);
        mix ^= 0x632be59bd9b4e019ULL * (block_id + 1);
        (void)splitmix64(mix);
        mix ^= 0x9e6c63d0a48d9a1fULL * (index + 1);
        RngStream s;
        s.state_[0] = splitmix64(mix);
        s.state_[1] = splitmix64(mix);
        s.state_[2] = splitmix64(mix);
        s.state_[3] = splitmix64(mix);
        return s;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in (0, 1).
    double uniform() {
        double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        return u > 0.0 ? u : 0x1.0p-53;
    }

    /// Standard normal via Box-Muller on the stream's own uniforms.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    std::complex<double> complex_normal() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4] = {1, 2, 3, 4};
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace fanout
