// SPDX-License-Identifier: Apache-2.0
//
// wlsinr — SINR statistics and simulation for widely linear MMSE MIMO receivers
// Copyright (C) 2026 The wlsinr authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
//
// Deterministic random streams. Substreams are derived from
// (seed, stream index) by splitmix64 mixing, so results are independent of
// thread scheduling: realization k always consumes exactly the stream
// substream(seed, k), no matter which worker runs it. Gaussians come from
// Box-Muller on explicitly constructed uniforms; nothing here depends on
// implementation-defined standard-library distributions.

#ifndef WLSINR_RNG_HPP
#define WLSINR_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>

namespace wlsinr::rng {

inline std::uint64_t splitmix64(std::uint64_t &state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256++ seeded through splitmix64.
class stream {
  public:
    explicit stream(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto &w : s_)
            w = splitmix64(sm);
        have_gauss_ = false;
    }

    // substream for realization `index` under master `seed`
    static stream substream(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t sm = seed;
        const std::uint64_t a = splitmix64(sm);
        std::uint64_t mix = a ^ (index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
        return stream(splitmix64(mix) ^ seed);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in (0, 1]
    double next_uniform() {
        const std::uint64_t u = next_u64() >> 11; // 53 bits
        return (u + 1.0) * 0x1.0p-53;
    }

    // standard normal via Box-Muller (second value cached)
    double next_gauss() {
        if (have_gauss_) {
            have_gauss_ = false;
            return cached_;
        }
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925287 * u2;
        cached_ = r * std::sin(a);
        have_gauss_ = true;
        return r * std::cos(a);
    }

    // CN(0, var): real and imaginary parts N(0, var/2)
    std::complex<double> next_cgauss(double var = 1.0) {
        const double s = std::sqrt(0.5 * var);
        const double re = s * next_gauss();
        const double im = s * next_gauss();
        return {re, im};
    }

    bool next_bit() { return (next_u64() >> 63) != 0; }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
    bool have_gauss_ = false;
    double cached_ = 0.0;
};

} // namespace wlsinr::rng

#endif // WLSINR_RNG_HPP
