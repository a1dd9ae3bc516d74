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

#include "wlsinr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wlsinr/quadrature.hpp"
#include "wlsinr/sinr_dist.hpp"
#include "wlsinr/special.hpp"

namespace wlsinr::metrics {

double outage_probability_raw(double tau_o, const system_config &cfg) {
    if (tau_o < 0.0)
        throw std::domain_error("outage_probability: threshold must be nonnegative");
    if (cfg.n_t != 1 && 2 * cfg.n_r - cfg.n_t - 1 <= 0)
        throw std::domain_error("outage_probability: 2 n_r - n_t - 1 <= 0 for n_t = " +
                                std::to_string(cfg.n_t) + ", n_r = " + std::to_string(cfg.n_r));
    const double a = 0.5 * (2.0 * cfg.n_r - cfg.n_t + 1.0);
    const double two_rho = 2.0 * cfg.rho();
    const double p = special::reg_lower_incomplete_gamma(a, tau_o / two_rho);
    if (cfg.n_t == 1)
        return p;
    if (tau_o == 0.0)
        return 0.0;
    const double correction =
        std::exp(std::log((cfg.n_t - 1.0) / (2.0 * cfg.n_r - cfg.n_t)) +
                 (a - 1.0) * std::log(tau_o) - tau_o / two_rho - a * std::log(two_rho) -
                 special::ln_gamma(a));
    return p - correction;
}

double outage_probability(double tau_o, const system_config &cfg) {
    return std::min(1.0, std::max(0.0, outage_probability_raw(tau_o, cfg)));
}

double conditional_ser(double tau) {
    if (tau < 0.0)
        throw std::domain_error("conditional_ser: tau must be nonnegative");
    return special::q_function(std::sqrt(tau));
}

double conditional_ser_approx(double tau) {
    if (tau < 0.0)
        throw std::domain_error("conditional_ser_approx: tau must be nonnegative");
    return std::exp(-0.5 * tau) / 12.0 + 0.25 * std::exp(-2.0 * tau / 3.0);
}

double ser_closed_form(double rho, int n_t, int n_r) {
    if (2 * n_r - n_t + 1 <= 0 || !(rho > 0.0))
        throw std::domain_error("ser_closed_form: invalid configuration");
    const double a = 0.5 * (2.0 * n_r - n_t + 1.0);
    const double c1 = (4.0 * n_r - 3.0 * n_t + 1.0) / (12.0 * (4.0 * n_r - 2.0 * n_t));
    const double c2 = (6.0 * n_r - 5.0 * n_t + 2.0) / (4.0 * (6.0 * n_r - 3.0 * n_t));
    return c1 * std::pow(1.0 + rho, -a) + c2 * std::pow(1.0 + 4.0 * rho / 3.0, -a);
}

double ser_via_mgf(double rho, int n_t, int n_r, int n_spectra, rng::stream &rs) {
    if (n_spectra < 1)
        throw std::domain_error("ser_via_mgf: need n_spectra >= 1");
    const auto cfg = system_config::from_rho(n_t, n_r, rho);
    std::vector<std::vector<double>> spectra;
    if (n_t > 1) {
        spectra.resize(n_spectra);
        for (auto &sp : spectra)
            sp = mimo::interference_eigenvalues(mimo::sample_channel(cfg, rs), 0);
    } else {
        spectra.push_back({});
    }
    // (1/pi) int_0^{pi/2} Gbar(-1/(2 sin^2 theta)) dtheta. Written through
    // sin^2 theta the integrand is sin^{2 n_r}(theta) times an analytic
    // factor, so fixed 64-node Gauss-Legendre reaches ~1e-15:
    //   Gbar = sin^{2a}(theta) (sin^2 + rho)^{-a}
    //          prod_k sin(theta) (sin^2 + c_k)^{-1/2},  c_k = 1/(2 lambda_k + 1/rho).
    const double a = 0.5 * (2.0 * n_r - n_t + 1.0);
    auto integrand = [&](double th) {
        const double sn = std::sin(th);
        const double s2 = sn * sn;
        double acc = 0.0;
        for (const auto &sp : spectra) {
            double v = 1.0;
            for (double lam : sp) {
                const double c = 1.0 / (2.0 * lam + 1.0 / rho);
                v *= sn / std::sqrt(s2 + c);
            }
            acc += v;
        }
        acc /= (double)spectra.size();
        return std::pow(sn, 2.0 * a) * std::pow(s2 + rho, -a) * acc;
    };
    const double v =
        quad::gauss_legendre_64_integrate(integrand, 0.0, 1.5707963267948966);
    return std::min(1.0, std::max(0.0, v / 3.14159265358979323846));
}

double diversity_gain_wl(int n_t, int n_r) {
    if (n_t < 1 || n_r < n_t)
        throw std::domain_error("diversity_gain_wl: need n_r >= n_t >= 1");
    return n_r - 0.5 * (n_t - 1.0);
}

double diversity_gain_lmmse(int n_t, int n_r) {
    if (n_t < 1 || n_r < n_t)
        throw std::domain_error("diversity_gain_lmmse: need n_r >= n_t >= 1");
    return n_r - n_t + 1.0;
}

double diversity_delta(int n_t) {
    if (n_t < 1)
        throw std::domain_error("diversity_delta: need n_t >= 1");
    return 0.5 * (n_t - 1.0);
}

double diversity_slope_fit(const ser_curve &curve, double lo_db, double hi_db) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < curve.snr_db.size(); ++i) {
        const double db = curve.snr_db[i];
        if (db < lo_db - 1e-12 || db > hi_db + 1e-12)
            continue;
        if (!(curve.ser[i] > 0.0))
            throw std::domain_error("diversity_slope_fit: nonpositive SER inside the window");
        const double x = db / 10.0; // log10(rho)
        const double y = -std::log10(curve.ser[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 3)
        throw std::domain_error("diversity_slope_fit: need at least three points in the window");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace wlsinr::metrics
