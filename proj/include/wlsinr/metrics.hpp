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
// Closed-form system performance metrics on top of the distribution layer:
// outage probability, symbol error rate (closed form and MGF quadrature),
// and diversity gains.

#ifndef WLSINR_METRICS_HPP
#define WLSINR_METRICS_HPP

#include <string>
#include <vector>

#include "wlsinr/mimo.hpp"
#include "wlsinr/rng.hpp"

namespace wlsinr::metrics {

using mimo::system_config;

enum class ser_method { closed_form, mgf_quadrature, empirical };

struct ser_curve {
    std::vector<double> snr_db; // increasing
    std::vector<double> ser;
    ser_method method = ser_method::closed_form;
};

// Pr(tau <= tau_o) of the approximate SINR distribution: regularized
// incomplete gamma term minus the closed-form correction. The raw variant
// returns the unclamped (possibly slightly negative) value.
double outage_probability(double tau_o, const system_config &cfg);
double outage_probability_raw(double tau_o, const system_config &cfg);

// Conditional BPSK SER given the SINR: Q(sqrt(tau)), and its
// two-exponential approximation.
double conditional_ser(double tau);
double conditional_ser_approx(double tau);

// Closed-form average SER (two power terms decaying at rate (2n_r-n_t+1)/2).
double ser_closed_form(double rho, int n_t, int n_r);

// Exact-SER reference route: theta-quadrature of the conditional MGF
// averaged over n_spectra sampled interference spectra. Valid for any n_t.
double ser_via_mgf(double rho, int n_t, int n_r, int n_spectra, rng::stream &rs);

// Diversity gains: widely linear n_r - (n_t-1)/2, strictly linear
// n_r - n_t + 1, and their difference (n_t-1)/2.
double diversity_gain_wl(int n_t, int n_r);
double diversity_gain_lmmse(int n_t, int n_r);
double diversity_delta(int n_t);

// Least-squares slope of -log10(SER) against log10(rho) over the window
// [lo_db, hi_db]. Needs at least three strictly positive SER points inside.
double diversity_slope_fit(const ser_curve &curve, double lo_db, double hi_db);

} // namespace wlsinr::metrics

#endif // WLSINR_METRICS_HPP
