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
// Deterministic algebra of the widely linear MMSE MIMO system: channel
// representations (complex, augmented, real composite), the WLMMSE
// estimator, and the equivalent SINR computations (direct matrix form,
// ratio form, and spectral form through the interference eigenvalues).
//
// Stream indices j are 0-based throughout.

#ifndef WLSINR_MIMO_HPP
#define WLSINR_MIMO_HPP

#include <vector>

#include "wlsinr/linalg.hpp"
#include "wlsinr/rng.hpp"

namespace wlsinr::mimo {

using linalg::cmat;
using linalg::cvec;
using linalg::rmat;
using linalg::rvec;

// Antenna counts, transmit power and noise variance, with the derived
// per-symbol-per-antenna SNR rho = e_s / (sigma2 * n_t).
struct system_config {
    int n_t = 2;
    int n_r = 2;
    double e_s = 1.0;
    double sigma2 = 1.0;

    double rho() const { return e_s / (sigma2 * n_t); }

    // e_s fixed to 1, sigma2 chosen so that rho equals the requested SNR.
    static system_config from_snr_db(int n_t, int n_r, double snr_db);
    static system_config from_rho(int n_t, int n_r, double rho);
};

double db_to_linear(double db);
double linear_to_db(double v);

// n_r x n_t channel with i.i.d. CN(0,1) entries.
cmat sample_channel(const system_config &cfg, rng::stream &rs);

// Augmented channel [H; conj(H)] (2 n_r x n_t).
cmat augment(const cmat &h);

// Real composite [Re(A); Im(A)] of a complex matrix (2 rows(A) x cols(A)).
rmat real_composite(const cmat &a);

// Matrix with column j removed.
cmat remove_column(const cmat &h, int j);

// WLMMSE estimate of the real symbol on stream j from observation y.
double wlmmse_estimate(const cmat &h, const cvec &y, int j, const system_config &cfg);

// Post-detection SINR on stream j, direct interference-matrix form
//   tau_j = hbar_j^H (Cbar_j + rho^{-1} I)^{-1} hbar_j.
double sinr_direct(const cmat &h, int j, const system_config &cfg);

// Same quantity through the ratio form
//   tau_j = phi / (1 - phi),  phi = hbar_j^H (Hbar Hbar^H + rho^{-1} I)^{-1} hbar_j,
// which keeps stream j inside the inverted matrix.
double sinr_ratio_form(const cmat &h, int j, const system_config &cfg);

// Ordered positive eigenvalues (descending, length n_t - 1) of the real
// composite interference Gram matrix, computed on the small
// (n_t-1) x (n_t-1) Wishart form.
std::vector<double> interference_eigenvalues(const cmat &h, int j);

struct projection {
    std::vector<double> spectrum; // descending, length n_t - 1
    rvec h_hat;                   // length 2 n_r
};

// Rotation of the real composite channel column into the eigenbasis of the
// real composite interference matrix. Norm-preserving.
projection project_channel(const cmat &h, int j);

// Spectral SINR form:
//   tau = sum_{k < n_t-1} h_hat_k^2 / (lambda_k + 1/(2 rho))
//       + 2 rho * sum_{k >= n_t-1} h_hat_k^2.
double sinr_spectral(const std::vector<double> &spectrum, const rvec &h_hat, double rho);

} // namespace wlsinr::mimo

#endif // WLSINR_MIMO_HPP
