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
// SINR distributions of the WLMMSE receiver over uncorrelated Rayleigh
// fading: the conditional gamma-mixture density, Wishart eigenvalue
// densities, the exact series PDFs for n_t = 2 and n_t = 3, the MGF
// pipeline with its closed-form approximate PDF, and the numeric
// marginalization that serves as the independent oracle for the series.

#ifndef WLSINR_SINR_DIST_HPP
#define WLSINR_SINR_DIST_HPP

#include <vector>

#include "wlsinr/mimo.hpp"
#include "wlsinr/special.hpp"

namespace wlsinr::dist {

using mimo::system_config;
using special::series_control;

// Shape/scale pairs of the n_t independent gamma components conditioning
// the SINR on the interference eigenvalues:
//   alpha_k = 1/2,              beta_k = 2 / (2 lambda_k + 1/rho)   (k < n_t)
//   alpha_nt = (2 n_r - n_t + 1)/2,  beta_nt = 2 rho.
struct gamma_mixture_params {
    std::vector<double> alphas;
    std::vector<double> betas;

    double mean() const; // sum alpha_k beta_k
};

gamma_mixture_params gamma_params(const std::vector<double> &spectrum,
                                  const system_config &cfg);

// Density of the sum of the mixture components at tau >= 0.
double conditional_pdf(double tau, const gamma_mixture_params &params, series_control &ctl);

// Same density with the reference component forced to a given index
// (the beta_1 of the exponential prefactor). Exists to verify that the
// value is invariant under the reference choice; index must be valid.
double conditional_pdf_ref(double tau, const gamma_mixture_params &params, int ref_index,
                           series_control &ctl);

// Joint density of the ordered positive eigenvalues of the real composite
// interference matrix (Sigma = I/2, 2 n_r degrees of freedom). Zero outside
// the ordered positive cone.
double wishart_eig_joint_pdf(const std::vector<double> &lambdas, int n_t, int n_r);

// General real Wishart ordered-eigenvalue density W_P(delta I, Q); the
// specialized form above must equal this at delta = 1/2, P = n_t - 1,
// Q = 2 n_r.
double wishart_eig_joint_pdf_general(const std::vector<double> &lambdas, int p, int q,
                                     double delta);

// Single-eigenvalue density for n_t = 2: lambda^{n_r-1} e^{-lambda} / (n_r-1)!.
double single_eig_pdf(double lambda, int n_r);

// Exact series PDF of the SINR for n_t = 2 (n_r >= 2). Truncation is governed
// by the geometric tail ratio tau/(tau+1) of the term sequence.
double analytic_pdf_nt2(double tau, int n_r, double rho, series_control &ctl);

// Term ratio A(m+1)/A(m) of the n_t = 2 series (the convergence diagnostic;
// the limit is tau/(tau+1)).
double nt2_term_ratio(int m, double tau, int n_r, double rho);

// Exact series PDF of the SINR for n_t = 3 (n_r >= 3), summed by total order
// with shell-wise convergence testing. The inner Euler integral is resummed
// through its Kummer transform so every term of the m3 direction is
// positive; the kernels then carry the argument (tau+2)/(2 rho).
double analytic_pdf_nt3(double tau, int n_r, double rho, series_control &ctl);

// The same quadruple series organized around (tau+1)/(2 rho) kernels with an
// alternating inner direction. Slower and cancellation-prone; retained as a
// cross-check of the resummed form.
double analytic_pdf_nt3_alt(double tau, int n_r, double rho, series_control &ctl);

// Conditional and approximate MGFs (Taylor-truncated), and the scalar
//   G_0 = (n_t - 1) / (2 n_r - n_t).
double conditional_mgf(double s, const std::vector<double> &spectrum,
                       const system_config &cfg);
double approx_mgf(double s, const system_config &cfg);
double g0(int n_t, int n_r);

// Closed-form approximate PDF (inverse Laplace of the approximate MGF).
// The raw value is signed: it dips negative below the bracket zero
// tau_star. approx_pdf_clamped clamps at zero and renormalizes the mass
// above tau_star. At tau = 0 with n_t > 1 and shape < 2 the raw limit is
// -inf; a negative-saturation sentinel (-DBL_MAX) is returned.
double approx_pdf(double tau, const system_config &cfg);
double approx_pdf_clamped(double tau, const system_config &cfg);
double approx_bracket_zero(const system_config &cfg); // tau_star; 0 when n_t == 1

// Closed-form CDF of the approximate density (raw signed / clamped), and
// the quantile of the clamped distribution.
double approx_cdf(double tau, const system_config &cfg);
double approx_cdf_clamped(double tau, const system_config &cfg);
double approx_quantile(double p, const system_config &cfg);

// Moments of the clamped approximate distribution by quadrature; exposes
// the excess kurtosis used for the Gaussian-limit trend checks.
double approx_excess_kurtosis(const system_config &cfg);

struct quad_spec {
    double abs_tol = 1e-9;
    double rel_tol = 1e-7;
    int max_intervals = 4000;
};

// Numeric marginalization of conditional_pdf against the eigenvalue
// density; the independent oracle for the series PDFs. n_t must be 2 or 3.
double general_pdf_numeric(double tau, const system_config &cfg, const quad_spec &qs = {});

// Upper integration limit L such that the eigenvalue density mass beyond L
// is below `tail`; used by the oracles and normalization checks.
double eig_tail_cutoff(int n_t, int n_r, double tail);

} // namespace wlsinr::dist

#endif // WLSINR_SINR_DIST_HPP
