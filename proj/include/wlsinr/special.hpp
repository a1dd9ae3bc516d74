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
// Special-function kernels: gamma family, rising factorials, confluent
// hypergeometric functions of the first (M) and second (U) kind, the
// confluent Lauricella function Phi2, and the Gaussian Q-function with its
// two-exponential approximation. All functions are pure and thread-safe.

#ifndef WLSINR_SPECIAL_HPP
#define WLSINR_SPECIAL_HPP

#include <span>
#include <vector>

namespace wlsinr::special {

// Truncation control for the series evaluators. rel_tol/max_terms are
// inputs; achieved_terms/converged are outputs, written by the callee.
struct series_control {
    double rel_tol = 1e-12;
    long max_terms = 10000;
    long achieved_terms = 0; // output
    bool converged = false;  // output
};

// log Gamma(a) for a > 0. Matches Gamma to ~1e-15 relative on [0.5, 200].
double ln_gamma(double a);

// Regularized lower incomplete gamma P(a, x) = gamma(a,x)/Gamma(a), in [0,1].
double reg_lower_incomplete_gamma(double a, double x);

// log of the multivariate gamma function Gamma_b(a),
//   log Gamma_b(a) = (b(b-1)/4) log pi + sum_{i=1..b} log Gamma(a + (1-i)/2).
double multivariate_gamma_log(double a, int b);

// Rising factorial (a)_n = a (a+1) ... (a+n-1); (a)_0 = 1.
double pochhammer_rising(double a, int n);

// log |(a)_n| together with the sign of (a)_n (0 if the product vanishes).
double ln_pochhammer(double a, int n, int &sign);

// Confluent hypergeometric function of the first kind,
//   M(a, b, x) = sum_m (a)_m x^m / ((b)_m m!).
// b must not be a non-positive integer. Throws truncation_error when the
// series does not meet ctl within ctl.max_terms.
double kummer_m(double a, double b, double x, series_control &ctl);

// Confluent hypergeometric function of the second kind, U(a, b, x) for
// a > 0, x > 0, evaluated through its semi-infinite integral representation
// with double-exponential quadrature. tricomi_u_log returns log U, which is
// the form consumed by the distribution layer (U underflows double range
// for the large arguments produced by the series PDFs).
double tricomi_u(double a, double b, double x, series_control &ctl);
double tricomi_u_log(double a, double b, double x, series_control &ctl);

// Confluent Lauricella function
//   Phi2^(n)(b_1..b_n; c; x_1..x_n)
//     = sum_{i_1..i_n} prod_k (b_k)_{i_k} x_k^{i_k} / i_k!  /  (c)_{i_1+..+i_n},
// summed by total order with per-dimension caps. b_list and x_list must have
// equal length n >= 1.
double lauricella_phi2(std::span<const double> b_list, double c, std::span<const double> x_list,
                       series_control &ctl);

// Gaussian Q-function (upper tail of the standard normal), and the
// two-exponential approximation (1/12) e^{-x^2/2} + (1/4) e^{-2x^2/3}.
double q_function(double x);
double q_approx(double x);

} // namespace wlsinr::special

#endif // WLSINR_SPECIAL_HPP
