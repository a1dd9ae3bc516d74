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

#include "doctest.h"

#include <cmath>

#include "wlsinr/quadrature.hpp"

using namespace wlsinr;

TEST_CASE("gauss_kronrod basic integrals") {
    auto r = quad::gauss_kronrod([](double x) { return std::sin(x); }, 0.0, 3.141592653589793,
                                 1e-12, 1e-12);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));

    auto g = quad::gauss_kronrod([](double x) { return std::exp(-x * x); }, -8.0, 8.0, 1e-13,
                                 1e-13);
    CHECK(g.value == doctest::Approx(std::sqrt(3.141592653589793)).epsilon(1e-12));
}

TEST_CASE("gauss_kronrod peaked integrand") {
    // narrow Gaussian needs adaptive refinement
    auto r = quad::gauss_kronrod(
        [](double x) { return std::exp(-5e4 * (x - 0.3) * (x - 0.3)); }, 0.0, 1.0, 1e-14, 1e-10);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(std::sqrt(3.141592653589793 / 5e4)).epsilon(1e-9));
}

TEST_CASE("tanh_sinh endpoint singularities") {
    auto r = quad::tanh_sinh([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-13);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-11));

    // Beta(1/2, 1/2) = pi, singular at both endpoints
    auto b = quad::tanh_sinh_dist(
        [](double xa, double xb) { return 1.0 / std::sqrt(xa * xb); }, 0.0, 1.0, 1e-13);
    CHECK(b.converged);
    CHECK(b.value == doctest::Approx(3.141592653589793).epsilon(1e-11));
}

TEST_CASE("exp_sinh_log gamma integrals") {
    // int_0^inf t^4 e^{-t} dt = 24
    auto r = quad::exp_sinh_log([](double t) { return 4.0 * std::log(t) - t; }, 1e-12);
    CHECK(r.converged);
    CHECK(r.log_value == doctest::Approx(std::log(24.0)).epsilon(1e-11));

    // large-argument Gamma(500) stays finite in log scale
    auto big = quad::exp_sinh_log([](double t) { return 499.0 * std::log(t) - t; }, 1e-12);
    CHECK(big.converged);
    CHECK(big.log_value == doctest::Approx(std::lgamma(500.0)).epsilon(1e-12));
}

TEST_CASE("gauss_legendre_64 polynomial exactness") {
    // exact for polynomials up to degree 127
    auto v = quad::gauss_legendre_64_integrate([](double x) { return x * x * x * x; }, -1.0, 1.0);
    CHECK(v == doctest::Approx(0.4).epsilon(1e-14));
    auto w = quad::gauss_legendre_64_integrate([](double x) { return std::cos(x); }, 0.0, 1.0);
    CHECK(w == doctest::Approx(std::sin(1.0)).epsilon(1e-14));
}
