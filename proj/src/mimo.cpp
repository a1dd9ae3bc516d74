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

#include "wlsinr/mimo.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wlsinr::mimo {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double v) { return 10.0 * std::log10(v); }

system_config system_config::from_snr_db(int n_t, int n_r, double snr_db) {
    return from_rho(n_t, n_r, db_to_linear(snr_db));
}

system_config system_config::from_rho(int n_t, int n_r, double rho) {
    if (n_t < 1 || n_r < n_t)
        throw std::domain_error("system_config: need 1 <= n_t <= n_r");
    if (!(rho > 0.0))
        throw std::domain_error("system_config: rho must be positive");
    system_config c;
    c.n_t = n_t;
    c.n_r = n_r;
    c.e_s = 1.0;
    c.sigma2 = c.e_s / (rho * n_t);
    return c;
}

cmat sample_channel(const system_config &cfg, rng::stream &rs) {
    cmat h(cfg.n_r, cfg.n_t);
    for (int i = 0; i < cfg.n_r; ++i)
        for (int j = 0; j < cfg.n_t; ++j)
            h(i, j) = rs.next_cgauss(1.0);
    return h;
}

cmat augment(const cmat &h) {
    const std::size_t m = h.rows(), n = h.cols();
    cmat a(2 * m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = h(i, j);
            a(m + i, j) = std::conj(h(i, j));
        }
    return a;
}

rmat real_composite(const cmat &a) {
    const std::size_t m = a.rows(), n = a.cols();
    rmat r(2 * m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            r(i, j) = a(i, j).real();
            r(m + i, j) = a(i, j).imag();
        }
    return r;
}

cmat remove_column(const cmat &h, int j) {
    const std::size_t m = h.rows(), n = h.cols();
    if (j < 0 || (std::size_t)j >= n)
        throw std::domain_error("remove_column: stream index out of range");
    cmat r(m, n - 1);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t c = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if ((int)k == j)
                continue;
            r(i, c++) = h(i, k);
        }
    }
    return r;
}

namespace {

cvec augmented_column(const cmat &h, int j) {
    const std::size_t m = h.rows();
    cvec hj(2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        hj[i] = h(i, j);
        hj[m + i] = std::conj(h(i, j));
    }
    return hj;
}

} // namespace

double wlmmse_estimate(const cmat &h, const cvec &y, int j, const system_config &cfg) {
    const std::size_t m = h.rows();
    if (y.size() != m)
        throw std::domain_error("wlmmse_estimate: observation length mismatch");
    if (j < 0 || (std::size_t)j >= h.cols())
        throw std::domain_error("wlmmse_estimate: stream index out of range");
    const double p = cfg.e_s / cfg.n_t;
    const cmat hb = augment(h);
    cmat r = linalg::gram_aah(hb);
    for (std::size_t i = 0; i < 2 * m; ++i)
        for (std::size_t k = 0; k < 2 * m; ++k)
            r(i, k) *= p;
    for (std::size_t i = 0; i < 2 * m; ++i)
        r(i, i) += cfg.sigma2;
    cvec yb(2 * m);
    double yscale = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        yb[i] = y[i];
        yb[m + i] = std::conj(y[i]);
        yscale = std::max(yscale, std::abs(y[i]));
    }
    const cvec z = linalg::solve_hermitian_pd(r, yb);
    const cvec hj = augmented_column(h, j);
    linalg::cplx est{};
    for (std::size_t i = 0; i < 2 * m; ++i)
        est += std::conj(hj[i]) * z[i];
    est *= p;
    // the WLMMSE estimate of a real symbol is real; the imaginary part is
    // pure rounding noise
    const double scale = std::max(std::abs(est.real()), yscale) + 1e-300;
    if (std::abs(est.imag()) > 1e-9 * scale)
        throw std::runtime_error("wlmmse_estimate: imaginary residue exceeds tolerance");
    return est.real();
}

double sinr_direct(const cmat &h, int j, const system_config &cfg) {
    const std::size_t m = h.rows();
    if (j < 0 || (std::size_t)j >= h.cols())
        throw std::domain_error("sinr_direct: stream index out of range");
    const double inv_rho = 1.0 / cfg.rho();
    cmat t;
    if (h.cols() == 1) {
        t = cmat(2 * m, 2 * m);
    } else {
        t = linalg::gram_aah(augment(remove_column(h, j)));
    }
    for (std::size_t i = 0; i < 2 * m; ++i)
        t(i, i) += inv_rho;
    const cvec hj = augmented_column(h, j);
    const cvec z = linalg::solve_hermitian_pd(t, hj);
    linalg::cplx tau{};
    for (std::size_t i = 0; i < 2 * m; ++i)
        tau += std::conj(hj[i]) * z[i];
    return tau.real();
}

double sinr_ratio_form(const cmat &h, int j, const system_config &cfg) {
    const std::size_t m = h.rows();
    if (j < 0 || (std::size_t)j >= h.cols())
        throw std::domain_error("sinr_ratio_form: stream index out of range");
    cmat g = linalg::gram_aah(augment(h));
    const double inv_rho = 1.0 / cfg.rho();
    for (std::size_t i = 0; i < 2 * m; ++i)
        g(i, i) += inv_rho;
    const cvec hj = augmented_column(h, j);
    const cvec z = linalg::solve_hermitian_pd(g, hj);
    linalg::cplx phi{};
    for (std::size_t i = 0; i < 2 * m; ++i)
        phi += std::conj(hj[i]) * z[i];
    return phi.real() / (1.0 - phi.real());
}

std::vector<double> interference_eigenvalues(const cmat &h, int j) {
    if (h.cols() < 2)
        throw std::domain_error("interference_eigenvalues: need n_t >= 2");
    const rmat ht = real_composite(remove_column(h, j));
    const rmat g = linalg::gram_ata(ht); // (n_t-1) x (n_t-1), same nonzero spectrum
    auto evd = linalg::jacobi_eigen_sym(g);
    for (auto &v : evd.eigenvalues)
        v = std::max(0.0, v);
    return evd.eigenvalues;
}

projection project_channel(const cmat &h, int j) {
    const std::size_t m = h.rows();
    if (j < 0 || (std::size_t)j >= h.cols())
        throw std::domain_error("project_channel: stream index out of range");
    rvec ht_j(2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        ht_j[i] = h(i, j).real();
        ht_j[m + i] = h(i, j).imag();
    }
    projection pr;
    if (h.cols() == 1) { // degenerate: no interference, identity basis
        pr.h_hat = ht_j;
        return pr;
    }
    const rmat ht = real_composite(remove_column(h, j));
    const rmat c = linalg::gram_aat(ht); // 2 n_r x 2 n_r real composite Gram
    auto evd = linalg::jacobi_eigen_sym(c);
    const std::size_t n_int = h.cols() - 1;
    pr.spectrum.assign(evd.eigenvalues.begin(), evd.eigenvalues.begin() + n_int);
    for (auto &v : pr.spectrum)
        v = std::max(0.0, v);
    pr.h_hat.assign(2 * m, 0.0);
    for (std::size_t k = 0; k < 2 * m; ++k) {
        double s = 0;
        for (std::size_t i = 0; i < 2 * m; ++i)
            s += evd.eigenvectors(i, k) * ht_j[i];
        pr.h_hat[k] = s;
    }
    return pr;
}

double sinr_spectral(const std::vector<double> &spectrum, const rvec &h_hat, double rho) {
    const std::size_t s = spectrum.size();
    double tau = 0.0;
    const double half_inv_rho = 1.0 / (2.0 * rho);
    for (std::size_t k = 0; k < s; ++k)
        tau += h_hat[k] * h_hat[k] / (spectrum[k] + half_inv_rho);
    double tail = 0.0;
    for (std::size_t k = s; k < h_hat.size(); ++k)
        tail += h_hat[k] * h_hat[k];
    return tau + 2.0 * rho * tail;
}

} // namespace wlsinr::mimo
