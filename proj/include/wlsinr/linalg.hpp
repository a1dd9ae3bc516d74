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
// Minimal dense linear algebra for the small matrices this library works
// with (at most 2 N_r x 2 N_r, i.e. tens of rows): complex/real matrices,
// Cholesky solves for Hermitian/symmetric positive definite systems, and a
// cyclic Jacobi eigendecomposition for real symmetric matrices.

#ifndef WLSINR_LINALG_HPP
#define WLSINR_LINALG_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "wlsinr/errors.hpp"

namespace wlsinr::linalg {

using cplx = std::complex<double>;

template <class T>
class matrix {
  public:
    matrix() = default;
    matrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static matrix identity(std::size_t n) {
        matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = T{1};
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    const std::vector<T> &data() const { return data_; }
    std::vector<T> &data() { return data_; }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

using cmat = matrix<cplx>;
using rmat = matrix<double>;
using cvec = std::vector<cplx>;
using rvec = std::vector<double>;

inline cmat adjoint(const cmat &a) {
    cmat r(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            r(j, i) = std::conj(a(i, j));
    return r;
}

template <class T>
matrix<T> transpose(const matrix<T> &a) {
    matrix<T> r(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            r(j, i) = a(i, j);
    return r;
}

template <class T>
matrix<T> matmul(const matrix<T> &a, const matrix<T> &b) {
    matrix<T> r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j)
                r(i, j) += aik * b(k, j);
        }
    return r;
}

template <class T>
std::vector<T> matvec(const matrix<T> &a, const std::vector<T> &x) {
    std::vector<T> y(a.rows(), T{});
    for (std::size_t i = 0; i < a.rows(); ++i) {
        T s{};
        for (std::size_t j = 0; j < a.cols(); ++j)
            s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

// A * A^H (Hermitian, positive semidefinite)
inline cmat gram_aah(const cmat &a) {
    cmat r(a.rows(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            cplx s{};
            for (std::size_t k = 0; k < a.cols(); ++k)
                s += a(i, k) * std::conj(a(j, k));
            r(i, j) = s;
            r(j, i) = std::conj(s);
        }
    return r;
}

// A^T * A for real matrices (symmetric, positive semidefinite)
inline rmat gram_ata(const rmat &a) {
    rmat r(a.cols(), a.cols());
    for (std::size_t i = 0; i < a.cols(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            double s = 0;
            for (std::size_t k = 0; k < a.rows(); ++k)
                s += a(k, i) * a(k, j);
            r(i, j) = s;
            r(j, i) = s;
        }
    return r;
}

// A * A^T for real matrices
inline rmat gram_aat(const rmat &a) {
    rmat r(a.rows(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            double s = 0;
            for (std::size_t k = 0; k < a.cols(); ++k)
                s += a(i, k) * a(j, k);
            r(i, j) = s;
            r(j, i) = s;
        }
    return r;
}

// In-place Cholesky factor L (lower) of a Hermitian positive definite A.
inline void cholesky_in_place(cmat &a) {
    const std::size_t n = a.rows();
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j).real();
        for (std::size_t k = 0; k < j; ++k)
            d -= std::norm(a(j, k));
        if (!(d > 0.0))
            throw linear_solve_error("cholesky: matrix not positive definite");
        const double ljj = std::sqrt(d);
        a(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            cplx s = a(i, j);
            for (std::size_t k = 0; k < j; ++k)
                s -= a(i, k) * std::conj(a(j, k));
            a(i, j) = s / ljj;
        }
    }
}

// Solve A x = b for Hermitian positive definite A (A copied).
inline cvec solve_hermitian_pd(cmat a, const cvec &b) {
    cholesky_in_place(a);
    const std::size_t n = a.rows();
    cvec y(b);
    for (std::size_t i = 0; i < n; ++i) { // L y = b
        cplx s = y[i];
        for (std::size_t k = 0; k < i; ++k)
            s -= a(i, k) * y[k];
        y[i] = s / a(i, i).real();
    }
    for (std::size_t ii = n; ii-- > 0;) { // L^H x = y
        cplx s = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k)
            s -= std::conj(a(k, ii)) * y[k];
        y[ii] = s / a(ii, ii).real();
    }
    return y;
}

// Real SPD solve by the same factorization.
inline rvec solve_spd(rmat a, const rvec &b) {
    const std::size_t n = a.rows();
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j);
        for (std::size_t k = 0; k < j; ++k)
            d -= a(j, k) * a(j, k);
        if (!(d > 0.0))
            throw linear_solve_error("solve_spd: matrix not positive definite");
        const double ljj = std::sqrt(d);
        a(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k)
                s -= a(i, k) * a(j, k);
            a(i, j) = s / ljj;
        }
    }
    rvec y(b);
    for (std::size_t i = 0; i < n; ++i) {
        double s = y[i];
        for (std::size_t k = 0; k < i; ++k)
            s -= a(i, k) * y[k];
        y[i] = s / a(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k)
            s -= a(k, ii) * y[k];
        y[ii] = s / a(ii, ii);
    }
    return y;
}

struct evd_result {
    std::vector<double> eigenvalues; // descending
    rmat eigenvectors;               // columns matching eigenvalues
};

// Cyclic Jacobi eigendecomposition of a real symmetric matrix, iterated to
// machine precision. Eigenvalues sorted descending; ties keep the original
// column order (stable).
inline evd_result jacobi_eigen_sym(rmat a, int max_sweeps = 60) {
    const std::size_t n = a.rows();
    rmat v = rmat::identity(n);
    auto offdiag = [&]() {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                s += a(i, j) * a(i, j);
        return s;
    };
    double norm = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            norm += a(i, j) * a(i, j);
    const double stop = norm * 1e-30 + 1e-300;
    for (int sweep = 0; sweep < max_sweeps && offdiag() > stop; ++sweep) {
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0)
                    continue;
                const double app = a(p, p), aqq = a(q, q);
                const double theta = 0.5 * (aqq - app) / apq;
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = i;
    // stable descending sort on the diagonal
    for (std::size_t i = 1; i < n; ++i) {
        std::size_t j = i;
        while (j > 0 && a(order[j - 1], order[j - 1]) < a(order[j], order[j])) {
            std::swap(order[j - 1], order[j]);
            --j;
        }
    }
    evd_result r;
    r.eigenvalues.resize(n);
    r.eigenvectors = rmat(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        r.eigenvalues[c] = a(order[c], order[c]);
        for (std::size_t k = 0; k < n; ++k)
            r.eigenvectors(k, c) = v(k, order[c]);
    }
    return r;
}

} // namespace wlsinr::linalg

#endif // WLSINR_LINALG_HPP
