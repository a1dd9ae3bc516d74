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
// Quadrature engines used throughout the library:
//   * adaptive Gauss-Kronrod (G7,K15) on finite intervals,
//   * tanh-sinh (double-exponential) for endpoint-singular integrands on
//     finite intervals,
//   * exp-sinh in log scale for semi-infinite integrals of the form
//     int_0^inf exp(g(t)) dt, where exp(g) would overflow double range.

#ifndef WLSINR_QUADRATURE_HPP
#define WLSINR_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "wlsinr/errors.hpp"

namespace wlsinr::quad {

struct quad_result {
    double value = 0.0;
    double error = 0.0; // error estimate, absolute
    bool converged = false;
    long evaluations = 0;
};

namespace detail {

// Kronrod-15 abscissae (positive half) and weights, with the embedded
// Gauss-7 weights on the shared nodes. Values from QUADPACK.
inline constexpr double kxk[8] = {
    0.000000000000000000000000000000000e0, 2.077849550078984676006894037732449e-1,
    4.058451513773971669066064120769615e-1, 5.860872354676911302941448382587296e-1,
    7.415311855993944398638647732807884e-1, 8.648644233597690727897127886409262e-1,
    9.491079123427585245261896840478513e-1, 9.914553711208126392068546975263285e-1};
inline constexpr double kwk[8] = {
    2.094821410847278280129991748917143e-1, 2.044329400752988924141619992346491e-1,
    1.903505780647854099132564024210137e-1, 1.690047266392679028265834265985503e-1,
    1.406532597155259187451895905102379e-1, 1.047900103222501838398763225415180e-1,
    6.309209262997855329070066318920429e-2, 2.293532201052922496373200805896959e-2};
// Gauss-7 weights on Kronrod nodes 0,2,4,6.
inline constexpr double kwg[4] = {
    4.179591836734693877551020408163265e-1, 3.818300505051189449503697754889751e-1,
    2.797053914892766679014677714237796e-1, 1.294849661688696932706114326790820e-1};

template <class F>
inline void gk15_panel(F &&f, double a, double b, double &value, double &error) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = kwk[0] * fc;
    double resg = kwg[0] * fc;
    for (int i = 1; i < 8; ++i) {
        const double fl = f(c - h * kxk[i]);
        const double fr = f(c + h * kxk[i]);
        resk += kwk[i] * (fl + fr);
        if ((i & 1) == 0)
            resg += kwg[i / 2] * (fl + fr);
    }
    value = resk * h;
    // QUADPACK-style rescaled error estimate is overkill for the smooth
    // integrands here; |K15-G7| with a safety power works well.
    const double diff = std::abs((resk - resg) * h);
    error = diff;
    if (diff > 0.0 && std::abs(value) > 0.0) {
        const double scaled = 200.0 * diff / std::abs(value);
        if (scaled < 1.0)
            error = std::abs(value) * std::pow(scaled, 1.5) / 200.0;
    }
}

struct interval {
    double a, b, value, error;
};

} // namespace detail

// Adaptive Gauss-Kronrod integration of f over [a, b].
template <class F>
quad_result gauss_kronrod(F &&f, double a, double b, double abs_tol, double rel_tol,
                          int max_intervals = 4000) {
    quad_result res;
    if (a == b) {
        res.converged = true;
        return res;
    }
    std::vector<detail::interval> ivs;
    ivs.reserve(64);
    detail::interval root{a, b, 0, 0};
    detail::gk15_panel(f, a, b, root.value, root.error);
    res.evaluations = 15;
    ivs.push_back(root);
    double total = root.value, toterr = root.error;
    while ((int)ivs.size() < max_intervals) {
        const double tol = std::max(abs_tol, rel_tol * std::abs(total));
        if (toterr <= tol)
            break;
        // split the interval with the largest error
        std::size_t worst = 0;
        for (std::size_t i = 1; i < ivs.size(); ++i)
            if (ivs[i].error > ivs[worst].error)
                worst = i;
        detail::interval w = ivs[worst];
        if (w.b - w.a < std::numeric_limits<double>::epsilon() * (std::abs(w.a) + std::abs(w.b)))
            break; // cannot subdivide further
        const double m = 0.5 * (w.a + w.b);
        detail::interval l{w.a, m, 0, 0}, r{m, w.b, 0, 0};
        detail::gk15_panel(f, l.a, l.b, l.value, l.error);
        detail::gk15_panel(f, r.a, r.b, r.value, r.error);
        res.evaluations += 30;
        total += l.value + r.value - w.value;
        toterr += l.error + r.error - w.error;
        ivs[worst] = l;
        ivs.push_back(r);
    }
    // recompute sums to avoid drift
    total = 0;
    toterr = 0;
    for (const auto &iv : ivs) {
        total += iv.value;
        toterr += iv.error;
    }
    res.value = total;
    res.error = toterr;
    res.converged = toterr <= std::max(abs_tol, rel_tol * std::abs(total));
    return res;
}

// tanh-sinh quadrature over [a, b] for integrands expressed through their
// distances to the endpoints: f2(xa, xb) with xa = x - a and xb = b - x,
// both formed without cancellation. This is the form endpoint-singular
// integrands need (e.g. t^{p} (1-t)^{q} with p or q in (-1, 0)).
template <class F2>
quad_result tanh_sinh_dist(F2 &&f2, double a, double b, double tol = 1e-13,
                           int max_level = 10) {
    quad_result res;
    const double len = b - a;
    const double d = 0.5 * len;
    const double umax = 4.0;
    const double half_pi = 1.5707963267948966;
    tol = std::max(tol, 1e-13);

    auto term = [&](double u) -> double {
        const double s = half_pi * std::sinh(u);
        const double e2 = std::exp(-2.0 * std::abs(s));
        const double q = 2.0 * e2 / (1.0 + e2);    // 1 - tanh(|s|)
        const double sech2 = 2.0 * q / (1.0 + e2); // sech^2(s)
        const double near = d * q;                 // distance to the nearer endpoint
        const double far = len - near;
        const double w = d * half_pi * std::cosh(u) * sech2;
        if (near <= 0.0 || w < 1e-300)
            return 0.0;
        ++res.evaluations;
        return (u >= 0.0 ? f2(far, near) : f2(near, far)) * w;
    };

    double h = 1.0;
    double weighted = term(0.0);
    for (double u = h; u <= umax; u += h)
        weighted += term(u) + term(-u);
    double estimate = h * weighted;

    int quiet = 0;
    for (int level = 1; level <= max_level; ++level) {
        const double h2 = 0.5 * h;
        double add = 0.0;
        for (double u = h2; u <= umax; u += h)
            add += term(u) + term(-u);
        weighted += add;
        h = h2;
        const double next = h * weighted;
        const double diff = std::abs(next - estimate);
        estimate = next;
        res.error = diff;
        if (level >= 2 && diff <= tol * std::abs(estimate) + 1e-300) {
            if (++quiet >= 2 || diff == 0.0) {
                res.value = estimate;
                res.converged = true;
                return res;
            }
        } else {
            quiet = 0;
        }
    }
    res.value = estimate;
    res.converged = false;
    return res;
}

// tanh-sinh quadrature with the plain f(x) interface.
template <class F>
quad_result tanh_sinh(F &&f, double a, double b, double tol = 1e-13, int max_level = 10) {
    return tanh_sinh_dist([&](double xa, double) { return f(a + xa); }, a, b, tol, max_level);
}

struct log_quad_result {
    double log_value = -std::numeric_limits<double>::infinity();
    bool converged = false;
    long evaluations = 0;
};

// log of int_0^inf exp(g(t)) dt via the exp-sinh substitution
// t = exp((pi/2) sinh u). g may return -inf where the integrand vanishes.
// The whole computation is carried in log scale so g can peak at +-1e5.
// The u-range grows adaptively until the boundary terms are negligible
// against the running maximum (weak power singularities at t -> 0 decay
// only like exp(-a (pi/2) sinh u) and need a wide window).
template <class G>
log_quad_result exp_sinh_log(G &&g, double tol = 1e-12, int max_level = 11) {
    log_quad_result res;
    const double half_pi = 1.5707963267948966;
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();

    auto log_term = [&](double u) {
        const double s = half_pi * std::sinh(u);
        if (s > 700.0)
            return neg_inf; // t overflows double; the integrand must have died
        const double t = std::exp(s);
        const double gv = g(t);
        ++res.evaluations;
        if (!std::isfinite(gv))
            return neg_inf;
        return gv + s + std::log(half_pi * std::cosh(u));
    };

    std::vector<double> terms;
    terms.reserve(4096);
    double h = 0.5;
    double u_lo = -4.5, u_hi = 4.5;
    double max_lt = neg_inf;
    auto push = [&](double u) {
        const double lt = log_term(u);
        terms.push_back(lt);
        max_lt = std::max(max_lt, lt);
        return lt;
    };
    for (double u = u_lo; u <= u_hi + 0.5 * h; u += h)
        push(u);
    // extend outward until both boundaries are 50 e-folds below the peak
    auto extend = [&]() {
        for (int guard = 0; guard < 400; ++guard) {
            bool grew = false;
            if (std::isfinite(max_lt)) {
                double lt = log_term(u_lo);
                if (lt > max_lt - 50.0) {
                    u_lo -= h;
                    lt = push(u_lo);
                    grew = true;
                }
                lt = log_term(u_hi);
                if (lt > max_lt - 50.0) {
                    u_hi += h;
                    lt = push(u_hi);
                    grew = true;
                }
            }
            if (!grew)
                break;
        }
    };
    extend();

    auto logsum = [&](double lh) {
        if (!std::isfinite(max_lt))
            return neg_inf;
        double s = 0.0;
        for (double t : terms)
            if (t - max_lt > -745.0)
                s += std::exp(t - max_lt);
        return max_lt + std::log(s) + lh;
    };
    double prev = logsum(std::log(h));
    tol = std::max(tol, 1e-12);
    int quiet = 0;
    for (int level = 1; level <= max_level; ++level) {
        const double h2 = 0.5 * h;
        for (double u = u_lo + h2; u <= u_hi; u += h)
            push(u);
        h = h2;
        extend();
        const double cur = logsum(std::log(h));
        if (level >= 2 && std::isfinite(cur) && std::isfinite(prev)) {
            const double diff = std::abs(std::expm1(prev - cur));
            if (diff <= tol) {
                if (++quiet >= 2 || diff == 0.0) {
                    res.log_value = cur;
                    res.converged = true;
                    return res;
                }
            } else {
                quiet = 0;
            }
        }
        prev = cur;
    }
    res.log_value = prev;
    res.converged = false;
    return res;
}

// 64-point Gauss-Legendre nodes/weights on [-1, 1], computed once by Newton
// iteration on the Legendre polynomial.
inline const std::vector<std::pair<double, double>> &gauss_legendre_64() {
    static const std::vector<std::pair<double, double>> table = [] {
        constexpr int n = 64;
        std::vector<std::pair<double, double>> nw(n);
        for (int i = 0; i < n / 2; ++i) {
            double x = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                pp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / pp;
                x -= dx;
                if (std::abs(dx) < 1e-16)
                    break;
            }
            const double w = 2.0 / ((1.0 - x * x) * pp * pp);
            nw[i] = {-x, w};
            nw[n - 1 - i] = {x, w};
        }
        return nw;
    }();
    return table;
}

// Fixed-order Gauss-Legendre integral of f over [a, b] with 64 nodes.
template <class F>
double gauss_legendre_64_integrate(F &&f, double a, double b) {
    const double c = 0.5 * (a + b), d = 0.5 * (b - a);
    double s = 0.0;
    for (const auto &[x, w] : gauss_legendre_64())
        s += w * f(c + d * x);
    return s * d;
}

} // namespace wlsinr::quad

#endif // WLSINR_QUADRATURE_HPP
