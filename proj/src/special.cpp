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

#include "wlsinr/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "wlsinr/errors.hpp"
#include "wlsinr/quadrature.hpp"

namespace wlsinr::special {

namespace {

constexpr double kLogPi = 1.1447298858494001741434;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Lanczos approximation, g = 7, 9 coefficients.
const double kLanczos[9] = {0.99999999999980993,      676.5203681218851,
                            -1259.1392167224028,      771.32342877765313,
                            -176.61502916214059,      12.507343278686905,
                            -0.13857109526572012,     9.9843695780195716e-6,
                            1.5056327351493116e-7};

double ln_gamma_lanczos(double z) {
    // valid for z >= 0.5
    double x = kLanczos[0];
    for (int i = 1; i < 9; ++i)
        x += kLanczos[i] / (z + i - 1.0);
    const double t = z + 6.5;
    return 0.5 * std::log(2.0 * 3.14159265358979323846) + (z - 0.5) * std::log(t) - t +
           std::log(x);
}

} // namespace

double ln_gamma(double a) {
    if (!(a > 0.0))
        throw std::domain_error("ln_gamma: argument must be positive, got " + std::to_string(a));
    if (a < 0.5)
        return ln_gamma_lanczos(a + 1.0) - std::log(a);
    return ln_gamma_lanczos(a);
}

double reg_lower_incomplete_gamma(double a, double x) {
    if (!(a > 0.0) || x < 0.0)
        throw std::domain_error("reg_lower_incomplete_gamma: need a > 0 and x >= 0");
    if (x == 0.0)
        return 0.0;
    const double lg = ln_gamma(a);
    const double lprefix = a * std::log(x) - x - lg;
    if (x < a + 1.0) {
        // series for P(a, x)
        double ap = a;
        double term = 1.0 / a;
        double sum = term;
        for (int n = 0; n < 500; ++n) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-16)
                break;
        }
        return std::min(1.0, std::exp(lprefix) * sum);
    }
    // continued fraction for Q(a, x), modified Lentz
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16)
            break;
    }
    const double q = std::exp(lprefix) * h;
    return std::max(0.0, 1.0 - q);
}

double multivariate_gamma_log(double a, int b) {
    if (b < 1)
        throw std::domain_error("multivariate_gamma_log: b must be a positive integer");
    double s = 0.25 * b * (b - 1) * kLogPi;
    for (int i = 1; i <= b; ++i) {
        const double arg = a + 0.5 * (1.0 - i);
        if (!(arg > 0.0))
            throw std::domain_error("multivariate_gamma_log: gamma argument non-positive");
        s += ln_gamma(arg);
    }
    return s;
}

double pochhammer_rising(double a, int n) {
    double p = 1.0;
    for (int i = 0; i < n; ++i)
        p *= a + i;
    return p;
}

double ln_pochhammer(double a, int n, int &sign) {
    sign = 1;
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        const double f = a + i;
        if (f == 0.0) {
            sign = 0;
            return -kInf;
        }
        if (f < 0.0)
            sign = -sign;
        s += std::log(std::abs(f));
    }
    return s;
}

namespace {

// Direct Kummer series. Terms may alternate; Neumaier-compensated sum.
// Returns the sum; ctl reports convergence.
double kummer_series(double a, double b, double x, series_control &ctl) {
    double term = 1.0;
    double sum = 1.0, comp = 0.0;
    long m = 0;
    int small_in_a_row = 0;
    while (m < ctl.max_terms) {
        term *= (a + m) * x / ((b + m) * (m + 1.0));
        const double t = term;
        const double s = sum + t;
        if (std::abs(sum) >= std::abs(t))
            comp += (sum - s) + t;
        else
            comp += (t - s) + sum;
        sum = s;
        ++m;
        if (std::abs(t) <= ctl.rel_tol * std::abs(sum)) {
            if (++small_in_a_row >= 2)
                break;
        } else {
            small_in_a_row = 0;
        }
    }
    ctl.achieved_terms = m;
    ctl.converged = small_in_a_row >= 2;
    return sum + comp;
}

} // namespace

double kummer_m(double a, double b, double x, series_control &ctl) {
    if (b <= 0.0 && b == std::floor(b))
        throw std::domain_error("kummer_m: b must not be a non-positive integer");
    if (x == 0.0) {
        ctl.achieved_terms = 1;
        ctl.converged = true;
        return 1.0;
    }
    // For x < 0 with b > a the direct series alternates with catastrophic
    // cancellation once |x| is large; the Kummer transform
    // M(a,b,x) = e^x M(b-a, b, -x) moves the work to a positive-term series.
    if (x < 0.0 && b - a > 0.0 && b > 0.0) {
        const double v = kummer_series(b - a, b, -x, ctl);
        if (!ctl.converged)
            throw truncation_error("kummer_m: series did not converge", std::exp(x) * v,
                                   ctl.achieved_terms);
        return std::exp(x) * v;
    }
    const double v = kummer_series(a, b, x, ctl);
    if (!ctl.converged)
        throw truncation_error("kummer_m: series did not converge", v, ctl.achieved_terms);
    return v;
}

double tricomi_u_log(double a, double b, double x, series_control &ctl) {
    if (!(a > 0.0) || !(x > 0.0))
        throw std::domain_error("tricomi_u_log: need a > 0 and x > 0");
    const double q = b - a - 1.0; // (1+t)^q factor
    auto g = [&](double t) { return -x * t + (a - 1.0) * std::log(t) + q * std::log1p(t); };
    const double tol = std::max(ctl.rel_tol, 1e-13);
    auto r = quad::exp_sinh_log(g, tol);
    ctl.achieved_terms = r.evaluations;
    ctl.converged = r.converged;
    const double lu = r.log_value - ln_gamma(a);
    if (!r.converged)
        throw truncation_error("tricomi_u_log: quadrature did not converge", lu, r.evaluations);
    return lu;
}

double tricomi_u(double a, double b, double x, series_control &ctl) {
    return std::exp(tricomi_u_log(a, b, x, ctl));
}

double lauricella_phi2(std::span<const double> b_list, double c,
                       std::span<const double> x_list, series_control &ctl) {
    const std::size_t n = b_list.size();
    if (n == 0 || x_list.size() != n)
        throw std::domain_error("lauricella_phi2: b_list and x_list must have equal length >= 1");
    if (c <= 0.0 && c == std::floor(c))
        throw std::domain_error("lauricella_phi2: c must not be a non-positive integer");

    // Per-dimension tables of log |(b_k)_i x_k^i / i!| and sign, grown on
    // demand. Dimension caps: terms beyond the cap are negligible for every
    // shell because each one-dimensional factor decays super-geometrically
    // past |x_k| + margin.
    struct dim_table {
        std::vector<double> ln; // ln |(b)_i x^i / i!|
        std::vector<int> sign;
        double b = 0, x = 0;
        int cap = 0;
    };
    std::vector<dim_table> dims(n);
    for (std::size_t k = 0; k < n; ++k) {
        auto &d = dims[k];
        d.b = b_list[k];
        d.x = x_list[k];
        const double ax = std::abs(d.x);
        d.cap = (d.x == 0.0) ? 0 : (int)(ax + 18.0 * std::sqrt(ax + 1.0) + 40.0);
        d.ln.push_back(0.0);
        d.sign.push_back(1);
        for (int i = 0; i < d.cap; ++i) {
            const double f = (d.b + i) * d.x / (i + 1.0);
            if (f == 0.0) {
                d.cap = i; // series terminates (b a non-positive integer)
                break;
            }
            d.ln.push_back(d.ln.back() + std::log(std::abs(f)));
            d.sign.push_back(f < 0.0 ? -d.sign.back() : d.sign.back());
        }
    }
    // (c)_s table
    std::vector<double> ln_c_poch{0.0};

    double sum = 1.0, comp = 0.0; // shell s = 0 contributes exactly 1
    long terms = 1;
    int quiet_shells = 0;
    int max_shell = 0;
    for (const auto &d : dims)
        max_shell += d.cap;

    std::vector<int> idx(n, 0);
    for (int s = 1; s <= max_shell; ++s) {
        ln_c_poch.push_back(ln_c_poch.back() + std::log(std::abs(c + s - 1.0)));
        double shell = 0.0, shell_comp = 0.0;
        // iterate compositions of s into n parts, respecting per-dim caps
        std::vector<int> stack_rem(n + 1);
        stack_rem[0] = s;
        int level = 0;
        idx.assign(n, 0);
        while (level >= 0) {
            if (level == (int)n - 1) {
                idx[level] = stack_rem[level];
                if (idx[level] <= dims[level].cap) {
                    double lt = -ln_c_poch[s];
                    int sign = 1;
                    bool ok = true;
                    for (std::size_t k = 0; k < n; ++k) {
                        const auto &d = dims[k];
                        if (idx[k] >= (int)d.ln.size()) {
                            ok = false;
                            break;
                        }
                        lt += d.ln[idx[k]];
                        sign *= d.sign[idx[k]];
                    }
                    if (ok && sign != 0) {
                        const double t = sign * std::exp(lt);
                        const double ns = shell + t;
                        if (std::abs(shell) >= std::abs(t))
                            shell_comp += (shell - ns) + t;
                        else
                            shell_comp += (t - ns) + shell;
                        shell = ns;
                        ++terms;
                    }
                }
                --level;
                if (level >= 0)
                    ++idx[level];
            } else {
                if (idx[level] > std::min(stack_rem[level], dims[level].cap)) {
                    idx[level] = 0;
                    --level;
                    if (level >= 0)
                        ++idx[level];
                } else {
                    stack_rem[level + 1] = stack_rem[level] - idx[level];
                    ++level;
                    idx[level] = 0;
                }
            }
        }
        shell += shell_comp;
        const double ns = sum + shell;
        if (std::abs(sum) >= std::abs(shell))
            comp += (sum - ns) + shell;
        else
            comp += (shell - ns) + sum;
        sum = ns;
        if (terms > ctl.max_terms) {
            ctl.achieved_terms = ctl.max_terms;
            ctl.converged = false;
            throw truncation_error("lauricella_phi2: term budget exceeded", sum + comp, terms);
        }
        if (std::abs(shell) <= ctl.rel_tol * std::abs(sum)) {
            if (++quiet_shells >= 2)
                break;
        } else {
            quiet_shells = 0;
        }
    }
    ctl.achieved_terms = terms;
    ctl.converged = quiet_shells >= 2 || max_shell == 0;
    if (!ctl.converged)
        throw truncation_error("lauricella_phi2: series did not converge", sum + comp, terms);
    return sum + comp;
}

double q_function(double x) {
    return 0.5 * std::erfc(x * 0.7071067811865475244);
}

double q_approx(double x) {
    const double x2 = x * x;
    return std::exp(-0.5 * x2) / 12.0 + std::exp(-2.0 * x2 / 3.0) * 0.25;
}

} // namespace wlsinr::special
