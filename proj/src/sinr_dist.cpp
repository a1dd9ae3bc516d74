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

#include "wlsinr/sinr_dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <cstdio>

#include "wlsinr/errors.hpp"
#include "wlsinr/quadrature.hpp"

namespace wlsinr::dist {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogPi = 1.1447298858494001741434;

using special::ln_gamma;
using special::ln_pochhammer;

// ---------------------------------------------------------------------------
// scaled arithmetic: value = v * exp(off), v kept within a safe mantissa band
// ---------------------------------------------------------------------------

struct scaled {
    double v = 0.0;
    double off = 0.0;

    void renorm() {
        const double a = std::abs(v);
        if (a > 0.0 && (a > 1e200 || a < 1e-200)) {
            const double l = std::log(a);
            off += l;
            v = (v > 0.0) ? 1.0 : -1.0;
        }
    }
    double ln_abs() const { return (v == 0.0) ? -kInf : std::log(std::abs(v)) + off; }
};

// signed accumulator over terms with individual scales
struct scaled_sum {
    double v = 0.0, comp = 0.0;
    double off = -kInf;

    void add(double term_v, double term_off) {
        if (term_v == 0.0)
            return;
        if (v == 0.0 && comp == 0.0) {
            v = term_v;
            off = term_off;
            return;
        }
        double t;
        if (term_off > off) {
            const double shift = std::exp(off - term_off);
            v *= shift;
            comp *= shift;
            off = term_off;
            t = term_v;
        } else {
            t = term_v * std::exp(term_off - off);
        }
        const double s = v + t;
        if (std::abs(v) >= std::abs(t))
            comp += (v - s) + t;
        else
            comp += (t - s) + v;
        v = s;
        if (std::abs(v) > 1e250) {
            v *= 1e-100;
            comp *= 1e-100;
            off += std::log(1e100);
        }
    }
    double ln_abs() const {
        const double total = v + comp;
        return (total == 0.0) ? -kInf : std::log(std::abs(total)) + off;
    }
    int sign() const {
        const double total = v + comp;
        return (total > 0.0) - (total < 0.0);
    }
    // (v+comp)*exp(off+extra)
    double value_with(double extra) const {
        const double total = v + comp;
        if (total == 0.0)
            return 0.0;
        return ((total > 0.0) ? 1.0 : -1.0) * std::exp(std::log(std::abs(total)) + off + extra);
    }
};

// ---------------------------------------------------------------------------
// positive-term confluent series in log scale
// ---------------------------------------------------------------------------

// ln M(a, b, x) for a, b > 0, x >= 0 (all terms positive)
double m_series_ln(double a, double b, double x, long max_terms, long &used) {
    if (x == 0.0) {
        used = 1;
        return 0.0;
    }
    scaled term{1.0, 0.0};
    scaled_sum sum;
    sum.add(1.0, 0.0);
    long m = 0;
    while (m < max_terms) {
        const double r = (a + m) * x / ((b + m) * (m + 1.0));
        term.v *= r;
        term.renorm();
        sum.add(term.v, term.off);
        ++m;
        if (r < 1.0 && term.ln_abs() < sum.ln_abs() - 40.0)
            break;
    }
    used = m;
    if (m >= max_terms)
        throw truncation_error("m_series_ln: term budget exceeded", sum.ln_abs(), m);
    return sum.ln_abs();
}

// ln Phi2^{(2)}(b1, b2; c; x, y) for x, y >= 0 (all terms positive)
double phi2_ln_2(double b1, double b2, double c, double x, double y, long max_terms,
                 long &used) {
    if (x > y) {
        std::swap(x, y);
        std::swap(b1, b2);
    }
    if (y == 0.0) {
        used = 1;
        return 0.0;
    }
    if (x == 0.0)
        return m_series_ln(b2, c, y, max_terms, used);

    scaled_sum total;
    scaled row_start{1.0, 0.0}; // T(i, 0)
    long terms = 0;
    double prev_row_ln = -kInf;
    int rows_quiet = 0;
    for (long i = 0;; ++i) {
        // inner sweep over j at fixed i
        double t = row_start.v;
        double row_off = row_start.off;
        double rowsum = t, rowcomp = 0.0, rowmax = std::abs(t);
        for (long j = 0;; ++j) {
            const double r = (b2 + j) * y / ((c + i + j) * (j + 1.0));
            t *= r;
            const double s = rowsum + t;
            if (std::abs(rowsum) >= std::abs(t))
                rowcomp += (rowsum - s) + t;
            else
                rowcomp += (t - s) + rowsum;
            rowsum = s;
            rowmax = std::max(rowmax, t);
            ++terms;
            if (t > 1e250) {
                t *= 1e-100;
                rowsum *= 1e-100;
                rowcomp *= 1e-100;
                rowmax *= 1e-100;
                row_off += std::log(1e100);
            }
            if (r < 1.0 && t < rowmax * 1e-18)
                break;
            if (terms > max_terms)
                throw truncation_error("phi2_ln_2: term budget exceeded", total.ln_abs(), terms);
        }
        total.add(rowsum + rowcomp, row_off);
        const double row_ln = std::log(std::abs(rowsum + rowcomp)) + row_off;
        // row start for i+1
        const double rr = (b1 + i) * x / ((c + i) * (i + 1.0));
        row_start.v *= rr;
        row_start.renorm();
        if (rr < 1.0 && row_ln < total.ln_abs() - 40.0 && row_ln < prev_row_ln) {
            if (++rows_quiet >= 2)
                break;
        } else {
            rows_quiet = 0;
        }
        prev_row_ln = row_ln;
    }
    used = terms;
    return total.ln_abs();
}

// ln Phi2^{(n)} for nonnegative arguments; dimensions beyond two are peeled
// off recursively through (c)_{i+j+..} = (c)_i (c+i)_{j+..}.
double phi2_ln_pos(std::vector<double> b, double c, std::vector<double> x, long max_terms,
                   long &used) {
    const std::size_t n = b.size();
    if (n == 1)
        return m_series_ln(b[0], c, x[0], max_terms, used);
    if (n == 2)
        return phi2_ln_2(b[0], b[1], c, x[0], x[1], max_terms, used);
    // peel the smallest argument
    std::size_t kmin = 0;
    for (std::size_t k = 1; k < n; ++k)
        if (x[k] < x[kmin])
            kmin = k;
    std::swap(b[0], b[kmin]);
    std::swap(x[0], x[kmin]);
    const double b0 = b[0], x0 = x[0];
    std::vector<double> brest(b.begin() + 1, b.end());
    std::vector<double> xrest(x.begin() + 1, x.end());

    scaled_sum total;
    scaled outer{1.0, 0.0}; // (b0)_i x0^i / ((c)_i i!)
    used = 0;
    int quiet = 0;
    for (long i = 0;; ++i) {
        long inner_used = 0;
        const double inner_ln = phi2_ln_pos(brest, c + i, xrest, max_terms, inner_used);
        used += inner_used + 1;
        if (used > max_terms)
            throw truncation_error("phi2_ln_pos: term budget exceeded", total.ln_abs(), used);
        const double term_ln = outer.ln_abs() + inner_ln;
        total.add(outer.v >= 0 ? 1.0 : -1.0, term_ln);
        const double r = (b0 + i) * x0 / ((c + i) * (i + 1.0));
        outer.v *= r;
        outer.renorm();
        if (x0 == 0.0)
            break;
        if (r < 1.0 && term_ln < total.ln_abs() - 40.0) {
            if (++quiet >= 2)
                break;
        } else {
            quiet = 0;
        }
    }
    return total.ln_abs();
}

} // namespace

// ---------------------------------------------------------------------------
// gamma mixture
// ---------------------------------------------------------------------------

double gamma_mixture_params::mean() const {
    double m = 0.0;
    for (std::size_t k = 0; k < alphas.size(); ++k)
        m += alphas[k] * betas[k];
    return m;
}

gamma_mixture_params gamma_params(const std::vector<double> &spectrum,
                                  const system_config &cfg) {
    if ((int)spectrum.size() != cfg.n_t - 1)
        throw std::domain_error("gamma_params: spectrum length must be n_t - 1");
    const double rho = cfg.rho();
    gamma_mixture_params p;
    p.alphas.reserve(cfg.n_t);
    p.betas.reserve(cfg.n_t);
    for (double lam : spectrum) {
        p.alphas.push_back(0.5);
        p.betas.push_back(2.0 / (2.0 * lam + 1.0 / rho));
    }
    p.alphas.push_back(0.5 * (2.0 * cfg.n_r - cfg.n_t + 1.0));
    p.betas.push_back(2.0 * rho);
    return p;
}

namespace {

double conditional_pdf_impl(double tau, const gamma_mixture_params &params, int ref,
                            series_control &ctl) {
    const std::size_t n = params.alphas.size();
    double a_total = 0.0, ln_beta_sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        a_total += params.alphas[k];
        ln_beta_sum += params.alphas[k] * std::log(params.betas[k]);
    }
    if (tau < 0.0)
        throw std::domain_error("conditional_pdf: tau must be nonnegative");
    if (tau == 0.0) {
        ctl.achieved_terms = 1;
        ctl.converged = true;
        if (a_total > 1.0)
            return 0.0;
        if (a_total == 1.0)
            return std::exp(-ln_beta_sum);
        return kInf; // mixture with total shape < 1 is singular at zero
    }
    std::vector<double> b, x;
    b.reserve(n - 1);
    x.reserve(n - 1);
    bool negative_args = false;
    for (std::size_t k = 0; k < n; ++k) {
        if ((int)k == ref)
            continue;
        b.push_back(params.alphas[k]);
        const double arg = (1.0 / params.betas[ref] - 1.0 / params.betas[k]) * tau;
        x.push_back(arg);
        if (arg < 0.0)
            negative_args = true;
    }
    const double ln_pref = (a_total - 1.0) * std::log(tau) - tau / params.betas[ref] -
                           ln_gamma(a_total) - ln_beta_sum;
    double ln_phi;
    if (n == 1) {
        ln_phi = 0.0;
        ctl.achieved_terms = 1;
        ctl.converged = true;
    } else if (!negative_args) {
        long used = 0;
        ln_phi = phi2_ln_pos(b, a_total, x, ctl.max_terms, used);
        ctl.achieved_terms = used;
        ctl.converged = true;
    } else {
        // mixed/negative arguments: the definitional alternating series
        const double v = special::lauricella_phi2(b, a_total, x, ctl);
        if (!(v > 0.0))
            throw truncation_error("conditional_pdf: alternating series lost all precision", v,
                                   ctl.achieved_terms);
        ln_phi = std::log(v);
    }
    return std::exp(ln_pref + ln_phi);
}

} // namespace

double conditional_pdf(double tau, const gamma_mixture_params &params, series_control &ctl) {
    const std::size_t n = params.alphas.size();
    if (n == 0 || params.betas.size() != n)
        throw std::domain_error("conditional_pdf: empty or inconsistent parameters");
    // Default reference: the largest scale (all Phi2 arguments <= 0), which
    // is safe while the arguments stay small. Large arguments switch to the
    // smallest scale so every term of the series is positive.
    std::size_t ref_max_beta = 0, ref_min_beta = 0;
    for (std::size_t k = 1; k < n; ++k) {
        if (params.betas[k] > params.betas[ref_max_beta])
            ref_max_beta = k;
        if (params.betas[k] < params.betas[ref_min_beta])
            ref_min_beta = k;
    }
    const double span = (1.0 / params.betas[ref_min_beta] - 1.0 / params.betas[ref_max_beta]) *
                        std::max(tau, 0.0);
    const std::size_t ref = (span <= 20.0) ? ref_max_beta : ref_min_beta;
    return conditional_pdf_impl(tau, params, (int)ref, ctl);
}

double conditional_pdf_ref(double tau, const gamma_mixture_params &params, int ref_index,
                           series_control &ctl) {
    if (ref_index < 0 || (std::size_t)ref_index >= params.alphas.size())
        throw std::domain_error("conditional_pdf_ref: reference index out of range");
    return conditional_pdf_impl(tau, params, ref_index, ctl);
}

// ---------------------------------------------------------------------------
// Wishart eigenvalue densities
// ---------------------------------------------------------------------------

double wishart_eig_joint_pdf_general(const std::vector<double> &lambdas, int p, int q,
                                     double delta) {
    if ((int)lambdas.size() != p || p < 1 || q < p || !(delta > 0.0))
        throw std::domain_error("wishart_eig_joint_pdf_general: invalid arguments");
    for (int k = 0; k < p; ++k) {
        if (!(lambdas[k] > 0.0))
            return 0.0;
        if (k + 1 < p && lambdas[k] <= lambdas[k + 1])
            return 0.0;
    }
    double ln = 0.5 * p * p * kLogPi - 0.5 * p * q * std::log(2.0 * delta) -
                special::multivariate_gamma_log(0.5 * p, p) -
                special::multivariate_gamma_log(0.5 * q, p);
    for (int k = 0; k < p; ++k)
        ln += -lambdas[k] / (2.0 * delta) + 0.5 * (q - p - 1.0) * std::log(lambdas[k]);
    double vander = 1.0;
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
            vander *= lambdas[i] - lambdas[j];
    return std::exp(ln) * vander;
}

double wishart_eig_joint_pdf(const std::vector<double> &lambdas, int n_t, int n_r) {
    const int p = n_t - 1;
    if ((int)lambdas.size() != p || p < 1 || n_r < n_t - 1)
        throw std::domain_error("wishart_eig_joint_pdf: invalid arguments");
    for (int k = 0; k < p; ++k) {
        if (!(lambdas[k] > 0.0))
            return 0.0;
        if (k + 1 < p && lambdas[k] <= lambdas[k + 1])
            return 0.0;
    }
    double ln = 0.5 * p * p * kLogPi - special::multivariate_gamma_log((double)n_r, p) -
                special::multivariate_gamma_log(0.5 * p, p);
    for (int k = 0; k < p; ++k)
        ln += -lambdas[k] + (n_r - 0.5 * n_t) * std::log(lambdas[k]);
    double vander = 1.0;
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
            vander *= lambdas[i] - lambdas[j];
    return std::exp(ln) * vander;
}

double single_eig_pdf(double lambda, int n_r) {
    if (!(lambda > 0.0))
        return 0.0;
    if (n_r < 1)
        throw std::domain_error("single_eig_pdf: n_r must be positive");
    return std::exp((n_r - 1.0) * std::log(lambda) - lambda - ln_gamma((double)n_r));
}

// ---------------------------------------------------------------------------
// Mellin-transform families behind the series PDFs.
//
// The n_t = 2 series needs
//   W(m)  = int_0^inf t^{n_r-1+m} (1+t)^{1/2} e^{-phi t} dt
//         = Gamma(n_r+m) U(n_r+m, n_r+m+3/2, phi),
// evaluated for m = 0..several hundred. The pair (I_p, J_p) with weights
// (1+t)^{1/2} and (1+t)^{3/2} obeys
//   I_{p+1} = J_p - I_p,
//   J_{p+1} = ((p+1) J_p + (3/2) I_{p+1}) / phi,
// which is stable forward for p >~ phi and backward below; the chain is
// seeded by double-exponential quadrature at p0 ~ max(n_r-1, phi).
// ---------------------------------------------------------------------------

namespace {

double mellin_direct_ln(double p, double q, double phi) {
    auto g = [&](double t) { return p * std::log(t) + q * std::log1p(t) - phi * t; };
    auto r = quad::exp_sinh_log(g, 1e-12);
    if (!r.converged)
        throw integration_error("mellin_direct_ln: quadrature did not converge", r.log_value,
                                0.0);
    return r.log_value;
}

class mellin_chain_nt2 {
  public:
    mellin_chain_nt2(int n_r, double phi) : n_r_(n_r), phi_(phi) {
        m0_ = std::max(0, (int)std::ceil(phi_) - (n_r_ - 1));
        const double p0 = n_r_ - 1.0 + m0_;
        i_.off = mellin_direct_ln(p0, 0.5, phi_);
        i_.v = 1.0;
        j_.off = mellin_direct_ln(p0, 1.5, phi_);
        j_.v = 1.0;
        ln_w_.assign(m0_ + 1, 0.0);
        ln_w_[m0_] = i_.off;
        backward_fill();
        fwd_i_ = i_;
        fwd_j_ = j_;
        fwd_m_ = m0_;
    }

    double ln_w(int m) {
        while (m > fwd_m_)
            step_forward();
        return ln_w_[m];
    }

  private:
    void backward_fill() {
        // fill m0-1 .. 0 with the downward recurrence; fall back to direct
        // quadrature if the subtraction cancels badly
        scaled i = i_, j = j_;
        for (int m = m0_ - 1; m >= 0; --m) {
            const double p = n_r_ - 1.0 + m;
            // J_p = (phi J_{p+1} - 1.5 I_{p+1}) / (p+1); I_p = J_p - I_{p+1}
            const double shift = std::exp(i.off - j.off);
            double jn = (phi_ * j.v - 1.5 * i.v * shift) / (p + 1.0);
            double in = jn - i.v * shift;
            if (!(jn > 0.0) || !(in > 0.0) || in < 1e-6 * jn) {
                scaled ii, jj;
                ii.off = mellin_direct_ln(p, 0.5, phi_);
                ii.v = 1.0;
                jj.off = mellin_direct_ln(p, 1.5, phi_);
                jj.v = 1.0;
                i = ii;
                j = jj;
            } else {
                j.v = jn;
                j.off = j.off; // same scale as previous j
                i.v = in;
                i.off = j.off;
                i.renorm();
                j.renorm();
                // keep both on the j scale
                if (i.off != j.off) {
                    i.v *= std::exp(i.off - j.off);
                    i.off = j.off;
                }
            }
            ln_w_[m] = i.ln_abs();
        }
    }

    void step_forward() {
        const double p = n_r_ - 1.0 + fwd_m_;
        // align scales
        if (fwd_i_.off != fwd_j_.off) {
            fwd_i_.v *= std::exp(fwd_i_.off - fwd_j_.off);
            fwd_i_.off = fwd_j_.off;
        }
        const double in = fwd_j_.v - fwd_i_.v;            // I_{p+1}
        const double jn = ((p + 1.0) * fwd_j_.v + 1.5 * in) / phi_; // J_{p+1}
        fwd_i_.v = in;
        fwd_j_.v = jn;
        const double m = std::max(std::abs(in), std::abs(jn));
        if (m > 1e200 || m < 1e-200) {
            const double l = std::log(m);
            fwd_i_.v *= std::exp(-l);
            fwd_j_.v *= std::exp(-l);
            fwd_i_.off += l;
            fwd_j_.off += l;
        }
        ++fwd_m_;
        ln_w_.push_back(fwd_i_.ln_abs());
    }

    int n_r_;
    double phi_;
    int m0_;
    scaled i_, j_;
    scaled fwd_i_, fwd_j_;
    int fwd_m_ = 0;
    std::vector<double> ln_w_;
};

} // namespace

double analytic_pdf_nt2(double tau, int n_r, double rho, series_control &ctl) {
    if (n_r < 2)
        throw std::domain_error("analytic_pdf_nt2: need n_r >= 2");
    if (!(rho > 0.0) || tau < 0.0)
        throw std::domain_error("analytic_pdf_nt2: need rho > 0 and tau >= 0");
    if (tau == 0.0) {
        ctl.achieved_terms = 1;
        ctl.converged = true;
        return 0.0;
    }
    const double two_rho = 2.0 * rho;
    const double phi = (tau + 1.0) / two_rho;
    mellin_chain_nt2 chain(n_r, phi);

    const double ln_pref = (n_r - 1.0) * std::log(tau) - tau / two_rho -
                           2.0 * n_r * std::log(two_rho) - 2.0 * ln_gamma((double)n_r);
    // term_m = c_m W(m), c_m = (n_r - 1/2)_m tau^m / ((n_r)_m (2 rho)^m m!)
    scaled term{1.0, chain.ln_w(0)};
    scaled_sum sum;
    sum.add(term.v, term.off);
    const double r_geo = tau / (tau + 1.0); // proven limit of the term ratio
    long m = 0;
    int quiet = 0;
    bool converged = false;
    while (m < ctl.max_terms) {
        const double c_ratio = (n_r - 0.5 + m) * tau / ((n_r + m) * two_rho * (m + 1.0));
        const double w_ratio = chain.ln_w(m + 1) - chain.ln_w(m);
        const double ratio = c_ratio * std::exp(w_ratio);
        term.v *= ratio;
        term.renorm();
        sum.add(term.v, term.off);
        ++m;
        // geometric tail bound; the ratio approaches tau/(tau+1) from above,
        // so the observed ratio is kept as a safeguard
        const double r_eff = std::min(0.999, std::max(r_geo, ratio));
        const double tail_ln = term.ln_abs() + std::log(r_eff / (1.0 - r_eff) + 1e-300);
        if (tail_ln <= sum.ln_abs() + std::log(ctl.rel_tol)) {
            if (++quiet >= 2) {
                converged = true;
                break;
            }
        } else {
            quiet = 0;
        }
    }
    ctl.achieved_terms = m + 1;
    ctl.converged = converged;
    const double value = sum.value_with(ln_pref);
    if (!converged)
        throw truncation_error("analytic_pdf_nt2: series did not converge", value, m);
    return value;
}

double nt2_term_ratio(int m, double tau, int n_r, double rho) {
    if (n_r < 2 || !(rho > 0.0) || !(tau > 0.0) || m < 0)
        throw std::domain_error("nt2_term_ratio: invalid arguments");
    const double two_rho = 2.0 * rho;
    const double phi = (tau + 1.0) / two_rho;
    mellin_chain_nt2 chain(n_r, phi);
    const double c_ratio = (n_r - 0.5 + m) * tau / ((n_r + m) * two_rho * (m + 1.0));
    return c_ratio * std::exp(chain.ln_w(m + 1) - chain.ln_w(m));
}

// ---------------------------------------------------------------------------
// n_t = 3 series. The four-fold series comes from marginalizing the
// two-eigenvalue conditional density with the binomial expansion of
// sqrt(lambda_2 + 1/(2 rho)) around lambda_1 + 1/(2 rho); its argument
// stays inside the unit disk on the ordered cone, giving a convergent
// quadruple sum over
//   W3(s, m4) = int_0^inf t^{S-1} (1+t)^{1-m4} e^{-phi t} dt,  S = 2 n_r + s.
// Columns m4 = 0, 1 are elementary; deeper columns follow from
//   W3(S+1, q) = W3(S, q+1) - W3(S, q)
// marched upward in S from a quadrature seed.
// ---------------------------------------------------------------------------

namespace {

class mellin_table_nt3 {
  public:
    mellin_table_nt3(int n_r, double phi) : base_(2 * n_r), phi_(phi), ln_phi_(std::log(phi)) {}

    // ln W3(s, m4): s = S - 2 n_r >= 0, m4 >= 0
    double ln_w(int s, int m4) {
        ensure(s, m4);
        return cols_[m4][s];
    }

  private:
    void ensure(int s, int m4) {
        while ((int)cols_.size() <= m4)
            cols_.emplace_back();
        for (int q = 0; q <= m4; ++q)
            grow_col(q, (q == m4) ? s : s + (m4 - q)); // neighbors needed one row deeper
    }

    void grow_col(int m4, int smax) {
        auto &col = cols_[m4];
        if ((int)col.size() > smax)
            return;
        if (m4 == 0) { // (1+t)^1: Gamma(S) (phi + S) / phi^{S+1}
            for (int s = (int)col.size(); s <= smax; ++s) {
                const double S = base_ + s;
                col.push_back(ln_gamma(S) + std::log(phi_ + S) - (S + 1.0) * ln_phi_);
            }
            return;
        }
        if (m4 == 1) { // (1+t)^0: Gamma(S) / phi^S
            for (int s = (int)col.size(); s <= smax; ++s) {
                const double S = base_ + s;
                col.push_back(ln_gamma(S) - S * ln_phi_);
            }
            return;
        }
        if (col.empty())
            col.push_back(mellin_direct_ln(base_ - 1.0, 1.0 - m4, phi_)); // seed at s = 0
        for (int s = (int)col.size(); s <= smax; ++s) {
            // W(S, q) = W(S-1, q+1) - W(S-1, q), q = 1 - m4
            const double ln_a = ln_w_raw(m4 - 1, s - 1);
            const double ln_b = col[s - 1];
            const double d = ln_b - ln_a; // < 0
            if (d > -1e-5) {              // catastrophic cancellation: reseed
                col.push_back(mellin_direct_ln(base_ + s - 1.0, 1.0 - m4, phi_));
            } else {
                col.push_back(ln_a + std::log1p(-std::exp(d)));
            }
        }
    }

    double ln_w_raw(int m4, int s) {
        grow_col(m4, s);
        return cols_[m4][s];
    }

    double base_;
    double phi_, ln_phi_;
    std::vector<std::vector<double>> cols_;
};

} // namespace

namespace {

// Core of the quadruple series. `alternating` selects the organization
// printed around (tau+1)/(2 rho) kernels (inner direction alternating in
// sign); otherwise the resummed all-positive organization around
// (tau+2)/(2 rho) kernels is used.
double nt3_series(double tau, int n_r, double rho, series_control &ctl, bool alternating) {
    if (n_r < 3)
        throw std::domain_error("analytic_pdf_nt3: need n_r >= 3");
    if (!(rho > 0.0) || tau < 0.0)
        throw std::domain_error("analytic_pdf_nt3: need rho > 0 and tau >= 0");
    if (tau == 0.0) {
        ctl.achieved_terms = 1;
        ctl.converged = true;
        return 0.0;
    }
    const double two_rho = 2.0 * rho;
    const double phi = (alternating ? (tau + 1.0) : (tau + 2.0)) / two_rho;
    const double ln_tau = std::log(tau);
    const double ln_2rho = std::log(two_rho);
    mellin_table_nt3 table(n_r, phi);

    const double ln_pref = 0.5 * kLogPi + (n_r - 1.0) * ln_tau - tau / two_rho -
                           2.0 * ln_gamma((double)n_r) - ln_gamma(n_r - 0.5) -
                           3.0 * n_r * ln_2rho;

    // ln |(-1/2)_{m4}| and sign
    auto lnpoch_mhalf = [](int m4, int &sign) {
        sign = (m4 >= 1) ? -1 : 1;
        int s_;
        return ln_pochhammer(-0.5, m4, s_);
    };

    scaled_sum total;
    long terms = 0;
    constexpr int kM4Hard = 200;
    double prev_shell_ln = -kInf;
    int quiet = 0;
    bool converged = false;
    for (int s = 0;; ++s) {
        scaled_sum shell;
        // global significance cutoff: contributions this far below the
        // running total cannot move the result at rel_tol even summed over
        // the whole term budget
        const double cut_ln =
            (s == 0) ? -kInf : total.ln_abs() + std::log(ctl.rel_tol) - 16.0;
        const int m4_top = std::min(s, kM4Hard);
        int m4_quiet = 0;
        double prev_slice_ln = -kInf;
        for (int m4 = 0; m4 <= m4_top; ++m4) {
            const int t = s - m4;
            int sgn_p;
            const double lp_mhalf = lnpoch_mhalf(m4, sgn_p);
            // slice start at the (m1, m2, m3) = (0, t, 0) corner
            const double nu0 = n_r - 0.5;
            const double mu0 = m4 + 2.0;
            const double ln_start = lp_mhalf + (ln_gamma(n_r - 1.0 + t) - ln_gamma(n_r - 1.0)) -
                                    (ln_gamma((double)n_r + t) - ln_gamma((double)n_r)) +
                                    t * (ln_tau - ln_2rho) + ln_gamma(nu0) + ln_gamma(mu0) -
                                    ln_gamma(nu0 + mu0) - ln_gamma(t + 1.0) -
                                    ln_gamma(m4 + 1.0) + table.ln_w(s, m4);
            scaled_sum slice;
            // slices already far below the significance threshold only need
            // coarse internal accuracy: they are summed to bound the m4
            // tail, not to refine the result
            const double sig_ln = total.ln_abs() + std::log(ctl.rel_tol);
            const bool deep_slice = (s > 0) && (ln_start < sig_ln - 2.0);
            const double inner_rel = deep_slice ? 1e-6 : 1e-17;
            // lines of constant m3, each walked in m1 with m2 = t - m3 - m1;
            // lines are single-signed in both organizations and decay
            // monotonically from their m1 = 0 start
            scaled line{(double)sgn_p, ln_start};
            double slice_max_ln = -kInf;
            double prev_line_ln = -kInf;
            int lines_quiet = 0;
            for (int m3 = 0; m3 <= t; ++m3) {
                if (m3 > 0) {
                    double num, den;
                    if (alternating) {
                        num = -(n_r + t - m3 + 0.0) * (t - m3 + 1.0) * (n_r + m3 - 1.5);
                        den = tau * m3 * (n_r + t - m3 - 1.0) * (n_r + m3 + m4 + 0.5);
                    } else {
                        num = (n_r + t - m3 + 0.0) * (t - m3 + 1.0) * (m3 + m4 + 1.0);
                        den = tau * m3 * (n_r + t - m3 - 1.0) * (n_r + m3 + m4 + 0.5);
                    }
                    line.v *= num / den;
                    line.renorm();
                }
                double term = line.v;
                double off = line.off;
                double lsum = term, lmax = std::abs(term);
                const int m1_top = t - m3;
                const double start_ln = line.ln_abs();
                if (start_ln >= cut_ln - std::log(m1_top + 1.0)) {
                    const double term_cut = std::exp(std::max(cut_ln - off, -700.0));
                    for (int m1 = 1; m1 <= m1_top; ++m1) {
                        const double grow =
                            alternating ? (m1 + m4 + 1.0) : (m1 + m3 + m4 + 1.0);
                        const double ratio = (m1 - 0.5) * (t - m3 - m1 + 1.0) * grow /
                                             (m1 * (n_r - 1.0 + t - m3 - m1) *
                                              (n_r + m3 + m1 + m4 + 0.5));
                        term *= ratio;
                        if (std::abs(term) > 1e250) {
                            lsum *= 1e-100;
                            term *= 1e-100;
                            lmax *= 1e-100;
                            off += std::log(1e100);
                        }
                        lsum += term; // single-signed line, plain accumulation
                        lmax = std::max(lmax, std::abs(term));
                        ++terms;
                        // terms decrease monotonically once ratio < 1, so the
                        // remaining tail is bounded by count * |term|
                        const double rem = m1_top - m1 + 1.0;
                        if (ratio < 1.0 &&
                            std::abs(term) * rem < std::max(lmax * inner_rel, term_cut))
                            break;
                    }
                }
                ++terms;
                slice.add(lsum, off);
                const double line_ln = (lsum == 0.0) ? -kInf : std::log(std::abs(lsum)) + off;
                slice_max_ln = std::max(slice_max_ln, line_ln);
                if (line_ln < slice_max_ln - 45.0 && line_ln <= prev_line_ln) {
                    if (++lines_quiet >= 3)
                        break; // decayed past the m3 peak
                } else {
                    lines_quiet = 0;
                }
                if (line_ln < cut_ln && line_ln <= prev_line_ln && m3 > (int)(t / (tau + 1.0)))
                    break; // below significance past the line peak
                prev_line_ln = line_ln;
            }
            shell.add(slice.sign(), slice.ln_abs());
            // slices beyond m4 = 1 share one sign and decay sub-geometrically;
            // allow a worst-case ratio of 0.98 when bounding the tail
            const double slice_ln = slice.ln_abs();
            const double tail4_ln = slice_ln + 3.9; // log(0.98 / 0.02)
            if (m4 >= 2 && s > 0 && slice_ln <= prev_slice_ln &&
                tail4_ln < total.ln_abs() + std::log(ctl.rel_tol) - 1.4) {
                if (++m4_quiet >= 2)
                    break;
            } else {
                m4_quiet = 0;
            }
            prev_slice_ln = slice_ln;
        }
        total.add(shell.sign(), shell.ln_abs());
#ifdef WLSINR_NT3_TRACE
        if (s % 20 == 0 || s < 5)
            std::fprintf(stderr, "s=%d shell_ln=%.3f total_ln=%.3f terms=%ld\n", s,
                         shell.ln_abs(), total.ln_abs(), terms);
#endif
        if (terms > ctl.max_terms) {
            ctl.achieved_terms = ctl.max_terms;
            ctl.converged = false;
            throw truncation_error("analytic_pdf_nt3: term budget exceeded",
                                   total.value_with(ln_pref), terms);
        }
        // shell-wise convergence with an observed-ratio geometric bound
        const double shell_ln = shell.ln_abs();
        double r_obs = std::exp(std::min(0.0, shell_ln - prev_shell_ln));
        r_obs = std::min(r_obs, 0.98);
        const double bound_ln = shell_ln + std::log(r_obs / (1.0 - r_obs) + 1e-300);
        if (s >= 2 && bound_ln <= total.ln_abs() + std::log(ctl.rel_tol)) {
            if (++quiet >= 2) {
                converged = true;
                break;
            }
        } else {
            quiet = 0;
        }
        prev_shell_ln = shell_ln;
    }
    ctl.achieved_terms = terms;
    ctl.converged = converged;
    return total.value_with(ln_pref);
}

} // namespace

double analytic_pdf_nt3(double tau, int n_r, double rho, series_control &ctl) {
    return nt3_series(tau, n_r, rho, ctl, false);
}

double analytic_pdf_nt3_alt(double tau, int n_r, double rho, series_control &ctl) {
    return nt3_series(tau, n_r, rho, ctl, true);
}

// ---------------------------------------------------------------------------
// MGF pipeline and the closed-form approximate distribution
// ---------------------------------------------------------------------------

double conditional_mgf(double s, const std::vector<double> &spectrum,
                       const system_config &cfg) {
    if ((int)spectrum.size() != cfg.n_t - 1)
        throw std::domain_error("conditional_mgf: spectrum length must be n_t - 1");
    const double rho = cfg.rho();
    const double tail_base = 1.0 - 2.0 * rho * s;
    if (!(tail_base > 0.0))
        throw std::domain_error("conditional_mgf: s outside the existence region");
    double v = std::pow(tail_base, -0.5 * (2.0 * cfg.n_r - cfg.n_t + 1.0));
    for (double lam : spectrum) {
        const double base = 1.0 - 2.0 * s / (2.0 * lam + 1.0 / rho);
        if (!(base > 0.0))
            throw std::domain_error("conditional_mgf: s outside the existence region");
        v *= std::pow(base, -0.5);
    }
    return v;
}

double g0(int n_t, int n_r) {
    if (2 * n_r - n_t <= 0)
        throw std::domain_error("g0: need 2 n_r - n_t > 0");
    return (n_t - 1.0) / (2.0 * n_r - n_t);
}

double approx_mgf(double s, const system_config &cfg) {
    const double rho = cfg.rho();
    const double base = 1.0 - 2.0 * rho * s;
    if (!(base > 0.0))
        throw std::domain_error("approx_mgf: need s < 1/(2 rho)");
    return std::pow(base, -0.5 * (2.0 * cfg.n_r - cfg.n_t + 1.0)) *
           (1.0 + g0(cfg.n_t, cfg.n_r) * s);
}

namespace {

double approx_shape(const system_config &cfg) { return 0.5 * (2.0 * cfg.n_r - cfg.n_t + 1.0); }

// gamma(a, 2 rho) density
double gamma_pdf(double tau, double a, double two_rho) {
    if (tau <= 0.0)
        return (a == 1.0 && tau == 0.0) ? 1.0 / two_rho : 0.0;
    return std::exp((a - 1.0) * std::log(tau) - tau / two_rho - a * std::log(two_rho) -
                    ln_gamma(a));
}

} // namespace

double approx_bracket_zero(const system_config &cfg) {
    if (cfg.n_t == 1)
        return 0.0;
    const double a = approx_shape(cfg);
    const double g = g0(cfg.n_t, cfg.n_r);
    // 1 - g ((a-1)/tau - 1/(2 rho)) = 0
    return (a - 1.0) / (1.0 / g + 0.5 / cfg.rho());
}

double approx_pdf(double tau, const system_config &cfg) {
    if (tau < 0.0)
        throw std::domain_error("approx_pdf: tau must be nonnegative");
    if (2 * cfg.n_r - cfg.n_t + 1 <= 0)
        throw std::domain_error("approx_pdf: need 2 n_r - n_t + 1 > 0");
    const double a = approx_shape(cfg);
    const double two_rho = 2.0 * cfg.rho();
    if (cfg.n_t == 1)
        return gamma_pdf(tau, a, two_rho);
    const double g = g0(cfg.n_t, cfg.n_r);
    if (tau == 0.0) {
        // limit of -g (a-1) tau^{a-2} e^{-tau/(2 rho)} / ((2 rho)^a Gamma(a))
        if (a > 2.0)
            return 0.0;
        if (a == 2.0)
            return -g / (two_rho * two_rho);
        return -std::numeric_limits<double>::max(); // documented sentinel for the -inf limit
    }
    const double bracket = 1.0 - g * ((a - 1.0) / tau - 0.5 / cfg.rho());
    return bracket * gamma_pdf(tau, a, two_rho);
}

double approx_cdf(double tau, const system_config &cfg) {
    if (tau < 0.0)
        throw std::domain_error("approx_cdf: tau must be nonnegative");
    const double a = approx_shape(cfg);
    const double two_rho = 2.0 * cfg.rho();
    const double p = special::reg_lower_incomplete_gamma(a, tau / two_rho);
    if (cfg.n_t == 1)
        return p;
    return p - g0(cfg.n_t, cfg.n_r) * gamma_pdf(tau, a, two_rho);
}

double approx_pdf_clamped(double tau, const system_config &cfg) {
    const double ts = approx_bracket_zero(cfg);
    if (tau < ts)
        return 0.0;
    const double mass = 1.0 - approx_cdf(ts, cfg);
    return std::max(0.0, approx_pdf(tau, cfg)) / mass;
}

double approx_cdf_clamped(double tau, const system_config &cfg) {
    const double ts = approx_bracket_zero(cfg);
    if (tau <= ts)
        return 0.0;
    const double f0 = approx_cdf(ts, cfg);
    return std::min(1.0, std::max(0.0, (approx_cdf(tau, cfg) - f0) / (1.0 - f0)));
}

double approx_quantile(double p, const system_config &cfg) {
    if (!(p >= 0.0) || !(p < 1.0))
        throw std::domain_error("approx_quantile: p must lie in [0, 1)");
    double lo = 0.0, hi = 2.0 * cfg.rho() * (2.0 * cfg.n_r + 2.0);
    while (approx_cdf_clamped(hi, cfg) < p)
        hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (approx_cdf_clamped(mid, cfg) < p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double approx_excess_kurtosis(const system_config &cfg) {
    const double ts = approx_bracket_zero(cfg);
    const double hi = approx_quantile(1.0 - 1e-11, cfg) * 1.5 + 10.0;
    auto moment = [&](int k, double center) {
        auto f = [&](double t) {
            return std::pow(t - center, k) * approx_pdf_clamped(t, cfg);
        };
        auto r = quad::gauss_kronrod(f, ts, hi, 1e-12, 1e-10, 6000);
        return r.value;
    };
    const double m1 = moment(1, 0.0);
    const double v = moment(2, m1);
    const double m4 = moment(4, m1);
    return m4 / (v * v) - 3.0;
}

// ---------------------------------------------------------------------------
// numeric marginalization oracle
// ---------------------------------------------------------------------------

double eig_tail_cutoff(int n_t, int n_r, double tail) {
    // the trace of the interference Wishart matrix is Gamma(n_r (n_t-1), 1)
    // and dominates every eigenvalue
    const double a = std::max(1.0, (double)n_r * (n_t - 1));
    double lo = a, hi = a + 40.0;
    while (1.0 - special::reg_lower_incomplete_gamma(a, hi) > tail)
        hi += 20.0;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (1.0 - special::reg_lower_incomplete_gamma(a, mid) > tail)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

double general_pdf_numeric(double tau, const system_config &cfg, const quad_spec &qs) {
    if (cfg.n_t != 2 && cfg.n_t != 3)
        throw std::domain_error("general_pdf_numeric: restricted to n_t in {2, 3}");
    if (tau < 0.0)
        throw std::domain_error("general_pdf_numeric: tau must be nonnegative");
    if (tau == 0.0)
        return 0.0;
    const double cut = eig_tail_cutoff(cfg.n_t, cfg.n_r, 1e-12);
    if (cfg.n_t == 2) {
        auto f = [&](double lam) {
            if (lam <= 0.0)
                return 0.0;
            series_control ctl;
            ctl.max_terms = 200000;
            const gamma_mixture_params p = gamma_params({lam}, cfg);
            return conditional_pdf(tau, p, ctl) * single_eig_pdf(lam, cfg.n_r);
        };
        auto r = quad::gauss_kronrod(f, 0.0, cut, qs.abs_tol, qs.rel_tol, qs.max_intervals);
        if (!r.converged)
            throw integration_error("general_pdf_numeric: outer quadrature did not converge",
                                    r.value, r.error);
        return r.value;
    }
    // n_t = 3: ordered cone lambda_1 > lambda_2 > 0
    auto outer = [&](double l1) {
        if (l1 <= 0.0)
            return 0.0;
        auto inner = [&](double l2) {
            if (l2 <= 0.0 || l2 >= l1)
                return 0.0;
            series_control ctl;
            ctl.max_terms = 2000000;
            const gamma_mixture_params p = gamma_params({l1, l2}, cfg);
            return conditional_pdf(tau, p, ctl) *
                   wishart_eig_joint_pdf({l1, l2}, cfg.n_t, cfg.n_r);
        };
        auto ri = quad::gauss_kronrod(inner, 0.0, l1, qs.abs_tol / (cut * 8.0), qs.rel_tol,
                                      qs.max_intervals);
        return ri.value;
    };
    auto r = quad::gauss_kronrod(outer, 0.0, cut, qs.abs_tol, qs.rel_tol, qs.max_intervals);
    if (!r.converged)
        throw integration_error("general_pdf_numeric: outer quadrature did not converge",
                                r.value, r.error);
    return r.value;
}

} // namespace wlsinr::dist
