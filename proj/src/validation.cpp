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

#include "wlsinr/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "wlsinr/curves.hpp"
#include "wlsinr/linalg.hpp"
#include "wlsinr/metrics.hpp"
#include "wlsinr/mimo.hpp"
#include "wlsinr/montecarlo.hpp"
#include "wlsinr/quadrature.hpp"
#include "wlsinr/rng.hpp"
#include "wlsinr/sinr_dist.hpp"
#include "wlsinr/special.hpp"

namespace wlsinr::validation {

namespace {

using mimo::system_config;
using special::series_control;

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

series_control series(double tol, long budget = 500000000) {
    series_control c;
    c.rel_tol = tol;
    c.max_terms = budget;
    return c;
}

// ---- independent special-function oracles (quadrature engines distinct
// ---- from the ones inside the implementations)

double oracle_kummer_m(double a, double b, double x) {
    // Euler integral, scaled by its interior maximum to stay in range
    auto logf = [&](double t, double omt) {
        return x * t + (a - 1.0) * std::log(t) + (b - a - 1.0) * std::log(omt);
    };
    double peak = -1e300;
    for (double t = 1e-6; t < 1.0; t += 1e-3)
        peak = std::max(peak, logf(t, 1.0 - t));
    auto f = [&](double t, double omt) { return std::exp(logf(t, omt) - peak); };
    auto r = quad::tanh_sinh_dist([&](double xa, double xb) { return f(xa, xb); }, 0.0, 1.0,
                                  1e-13);
    const double lnB = std::lgamma(a) + std::lgamma(b - a) - std::lgamma(b);
    return std::exp(std::log(r.value) + peak - lnB);
}

double oracle_tricomi_u_log(double a, double b, double x) {
    auto g = [&](double t) {
        return -x * t + (a - 1.0) * std::log(t) + (b - a - 1.0) * std::log1p(t);
    };
    // peak location from the quadratic stationarity condition
    double tpk = 1.0;
    if (a > 1.0) {
        const double bq = x - (b - 2.0);
        tpk = (-bq + std::sqrt(bq * bq + 4.0 * x * (a - 1.0))) / (2.0 * x);
    }
    const double gpk = g(std::max(tpk, 1e-12));
    double thi = std::max(tpk, 1.0);
    while (g(thi) > gpk - 46.0)
        thi *= 1.5;
    auto fs = [&](double t) { return (t <= 0.0) ? 0.0 : std::exp(g(t) - gpk); };
    const auto lo = quad::tanh_sinh(fs, 0.0, tpk, 1e-13);
    const auto hi = quad::gauss_kronrod(fs, tpk, thi, 1e-14, 1e-12, 8000);
    return gpk + std::log(lo.value + hi.value) - std::lgamma(a);
}

criterion_result run_c1(std::uint64_t seed) {
    criterion_result r;
    r.id = 1;
    r.name = "sinr-dual-path-equality";
    r.tolerance = 1e-8;
    rng::stream rs(seed ^ 0xC1);
    double worst_spec = 0.0, worst_ratio = 0.0;
    long instances = 0;
    while (instances < 1000) {
        for (int n_t = 1; n_t <= 4 && instances < 1000; ++n_t)
            for (int n_r = n_t; n_r <= 6 && instances < 1000; ++n_r)
                for (double rho : {0.5, 1.0, 2.0, 4.0}) {
                    if (instances >= 1000)
                        break;
                    const auto cfg = system_config::from_rho(n_t, n_r, rho);
                    const auto h = mimo::sample_channel(cfg, rs);
                    const int j = (int)(rs.next_u64() % (std::uint64_t)n_t);
                    const double direct = mimo::sinr_direct(h, j, cfg);
                    const double ratio = mimo::sinr_ratio_form(h, j, cfg);
                    const auto pr = mimo::project_channel(h, j);
                    const double spectral = mimo::sinr_spectral(pr.spectrum, pr.h_hat, rho);
                    worst_spec = std::max(worst_spec, std::abs(direct - spectral) / direct);
                    worst_ratio = std::max(worst_ratio, std::abs(direct - ratio) / direct);
                    ++instances;
                }
    }
    r.measured = worst_spec;
    r.extras.emplace_back("worst_ratio_form_gap", worst_ratio);
    r.pass = worst_spec <= 1e-8 && worst_ratio <= 1e-9;
    r.detail = "spectral gap " + curves::format_double(worst_spec) + ", ratio-form gap " +
               curves::format_double(worst_ratio) + " over 1000 instances";
    return r;
}

criterion_result run_c2() {
    criterion_result r;
    r.id = 2;
    r.name = "special-function-oracles";
    r.tolerance = 1e-8;
    double worst_m = 0.0, worst_u = 0.0, worst_tr = 0.0;
    int points = 0;
    for (double a : {0.5, 1.5, 5.0, 20.0, 75.0, 150.0}) {
        for (double db : {0.5, 2.5}) {
            for (double x : {0.25, 2.0, 10.0, 35.0}) {
                const double b = a + db;
                series_control c = series(1e-14, 10000000);
                const double got = special::kummer_m(a, b, x, c);
                const double ref = oracle_kummer_m(a, b, x);
                worst_m = std::max(worst_m, std::abs(got - ref) / std::abs(ref));
                ++points;
            }
        }
    }
    for (double a : {0.5, 1.5, 5.0, 20.0, 75.0, 150.0}) {
        for (double db : {1.5, 0.25}) {
            for (double x : {0.3, 1.0, 5.0}) {
                const double b = a + db;
                series_control c = series(1e-13);
                const double got = special::tricomi_u_log(a, b, x, c);
                const double ref = oracle_tricomi_u_log(a, b, x);
                worst_u = std::max(worst_u, std::abs(std::expm1(got - ref)));
                ++points;
            }
        }
    }
    // Kummer transform identity U(a,b,x) = x^{1-b} U(a-b+1, 2-b, x)
    for (double a : {1.0, 3.0, 10.0, 60.0})
        for (double db : {0.25, 0.75})
            for (double x : {0.1, 1.0, 10.0}) {
                const double b = a + db;
                series_control c1 = series(1e-13), c2 = series(1e-13);
                const double lhs = special::tricomi_u_log(a, b, x, c1);
                const double rhs = (1.0 - b) * std::log(x) +
                                   special::tricomi_u_log(a - b + 1.0, 2.0 - b, x, c2);
                worst_tr = std::max(worst_tr, std::abs(std::expm1(lhs - rhs)));
            }
    r.measured = std::max(worst_m, worst_u);
    r.extras.emplace_back("worst_kummer", worst_m);
    r.extras.emplace_back("worst_tricomi", worst_u);
    r.extras.emplace_back("worst_transform_identity", worst_tr);
    r.pass = worst_m <= 1e-8 && worst_u <= 1e-8 && worst_tr <= 1e-10;
    r.detail = std::to_string(points) + " oracle points, transform identity gap " +
               curves::format_double(worst_tr);
    return r;
}

criterion_result run_c3() {
    criterion_result r;
    r.id = 3;
    r.name = "exact-pdf-normalization";
    r.tolerance = 1e-3;
    double worst2 = 0.0;
    for (int n_r : {2, 3, 4}) {
        for (double db : {0.0, 3.0, 6.0}) {
            const double rho = mimo::db_to_linear(db);
            const auto cfg = system_config::from_rho(2, n_r, rho);
            const double cut = dist::approx_quantile(1.0 - 1e-9, cfg) * 1.6 + 30.0;
            auto f = [&](double tau) {
                series_control c = series(1e-9, 10000000);
                return dist::analytic_pdf_nt2(tau, n_r, rho, c);
            };
            auto q = quad::gauss_kronrod(f, 0.0, cut, 1e-6, 1e-5, 4000);
            worst2 = std::max(worst2, std::abs(q.value - 1.0));
        }
    }
    double gap3 = 0.0;
    {
        const double rho = mimo::db_to_linear(3.0);
        const auto cfg = system_config::from_rho(3, 3, rho);
        // the mass beyond the 1 - 1e-7 quantile is invisible at the 5e-3
        // tolerance; the per-point series tolerance follows the local
        // density scale (closed-form estimate) so the far tail stays cheap
        const double cut = dist::approx_quantile(1.0 - 1e-7, cfg) + 5.0;
        auto f = [&](double tau) {
            const double f_est = std::max(dist::approx_pdf_clamped(tau, cfg), 1e-7);
            const double tol = std::min(0.03, std::max(1e-6, 3e-5 / f_est * 1e-3));
            series_control c = series(tol);
            return dist::analytic_pdf_nt3(tau, 3, rho, c);
        };
        auto q = quad::gauss_kronrod(f, 0.0, cut, 5e-4, 5e-4, 600);
        gap3 = std::abs(q.value - 1.0) + 1e-7; // truncated tail bound
    }
    r.measured = std::max(worst2, gap3);
    r.extras.emplace_back("worst_nt2", worst2);
    r.extras.emplace_back("gap_nt3", gap3);
    r.pass = worst2 <= 1e-3 && gap3 <= 5e-3;
    r.detail = "nt2 worst |mass-1| " + curves::format_double(worst2) + ", nt3 " +
               curves::format_double(gap3) + " (tol 5e-3)";
    return r;
}

criterion_result run_c4() {
    criterion_result r;
    r.id = 4;
    r.name = "series-vs-marginalization-oracle";
    r.tolerance = 1e-6;
    double worst2 = 0.0;
    {
        const auto cfg = system_config::from_snr_db(2, 2, 0.0);
        for (int i = 0; i < 50; ++i) {
            const double tau =
                0.01 * std::pow(40.0 / 0.01, i / 49.0); // log-spaced [0.01, 40]
            series_control c = series(1e-10, 10000000);
            const double fs = dist::analytic_pdf_nt2(tau, 2, cfg.rho(), c);
            const double fo = dist::general_pdf_numeric(tau, cfg);
            worst2 = std::max(worst2, std::abs(fs - fo));
        }
    }
    double worst3 = 0.0;
    {
        const auto cfg = system_config::from_snr_db(3, 3, 3.0);
        for (int i = 0; i < 21; ++i) {
            const double tau = 0.05 * std::pow(30.0 / 0.05, i / 20.0);
            series_control c = series(1e-6);
            const double fs = dist::analytic_pdf_nt3(tau, 3, cfg.rho(), c);
            const double fo = dist::general_pdf_numeric(tau, cfg);
            worst3 = std::max(worst3, std::abs(fs - fo));
        }
    }
    r.measured = worst2;
    r.extras.emplace_back("worst_nt3", worst3);
    r.pass = worst2 <= 1e-6 && worst3 <= 1e-4;
    r.detail = "nt2 worst |series-oracle| " + curves::format_double(worst2) +
               " (tol 1e-6), nt3 " + curves::format_double(worst3) + " (tol 1e-4)";
    return r;
}

// analytic nt2 CDF on a fine grid, linearly interpolated
struct tabulated_cdf {
    std::vector<double> grid, cdf;
    double operator()(double x) const {
        if (x <= grid.front())
            return 0.0;
        if (x >= grid.back())
            return 1.0;
        const auto it = std::upper_bound(grid.begin(), grid.end(), x);
        const std::size_t i = it - grid.begin();
        const double w = (x - grid[i - 1]) / (grid[i] - grid[i - 1]);
        return cdf[i - 1] + w * (cdf[i] - cdf[i - 1]);
    }
};

tabulated_cdf nt2_cdf(int n_r, double rho, double cut) {
    tabulated_cdf t;
    const double step = 0.02;
    double acc = 0.0, prev = 0.0;
    t.grid.push_back(0.0);
    t.cdf.push_back(0.0);
    for (double x = step; x <= cut; x += step) {
        series_control c = series(1e-9, 10000000);
        const double f = dist::analytic_pdf_nt2(x, n_r, rho, c);
        acc += 0.5 * (f + prev) * step;
        prev = f;
        t.grid.push_back(x);
        t.cdf.push_back(std::min(1.0, acc));
    }
    return t;
}

criterion_result run_c5(std::uint64_t seed, int workers, long n_samples) {
    criterion_result r;
    r.id = 5;
    r.name = "empirical-vs-analytic-nt2-ks";
    r.tolerance = 0.01;
    double worst = 0.0;
    for (int n_r : {2, 3, 4}) {
        mc::sim_config cfg;
        cfg.system = system_config::from_snr_db(2, n_r, 0.0);
        cfg.seed = seed + n_r;
        cfg.n_realizations = n_samples;
        cfg.workers = workers;
        const auto samples = mc::empirical_sinr(cfg, 0);
        const double cut = dist::approx_quantile(1.0 - 1e-9, cfg.system) * 2.0 + 40.0;
        const auto cdf = nt2_cdf(n_r, cfg.system.rho(), cut);
        const double d = mc::ks_distance(samples, [&](double x) { return cdf(x); });
        worst = std::max(worst, d);
    }
    r.measured = worst;
    r.extras.emplace_back("n_samples", (double)n_samples);
    r.extras.emplace_back("ks_sampling_floor", 1.36 / std::sqrt((double)n_samples));
    r.pass = worst <= 0.01;
    r.detail = "worst KS over 2x2, 3x2, 4x2 at 0 dB with " + std::to_string(n_samples) +
               " samples";
    return r;
}

criterion_result run_c6(std::uint64_t seed, int workers, long n_samples) {
    criterion_result r;
    r.id = 6;
    r.name = "empirical-vs-approximate-ks";
    r.tolerance = 0.02;
    double worst = 0.0;
    double at_zero_db = 0.0;
    for (double db : {0.0, 3.0, 6.0, 9.0}) {
        mc::sim_config cfg;
        cfg.system = system_config::from_snr_db(2, 2, db);
        cfg.seed = seed + 100 + (int)db;
        cfg.n_realizations = n_samples;
        cfg.workers = workers;
        const auto samples = mc::empirical_sinr(cfg, 0);
        const double d = mc::ks_distance(
            samples, [&](double x) { return dist::approx_cdf_clamped(x, cfg.system); });
        if (db == 0.0)
            at_zero_db = d; // recorded, not gated: the approximation is known
                            // to miss near the peak here
        else
            worst = std::max(worst, d);
    }
    r.measured = worst;
    r.extras.emplace_back("ks_at_0db_recorded", at_zero_db);
    r.pass = worst <= 0.02;
    r.detail = "worst KS at 3/6/9 dB " + curves::format_double(worst) +
               "; 0 dB recorded only: " + curves::format_double(at_zero_db);
    return r;
}

criterion_result run_c7(std::uint64_t seed, long n_draws) {
    criterion_result r;
    r.id = 7;
    r.name = "g0-wishart-inverse-trace";
    r.tolerance = 0.02;
    double worst = 0.0;
    for (auto [n_t, n_r] : std::vector<std::pair<int, int>>{{3, 3}, {4, 6}}) {
        const auto cfg = system_config::from_rho(n_t, n_r, 1.0);
        rng::stream rs(seed ^ (0xC7000 + n_t * 16 + n_r));
        double acc = 0.0;
        const int p = n_t - 1;
        for (long i = 0; i < n_draws; ++i) {
            const auto ht =
                mimo::real_composite(mimo::remove_column(mimo::sample_channel(cfg, rs), 0));
            auto g = linalg::gram_ata(ht);
            // trace of the inverse through p solves
            for (int c = 0; c < p; ++c) {
                linalg::rvec e(p, 0.0);
                e[c] = 1.0;
                acc += linalg::solve_spd(g, e)[c];
            }
        }
        const double mc_value = 0.5 * acc / (double)n_draws;
        const double exact = dist::g0(n_t, n_r);
        worst = std::max(worst, std::abs(mc_value - exact) / exact);
    }
    r.measured = worst;
    r.extras.emplace_back("n_draws", (double)n_draws);
    r.pass = worst <= 0.02;
    r.detail = "worst relative gap of (1/2)E[Tr((Ht' Ht)^{-1})] vs (n_t-1)/(2n_r-n_t)";
    return r;
}

criterion_result run_c8(std::uint64_t seed, long n_draws) {
    criterion_result r;
    r.id = 8;
    r.name = "spectral-tail-term-mean";
    r.tolerance = 0.01;
    const auto cfg = system_config::from_rho(2, 3, 1.0);
    rng::stream rs(seed ^ 0xC8);
    double acc = 0.0, acc2 = 0.0;
    for (long i = 0; i < n_draws; ++i) {
        const auto pr = mimo::project_channel(mimo::sample_channel(cfg, rs), 0);
        double tail = 0.0;
        for (std::size_t k = pr.spectrum.size(); k < pr.h_hat.size(); ++k)
            tail += pr.h_hat[k] * pr.h_hat[k];
        const double v = 2.0 * cfg.rho() * tail;
        acc += v;
        acc2 += v * v;
    }
    const double mean = acc / (double)n_draws;
    const double var = acc2 / (double)n_draws - mean * mean;
    const double expected = cfg.rho() * (2.0 * cfg.n_r - cfg.n_t + 1.0); // 5
    r.measured = std::abs(mean - expected) / expected;
    r.extras.emplace_back("std_error", std::sqrt(var / (double)n_draws));
    r.extras.emplace_back("n_draws", (double)n_draws);
    r.pass = r.measured <= 0.01;
    r.detail = "sample mean " + curves::format_double(mean) + " vs " +
               curves::format_double(expected);
    return r;
}

criterion_result run_c9(std::uint64_t seed, int workers, long scale) {
    criterion_result r;
    r.id = 9;
    r.name = "ser-closed-form-vs-empirical";
    r.tolerance = 0.15;
    std::vector<double> grid;
    for (double db = 0.0; db <= 15.0; db += 1.0)
        grid.push_back(db);
    double worst_rel = 0.0;
    bool paired_ok = true;
    long min_decisions = -1;
    std::string per_config;
    for (auto [n_t, n_r] : std::vector<std::pair<int, int>>{{2, 2}, {2, 4}, {4, 6}}) {
        mc::sim_config cfg;
        cfg.system = system_config::from_rho(n_t, n_r, 1.0);
        cfg.seed = seed + 900 + n_t * 10 + n_r;
        cfg.workers = workers;
        // 4e6+ decisions per point: the statistical error stays well below
        // the 15% bar even at the SER = 1e-4 edge
        cfg.n_realizations = 8000 * scale;
        cfg.symbols_per_realization = (4000000 / (cfg.n_realizations * n_t)) + 1;
        const auto curves_pair = mc::empirical_ser_paired(cfg, grid);
        min_decisions = (min_decisions < 0)
                            ? curves_pair.decisions_per_point
                            : std::min(min_decisions, curves_pair.decisions_per_point);
        double cfg_worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double closed =
                metrics::ser_closed_form(mimo::db_to_linear(grid[i]), n_t, n_r);
            if (closed >= 1e-4 && curves_pair.wlmmse.ser[i] > 0.0) {
                cfg_worst = std::max(cfg_worst,
                                     std::abs(curves_pair.wlmmse.ser[i] - closed) / closed);
            }
            if (curves_pair.wlmmse.ser[i] >
                curves_pair.lmmse.ser[i] + 3.0 * curves_pair.lmmse_se[i])
                paired_ok = false;
        }
        worst_rel = std::max(worst_rel, cfg_worst);
        per_config += std::to_string(n_r) + "x" + std::to_string(n_t) + ": " +
                      curves::format_double(cfg_worst) + "; ";
        r.extras.emplace_back("worst_" + std::to_string(n_r) + "x" + std::to_string(n_t),
                              cfg_worst);
    }
    r.measured = worst_rel;
    r.extras.emplace_back("min_decisions_per_point", (double)min_decisions);
    r.pass = worst_rel <= 0.15 && paired_ok && min_decisions >= 1000000;
    r.detail = "worst |empirical-closed|/closed where closed SER >= 1e-4 (" + per_config +
               std::string("paired WL<=L+3SE ") + (paired_ok ? "held" : "violated") + ")";
    return r;
}

criterion_result run_c10() {
    criterion_result r;
    r.id = 10;
    r.name = "diversity-gains";
    r.tolerance = 0.10;
    auto closed_curve = [](int n_t, int n_r) {
        metrics::ser_curve c;
        for (double db = 20.0; db <= 30.0; db += 1.0) {
            c.snr_db.push_back(db);
            c.ser.push_back(metrics::ser_closed_form(mimo::db_to_linear(db), n_t, n_r));
        }
        return c;
    };
    double worst = 0.0;
    for (auto [n_r, n_t, d] :
         std::vector<std::tuple<int, int, double>>{{2, 2, 1.5}, {6, 2, 5.5}, {6, 4, 4.5}}) {
        const double fit = metrics::diversity_slope_fit(closed_curve(n_t, n_r), 20.0, 30.0);
        worst = std::max(worst, std::abs(fit - d) / d);
    }
    bool delta_exact = true;
    for (int n_t = 1; n_t <= 16; ++n_t)
        if (metrics::diversity_delta(n_t) != 0.5 * (n_t - 1.0))
            delta_exact = false;
    r.measured = worst;
    r.pass = worst <= 0.10 && delta_exact;
    r.detail = std::string("worst slope-fit relative gap; diversity delta ") +
               (delta_exact ? "exact" : "broken") + " over n_t = 1..16";
    return r;
}

criterion_result run_c11() {
    criterion_result r;
    r.id = 11;
    r.name = "series-term-ratio-limit";
    r.tolerance = 1e-3;
    const double ratio = dist::nt2_term_ratio(500, 1.0, 2, 1.0);
    r.measured = std::abs(ratio - 0.5);
    r.pass = r.measured <= 1e-3;
    r.detail = "A(501)/A(500) = " + curves::format_double(ratio) + " vs limit 0.5";
    return r;
}

criterion_result run_c12(const report &partial, std::uint64_t seed) {
    criterion_result r;
    r.id = 12;
    r.name = "determinism";
    r.tolerance = 0.0;
    // report body serialization is a pure function of the results
    const std::string b1 = report_body_json(partial);
    const std::string b2 = report_body_json(partial);
    bool ok = (b1 == b2);
    // the stochastic kernels are bit-identical under seed replay and under
    // a different worker count
    mc::sim_config cfg;
    cfg.system = system_config::from_snr_db(2, 2, 3.0);
    cfg.seed = seed;
    cfg.n_realizations = 10000;
    cfg.workers = 1;
    const auto s1 = mc::empirical_sinr(cfg, 0);
    cfg.workers = 2;
    const auto s2 = mc::empirical_sinr(cfg, 0);
    ok = ok && (s1 == s2);
    cfg.n_realizations = 200;
    cfg.symbols_per_realization = 50;
    const auto e1 = mc::empirical_ser_paired(cfg, {3.0});
    cfg.workers = 1;
    const auto e2 = mc::empirical_ser_paired(cfg, {3.0});
    ok = ok && (e1.wlmmse.ser == e2.wlmmse.ser) && (e1.lmmse.ser == e2.lmmse.ser);
    r.measured = ok ? 0.0 : 1.0;
    r.pass = ok;
    r.detail = "report body and stochastic kernels bit-identical across replays and workers";
    return r;
}

} // namespace

report run_all(const std::string &profile, std::uint64_t seed, int workers) {
    report rep;
    rep.profile = profile;
    rep.seed = seed;
    rep.workers = workers;
    const bool full = (profile == "full");
    const long mc_samples = full ? 800000 : 100000; // full vs desk scale
    const long mc_draws = full ? 400000 : 100000;
    const long ser_scale = full ? 4 : 1;

    auto timed = [&](auto &&fn) {
        const double t0 = now_seconds();
        criterion_result r = fn();
        r.seconds = now_seconds() - t0;
        rep.results.push_back(std::move(r));
    };
    timed([&] { return run_c1(seed); });
    timed([&] { return run_c2(); });
    timed([&] { return run_c3(); });
    timed([&] { return run_c4(); });
    timed([&] { return run_c5(seed, workers, mc_samples); });
    timed([&] { return run_c6(seed, workers, mc_samples); });
    timed([&] { return run_c7(seed, mc_draws); });
    timed([&] { return run_c8(seed, mc_draws); });
    timed([&] { return run_c9(seed, workers, ser_scale); });
    timed([&] { return run_c10(); });
    timed([&] { return run_c11(); });
    timed([&] { return run_c12(rep, seed); });
    return rep;
}

std::string report_body_json(const report &r) {
    nlohmann::json j;
    j["profile"] = r.profile;
    j["seed"] = r.seed;
    j["workers"] = r.workers;
    j["all_pass"] = r.all_pass();
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &c : r.results) {
        nlohmann::json e;
        e["id"] = c.id;
        e["name"] = c.name;
        e["pass"] = c.pass;
        e["recorded_only"] = c.recorded_only;
        e["measured"] = c.measured;
        e["tolerance"] = c.tolerance;
        e["detail"] = c.detail;
        nlohmann::json ex = nlohmann::json::object();
        for (const auto &[k, v] : c.extras)
            ex[k] = v;
        e["extras"] = ex;
        arr.push_back(e);
    }
    j["criteria"] = arr;
    return j.dump(2) + "\n";
}

std::string format_line(const criterion_result &r) {
    std::ostringstream os;
    os << (r.pass ? "PASS" : (r.recorded_only ? "INFO" : "FAIL")) << "  " << r.id << "  "
       << r.name << ": measured " << curves::format_double(r.measured) << " (tolerance "
       << curves::format_double(r.tolerance) << ") [" << r.detail << "] "
       << curves::format_double(r.seconds) << "s";
    return os.str();
}

} // namespace wlsinr::validation
