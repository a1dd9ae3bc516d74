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

#include "wlsinr/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "wlsinr/linalg.hpp"

namespace wlsinr::mc {

namespace {

int resolve_workers(int workers) {
    if (workers > 0)
        return workers;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? (int)hc : 2;
}

// run fn(k) for k in [0, n) across workers; fn must only write to
// k-indexed slots
void parallel_for(long n, int workers, const std::function<void(long)> &fn) {
    workers = std::min<long>(resolve_workers(workers), std::max<long>(1, n));
    if (workers <= 1) {
        for (long k = 0; k < n; ++k)
            fn(k);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const long chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const long lo = w * chunk;
        const long hi = std::min(n, lo + chunk);
        if (lo >= hi)
            break;
        pool.emplace_back([lo, hi, &fn] {
            for (long k = lo; k < hi; ++k)
                fn(k);
        });
    }
    for (auto &t : pool)
        t.join();
}

// distinct substream families for the different experiments
constexpr std::uint64_t kSaltSinr = 0x53494e52ULL; // "SINR"
constexpr std::uint64_t kSaltSer = 0x534552ULL;    // "SER"

std::uint64_t salted_seed(std::uint64_t seed, std::uint64_t salt, std::uint64_t point) {
    std::uint64_t st = seed ^ (salt * 0x9e3779b97f4a7c15ULL);
    rng::splitmix64(st);
    st += point * 0xd1342543de82ef95ULL;
    return rng::splitmix64(st);
}

} // namespace

histogram make_histogram(const std::vector<double> &samples, int bins) {
    if (samples.empty())
        throw std::domain_error("make_histogram: empty sample set");
    std::vector<double> sorted(samples);
    std::sort(sorted.begin(), sorted.end());
    const double lo = sorted.front(), hi = sorted.back();
    const long n = (long)sorted.size();
    if (bins <= 0) {
        const double q1 = sorted[(std::size_t)(0.25 * (n - 1))];
        const double q3 = sorted[(std::size_t)(0.75 * (n - 1))];
        const double iqr = std::max(q3 - q1, 1e-12 * std::max(1.0, std::abs(hi)));
        const double width = 2.0 * iqr / std::cbrt((double)n);
        bins = (int)std::ceil((hi - lo) / width);
        bins = std::max(1, std::min(bins, 100000));
    }
    histogram h;
    const double span = (hi > lo) ? (hi - lo) : 1.0;
    h.bin_edges.resize(bins + 1);
    for (int b = 0; b <= bins; ++b)
        h.bin_edges[b] = lo + span * b / bins;
    h.counts.assign(bins, 0);
    for (double v : sorted) {
        int b = (int)((v - lo) / span * bins);
        b = std::max(0, std::min(bins - 1, b));
        ++h.counts[b];
    }
    h.density.resize(bins);
    for (int b = 0; b < bins; ++b)
        h.density[b] = h.counts[b] / ((double)n * (h.bin_edges[b + 1] - h.bin_edges[b]));
    return h;
}

std::vector<double> empirical_sinr(const sim_config &cfg, int stream_j) {
    if (stream_j < 0 || stream_j >= cfg.system.n_t)
        throw std::domain_error("empirical_sinr: stream index out of range");
    std::vector<double> samples(cfg.n_realizations);
    const std::uint64_t seed = salted_seed(cfg.seed, kSaltSinr, 0);
    parallel_for(cfg.n_realizations, cfg.workers, [&](long k) {
        rng::stream rs = rng::stream::substream(seed, (std::uint64_t)k);
        const auto h = mimo::sample_channel(cfg.system, rs);
        samples[k] = mimo::sinr_direct(h, stream_j, cfg.system);
    });
    return samples;
}

paired_ser_curves empirical_ser_paired(const sim_config &cfg,
                                       const std::vector<double> &rho_grid_db) {
    const int n_t = cfg.system.n_t, n_r = cfg.system.n_r;
    const double amp = std::sqrt(cfg.system.e_s / n_t); // BPSK amplitude per stream
    paired_ser_curves out;
    out.decisions_per_point = cfg.n_realizations * cfg.symbols_per_realization * n_t;
    out.wlmmse.method = metrics::ser_method::empirical;
    out.lmmse.method = metrics::ser_method::empirical;

    for (std::size_t pi = 0; pi < rho_grid_db.size(); ++pi) {
        const double rho = mimo::db_to_linear(rho_grid_db[pi]);
        auto sys = mimo::system_config::from_rho(n_t, n_r, rho);
        sys.e_s = cfg.system.e_s;
        sys.sigma2 = sys.e_s / (rho * n_t);
        const std::uint64_t seed = salted_seed(cfg.seed, kSaltSer, pi);
        std::vector<long> err_wl(cfg.n_realizations, 0), err_lin(cfg.n_realizations, 0);

        parallel_for(cfg.n_realizations, cfg.workers, [&](long k) {
            rng::stream rs = rng::stream::substream(seed, (std::uint64_t)k);
            const auto h = mimo::sample_channel(sys, rs);
            const double p = sys.e_s / n_t;

            // WLMMSE filter rows: (Es/Nt) Hbar^H ((Es/Nt) Hbar Hbar^H + s2 I)^{-1}
            const auto hb = mimo::augment(h);
            linalg::cmat rw = linalg::gram_aah(hb);
            for (int i = 0; i < 2 * n_r; ++i) {
                for (int j = 0; j < 2 * n_r; ++j)
                    rw(i, j) *= p;
                rw(i, i) += sys.sigma2;
            }
            // filters as the solutions of R z_j = hbar_j
            std::vector<linalg::cvec> fw(n_t);
            for (int j = 0; j < n_t; ++j) {
                linalg::cvec hj(2 * n_r);
                for (int i = 0; i < n_r; ++i) {
                    hj[i] = h(i, j);
                    hj[n_r + i] = std::conj(h(i, j));
                }
                fw[j] = linalg::solve_hermitian_pd(rw, hj);
            }
            // strictly linear filter: (Es/Nt) h_j^H ((Es/Nt) H H^H + s2 I)^{-1}
            linalg::cmat rl = linalg::gram_aah(h);
            for (int i = 0; i < n_r; ++i) {
                for (int j = 0; j < n_r; ++j)
                    rl(i, j) *= p;
                rl(i, i) += sys.sigma2;
            }
            std::vector<linalg::cvec> fl(n_t);
            for (int j = 0; j < n_t; ++j) {
                linalg::cvec hj(n_r);
                for (int i = 0; i < n_r; ++i)
                    hj[i] = h(i, j);
                fl[j] = linalg::solve_hermitian_pd(rl, hj);
            }

            long ew = 0, el = 0;
            std::vector<double> x(n_t);
            linalg::cvec y(n_r);
            for (long sidx = 0; sidx < cfg.symbols_per_realization; ++sidx) {
                for (int j = 0; j < n_t; ++j)
                    x[j] = rs.next_bit() ? amp : -amp;
                for (int i = 0; i < n_r; ++i) {
                    linalg::cplx acc = rs.next_cgauss(sys.sigma2);
                    for (int j = 0; j < n_t; ++j)
                        acc += h(i, j) * x[j];
                    y[i] = acc;
                }
                for (int j = 0; j < n_t; ++j) {
                    // widely linear estimate: real part of f^H ybar
                    double est_w = 0.0;
                    for (int i = 0; i < n_r; ++i) {
                        est_w += (std::conj(fw[j][i]) * y[i]).real();
                        est_w += (std::conj(fw[j][n_r + i]) * std::conj(y[i])).real();
                    }
                    if ((est_w >= 0.0) != (x[j] >= 0.0))
                        ++ew;
                    // strictly linear estimate: decision on the real part
                    linalg::cplx est_l{};
                    for (int i = 0; i < n_r; ++i)
                        est_l += std::conj(fl[j][i]) * y[i];
                    if ((est_l.real() >= 0.0) != (x[j] >= 0.0))
                        ++el;
                }
            }
            err_wl[k] = ew;
            err_lin[k] = el;
        });

        long tw = 0, tl = 0;
        for (long k = 0; k < cfg.n_realizations; ++k) {
            tw += err_wl[k];
            tl += err_lin[k];
        }
        const double n = (double)out.decisions_per_point;
        const double pw = tw / n, pl = tl / n;
        // errors cluster within channel realizations, so the standard error
        // comes from the across-realization variance, floored by binomial
        auto clustered_se = [&](const std::vector<long> &err, double p) {
            const double r_count = (double)cfg.n_realizations;
            const double mean = (double)(p * n) / r_count;
            double var = 0.0;
            for (long k = 0; k < cfg.n_realizations; ++k) {
                const double d = err[k] - mean;
                var += d * d;
            }
            var /= std::max(1.0, r_count - 1.0);
            const double se_cluster = std::sqrt(var / r_count) * r_count / n;
            const double se_binom = std::sqrt(std::max(p * (1.0 - p), 1.0 / n) / n);
            return std::max(se_cluster, se_binom);
        };
        out.wlmmse.snr_db.push_back(rho_grid_db[pi]);
        out.wlmmse.ser.push_back(pw);
        out.wlmmse_se.push_back(clustered_se(err_wl, pw));
        out.lmmse.snr_db.push_back(rho_grid_db[pi]);
        out.lmmse.ser.push_back(pl);
        out.lmmse_se.push_back(clustered_se(err_lin, pl));
    }
    return out;
}

metrics::ser_curve empirical_ser(const sim_config &cfg, receiver rx,
                                 const std::vector<double> &rho_grid_db) {
    auto pair = empirical_ser_paired(cfg, rho_grid_db);
    return rx == receiver::wlmmse ? pair.wlmmse : pair.lmmse;
}

estimate empirical_outage(const std::vector<double> &samples, double tau_o) {
    if (samples.empty())
        throw std::domain_error("empirical_outage: empty sample set");
    long hits = 0;
    for (double v : samples)
        if (v <= tau_o)
            ++hits;
    const double n = (double)samples.size();
    const double p = hits / n;
    // Wilson interval half-width at one sigma
    const double z = 1.0;
    const double denom = 1.0 + z * z / n;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
    estimate e;
    e.value = p;
    e.std_error = half;
    e.n = (long)samples.size();
    return e;
}

double ks_distance(std::vector<double> samples, const std::function<double(double)> &cdf) {
    if (samples.empty())
        throw std::domain_error("ks_distance: empty sample set");
    std::sort(samples.begin(), samples.end());
    const double n = (double)samples.size();
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs(f - (i + 1) / n));
        d = std::max(d, std::abs(f - i / n));
    }
    return d;
}

} // namespace wlsinr::mc
