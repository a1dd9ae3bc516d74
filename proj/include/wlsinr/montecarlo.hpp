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
// Seeded, worker-parallel simulation engine: empirical SINR samples,
// empirical SER for the WLMMSE receiver and its strictly linear LMMSE
// baseline under BPSK, empirical outage, KS distances, and histograms.
//
// Determinism contract: realization k always consumes exactly the random
// substream derived from (seed, context, k), so identical configurations
// produce bit-identical results regardless of the worker count.

#ifndef WLSINR_MONTECARLO_HPP
#define WLSINR_MONTECARLO_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wlsinr/metrics.hpp"
#include "wlsinr/mimo.hpp"
#include "wlsinr/rng.hpp"

namespace wlsinr::mc {

struct sim_config {
    mimo::system_config system;
    std::uint64_t seed = 12345;
    long n_realizations = 100000;
    long symbols_per_realization = 1;
    int workers = 0; // 0: hardware concurrency
};

struct histogram {
    std::vector<double> bin_edges; // increasing, size bins+1
    std::vector<long> counts;      // size bins
    std::vector<double> density;   // counts / (n * width)
};

// Freedman-Diaconis binning by default (bins == 0).
histogram make_histogram(const std::vector<double> &samples, int bins = 0);

struct estimate {
    double value = 0.0;
    double std_error = 0.0;
    long n = 0;
};

struct comparison {
    std::string name;
    double simulated = 0.0;
    double analytic = 0.0;
    double tolerance = 0.0; // |simulated - analytic| <= tolerance
    bool pass = false;
};

struct simulation_report {
    sim_config config;
    double wall_seconds = 0.0;
    std::vector<std::pair<std::string, estimate>> estimates;
    std::vector<comparison> verdicts;
    bool all_pass() const {
        for (const auto &v : verdicts)
            if (!v.pass)
                return false;
        return true;
    }
};

// Post-detection SINR samples of stream j over cfg.n_realizations
// independent channel draws (one value per realization).
std::vector<double> empirical_sinr(const sim_config &cfg, int stream_j);

enum class receiver { wlmmse, lmmse };

struct paired_ser_curves {
    metrics::ser_curve wlmmse;
    metrics::ser_curve lmmse;
    std::vector<double> wlmmse_se; // binomial standard errors
    std::vector<double> lmmse_se;
    long decisions_per_point = 0;
};

// BPSK SER over an SNR grid; both receivers are run on identical channel,
// symbol and noise draws (paired samples).
paired_ser_curves empirical_ser_paired(const sim_config &cfg,
                                       const std::vector<double> &rho_grid_db);

// Convenience wrapper returning a single receiver's curve.
metrics::ser_curve empirical_ser(const sim_config &cfg, receiver rx,
                                 const std::vector<double> &rho_grid_db);

// Fraction of samples <= tau_o with a Wilson-interval standard error.
estimate empirical_outage(const std::vector<double> &samples, double tau_o);

// Kolmogorov-Smirnov distance between the empirical CDF of the samples and
// a supplied nondecreasing CDF.
double ks_distance(std::vector<double> samples, const std::function<double(double)> &cdf);

} // namespace wlsinr::mc

#endif // WLSINR_MONTECARLO_HPP
