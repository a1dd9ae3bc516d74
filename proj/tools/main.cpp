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
// Command-line front end. Subcommands: pdf, outage, ser, diversity,
// validate. Curve outputs are CSV (UTF-8, '\n', locale-independent); every
// output references a JSON manifest written alongside it.
//
// Exit codes: 0 success, 1 validation failure, 2 usage error, 3 numeric
// failure.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "wlsinr/curves.hpp"
#include "wlsinr/errors.hpp"
#include "wlsinr/metrics.hpp"
#include "wlsinr/mimo.hpp"
#include "wlsinr/montecarlo.hpp"
#include "wlsinr/rng.hpp"
#include "wlsinr/sinr_dist.hpp"
#include "wlsinr/special.hpp"
#include "wlsinr/validation.hpp"

namespace {

constexpr const char *kVersion = "0.1.0";

using wlsinr::curves::format_double;
using wlsinr::curves::run_manifest;
using wlsinr::mimo::system_config;
using wlsinr::special::series_control;

std::string timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

std::uint64_t default_seed() {
    if (const char *env = std::getenv("WLSINR_SEED"))
        return std::strtoull(env, nullptr, 10);
    return 12345;
}

struct snr_range {
    double start = 0.0, step = 1.0, stop = 15.0;
    std::vector<double> grid() const {
        std::vector<double> g;
        for (double v = start; v <= stop + 1e-9; v += step)
            g.push_back(v);
        return g;
    }
};

snr_range parse_range(const std::string &s) {
    snr_range r;
    char c1, c2;
    std::istringstream is(s);
    if (!(is >> r.start >> c1 >> r.step >> c2 >> r.stop) || c1 != ':' || c2 != ':' ||
        r.step <= 0.0 || r.stop < r.start)
        throw CLI::ValidationError("--snr-db-range", "expected start:step:stop with step > 0");
    return r;
}

void write_manifest(run_manifest &m, const std::string &out_path) {
    m.version = kVersion;
    m.timestamp = timestamp_now();
    const std::string path = out_path + ".manifest.json";
    m.outputs.push_back(out_path);
    wlsinr::curves::write_text_file(path, wlsinr::curves::manifest_to_json(m));
}

series_control pdf_series_control(int n_t, double tol) {
    series_control c;
    c.rel_tol = tol;
    c.max_terms = (n_t == 3) ? 500000000 : 10000000;
    return c;
}

int cmd_pdf(int n_t, int n_r, double snr_db, const std::vector<std::string> &modes,
            int grid_n, double grid_min, double grid_max, long samples, std::uint64_t seed,
            double tol, int workers, const std::string &out) {
    const auto cfg = system_config::from_snr_db(n_t, n_r, snr_db);
    std::vector<double> grid;
    if (grid_n > 0) {
        if (grid_max <= grid_min || grid_min < 0.0)
            throw CLI::ValidationError("--grid", "need 0 <= min < max");
        for (int i = 0; i < grid_n; ++i)
            grid.push_back(grid_min + (grid_max - grid_min) * i / (grid_n - 1.0));
    } else {
        grid = wlsinr::curves::default_tau_grid(cfg);
    }

    std::vector<wlsinr::curves::distribution_curve> produced;
    for (const auto &mode : modes) {
        wlsinr::curves::distribution_curve cur;
        cur.config = cfg;
        cur.tolerance = tol;
        if (mode == "analytic") {
            if (n_t != 2 && n_t != 3)
                throw CLI::ValidationError("--mode", "analytic mode requires nt in {2, 3}");
            cur.kind = (n_t == 2) ? wlsinr::curves::curve_kind::analytic_nt2
                                  : wlsinr::curves::curve_kind::analytic_nt3;
            for (double tau : grid) {
                series_control c = pdf_series_control(n_t, tol);
                const double v = (n_t == 2)
                                     ? wlsinr::dist::analytic_pdf_nt2(tau, n_r, cfg.rho(), c)
                                     : wlsinr::dist::analytic_pdf_nt3(tau, n_r, cfg.rho(), c);
                cur.grid.push_back(tau);
                cur.values.push_back(v);
            }
        } else if (mode == "approx") {
            cur.kind = wlsinr::curves::curve_kind::approximate;
            for (double tau : grid) {
                cur.grid.push_back(tau);
                cur.values.push_back(wlsinr::dist::approx_pdf(tau, cfg));
            }
        } else if (mode == "numeric") {
            if (n_t != 2 && n_t != 3)
                throw CLI::ValidationError("--mode", "numeric mode requires nt in {2, 3}");
            cur.kind = wlsinr::curves::curve_kind::numeric_oracle;
            for (double tau : grid) {
                cur.grid.push_back(tau);
                cur.values.push_back(wlsinr::dist::general_pdf_numeric(tau, cfg));
            }
        } else if (mode == "empirical") {
            if (samples <= 0)
                throw CLI::ValidationError("--samples",
                                           "empirical mode requires --samples > 0");
            cur.kind = wlsinr::curves::curve_kind::empirical;
            wlsinr::mc::sim_config sc;
            sc.system = cfg;
            sc.seed = seed;
            sc.n_realizations = samples;
            sc.workers = workers;
            const auto draws = wlsinr::mc::empirical_sinr(sc, 0);
            const auto hist = wlsinr::mc::make_histogram(draws);
            for (std::size_t b = 0; b < hist.counts.size(); ++b) {
                cur.grid.push_back(0.5 * (hist.bin_edges[b] + hist.bin_edges[b + 1]));
                cur.values.push_back(hist.density[b]);
            }
        } else {
            throw CLI::ValidationError("--mode", "unknown mode '" + mode + "'");
        }
        cur.validate();
        produced.push_back(std::move(cur));
    }
    std::vector<double> tau_col, val_col;
    std::vector<std::string> kind_col;
    for (const auto &cur : produced)
        for (std::size_t i = 0; i < cur.grid.size(); ++i) {
            tau_col.push_back(cur.grid[i]);
            val_col.push_back(cur.values[i]);
            kind_col.push_back(wlsinr::curves::to_string(cur.kind));
        }

    run_manifest m;
    m.command = "pdf";
    m.seed = seed;
    m.params = {{"nt", std::to_string(n_t)},
                {"nr", std::to_string(n_r)},
                {"snr_db", format_double(snr_db)},
                {"rho", format_double(cfg.rho())},
                {"modes", [&] {
                     std::string s;
                     for (const auto &md : modes)
                         s += (s.empty() ? "" : "+") + md;
                     return s;
                 }()},
                {"grid_points", std::to_string(grid.size())},
                {"samples", std::to_string(samples)},
                {"tol", format_double(tol)}};
    write_manifest(m, out);
    if (modes.size() > 1) {
        wlsinr::curves::write_csv(out, out + ".manifest.json",
                                  {{"tau", tau_col}, {"density", val_col}}, &kind_col, "kind");
    } else {
        wlsinr::curves::write_csv(out, out + ".manifest.json",
                                  {{"tau", tau_col}, {"density", val_col}});
    }
    return 0;
}

int cmd_outage(int n_t, int n_r, const snr_range &range, double threshold,
               const std::vector<std::string> &methods, long samples, std::uint64_t seed,
               int workers, const std::string &out) {
    const auto grid = range.grid();
    std::vector<std::pair<std::string, std::vector<double>>> cols;
    cols.emplace_back("snr_db", grid);
    for (const auto &method : methods) {
        if (method == "closed") {
            std::vector<double> v;
            for (double db : grid)
                v.push_back(wlsinr::metrics::outage_probability(
                    threshold, system_config::from_snr_db(n_t, n_r, db)));
            cols.emplace_back("closed", v);
        } else if (method == "empirical") {
            std::vector<double> v, se;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                wlsinr::mc::sim_config sc;
                sc.system = system_config::from_snr_db(n_t, n_r, grid[i]);
                sc.seed = seed + i;
                sc.n_realizations = samples > 0 ? samples : 100000;
                sc.workers = workers;
                const auto draws = wlsinr::mc::empirical_sinr(sc, 0);
                const auto est = wlsinr::mc::empirical_outage(draws, threshold);
                v.push_back(est.value);
                se.push_back(est.std_error);
            }
            cols.emplace_back("empirical", v);
            cols.emplace_back("empirical_se", se);
        } else {
            throw CLI::ValidationError("--methods", "unknown outage method '" + method + "'");
        }
    }
    run_manifest m;
    m.command = "outage";
    m.seed = seed;
    m.params = {{"nt", std::to_string(n_t)},
                {"nr", std::to_string(n_r)},
                {"snr_db_range", format_double(range.start) + ":" + format_double(range.step) +
                                     ":" + format_double(range.stop)},
                {"threshold", format_double(threshold)},
                {"samples", std::to_string(samples)}};
    write_manifest(m, out);
    wlsinr::curves::write_csv(out, out + ".manifest.json", cols);
    return 0;
}

int cmd_ser(int n_t, int n_r, const snr_range &range, const std::vector<std::string> &methods,
            long realizations, long symbols, long n_spectra, std::uint64_t seed, int workers,
            const std::string &out) {
    const auto grid = range.grid();
    std::vector<std::pair<std::string, std::vector<double>>> cols;
    cols.emplace_back("snr_db", grid);
    for (const auto &method : methods) {
        if (method == "closed") {
            std::vector<double> v;
            for (double db : grid)
                v.push_back(
                    wlsinr::metrics::ser_closed_form(wlsinr::mimo::db_to_linear(db), n_t, n_r));
            cols.emplace_back("closed", v);
        } else if (method == "mgf") {
            std::vector<double> v;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                wlsinr::rng::stream rs(seed + 7000 + i);
                v.push_back(wlsinr::metrics::ser_via_mgf(
                    wlsinr::mimo::db_to_linear(grid[i]), n_t, n_r, (int)n_spectra, rs));
            }
            cols.emplace_back("mgf", v);
        } else if (method == "empirical") {
            wlsinr::mc::sim_config sc;
            sc.system = system_config::from_rho(n_t, n_r, 1.0);
            sc.seed = seed;
            sc.n_realizations = realizations;
            sc.symbols_per_realization = symbols;
            sc.workers = workers;
            const double t0 = std::chrono::duration<double>(
                                  std::chrono::steady_clock::now().time_since_epoch())
                                  .count();
            const auto pair = wlsinr::mc::empirical_ser_paired(sc, grid);
            const double t1 = std::chrono::duration<double>(
                                  std::chrono::steady_clock::now().time_since_epoch())
                                  .count();
            cols.emplace_back("empirical_wlmmse", pair.wlmmse.ser);
            cols.emplace_back("empirical_wlmmse_se", pair.wlmmse_se);
            cols.emplace_back("empirical_lmmse", pair.lmmse.ser);
            cols.emplace_back("empirical_lmmse_se", pair.lmmse_se);
            // simulation report: estimates with standard errors plus
            // closed-form comparison verdicts
            wlsinr::mc::simulation_report rep;
            rep.config = sc;
            rep.wall_seconds = t1 - t0;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                wlsinr::mc::estimate e;
                e.value = pair.wlmmse.ser[i];
                e.std_error = pair.wlmmse_se[i];
                e.n = pair.decisions_per_point;
                rep.estimates.emplace_back("ser_wlmmse@" + format_double(grid[i]) + "dB", e);
                wlsinr::mc::comparison cmp;
                cmp.name = "wlmmse_vs_closed@" + format_double(grid[i]) + "dB";
                cmp.simulated = pair.wlmmse.ser[i];
                cmp.analytic = wlsinr::metrics::ser_closed_form(
                    wlsinr::mimo::db_to_linear(grid[i]), n_t, n_r);
                cmp.tolerance = std::max(0.15 * cmp.analytic, 4.0 * pair.wlmmse_se[i]);
                cmp.pass = std::abs(cmp.simulated - cmp.analytic) <= cmp.tolerance;
                rep.verdicts.push_back(cmp);
            }
            nlohmann::json rj;
            rj["seed"] = rep.config.seed;
            rj["realizations"] = rep.config.n_realizations;
            rj["symbols_per_realization"] = rep.config.symbols_per_realization;
            rj["workers"] = rep.config.workers;
            rj["decisions_per_point"] = pair.decisions_per_point;
            rj["wall_seconds"] = rep.wall_seconds;
            nlohmann::json est = nlohmann::json::array();
            for (const auto &[name, e] : rep.estimates)
                est.push_back({{"name", name},
                               {"value", e.value},
                               {"std_error", e.std_error},
                               {"n", e.n}});
            rj["estimates"] = est;
            nlohmann::json ver = nlohmann::json::array();
            for (const auto &v : rep.verdicts)
                ver.push_back({{"name", v.name},
                               {"simulated", v.simulated},
                               {"analytic", v.analytic},
                               {"tolerance", v.tolerance},
                               {"pass", v.pass}});
            rj["verdicts"] = ver;
            rj["all_pass"] = rep.all_pass();
            wlsinr::curves::write_text_file(out + ".report.json", rj.dump(2) + "\n");
        } else {
            throw CLI::ValidationError("--methods", "unknown ser method '" + method + "'");
        }
    }
    run_manifest m;
    m.command = "ser";
    m.seed = seed;
    m.params = {{"nt", std::to_string(n_t)},
                {"nr", std::to_string(n_r)},
                {"snr_db_range", format_double(range.start) + ":" + format_double(range.step) +
                                     ":" + format_double(range.stop)},
                {"realizations", std::to_string(realizations)},
                {"symbols", std::to_string(symbols)},
                {"n_spectra", std::to_string(n_spectra)}};
    write_manifest(m, out);
    wlsinr::curves::write_csv(out, out + ".manifest.json", cols);
    return 0;
}

int cmd_diversity(int n_t, int n_r, const snr_range &range, std::uint64_t seed,
                  const std::string &out) {
    const auto grid = range.grid();
    wlsinr::metrics::ser_curve curve;
    for (double db : grid) {
        curve.snr_db.push_back(db);
        curve.ser.push_back(
            wlsinr::metrics::ser_closed_form(wlsinr::mimo::db_to_linear(db), n_t, n_r));
    }
    const double fit =
        wlsinr::metrics::diversity_slope_fit(curve, range.start, range.stop);
    const double d_wl = wlsinr::metrics::diversity_gain_wl(n_t, n_r);
    const double d_l = wlsinr::metrics::diversity_gain_lmmse(n_t, n_r);
    const double d_delta = wlsinr::metrics::diversity_delta(n_t);

    std::vector<std::pair<std::string, std::vector<double>>> cols;
    cols.emplace_back("snr_db", grid);
    cols.emplace_back("ser_closed", curve.ser);
    cols.emplace_back("fitted_slope", std::vector<double>(grid.size(), fit));
    cols.emplace_back("diversity_wl", std::vector<double>(grid.size(), d_wl));
    cols.emplace_back("diversity_lmmse", std::vector<double>(grid.size(), d_l));
    cols.emplace_back("diversity_delta", std::vector<double>(grid.size(), d_delta));

    run_manifest m;
    m.command = "diversity";
    m.seed = seed;
    m.params = {{"nt", std::to_string(n_t)},
                {"nr", std::to_string(n_r)},
                {"snr_db_range", format_double(range.start) + ":" + format_double(range.step) +
                                     ":" + format_double(range.stop)},
                {"fitted_slope", format_double(fit)}};
    write_manifest(m, out);
    wlsinr::curves::write_csv(out, out + ".manifest.json", cols);
    return 0;
}

int cmd_validate(const std::string &profile, std::uint64_t seed, int workers,
                 const std::string &out) {
    const auto rep = wlsinr::validation::run_all(profile, seed, workers);
    for (const auto &r : rep.results)
        std::printf("%s\n", wlsinr::validation::format_line(r).c_str());
    const std::string body = wlsinr::validation::report_body_json(rep);
    if (!out.empty()) {
        wlsinr::curves::write_text_file(out, body);
        run_manifest m;
        m.command = "validate";
        m.seed = seed;
        m.params = {{"profile", profile}, {"workers", std::to_string(workers)}};
        write_manifest(m, out);
    }
    std::printf("%s\n", rep.all_pass() ? "ALL CRITERIA PASSED" : "CRITERIA FAILED");
    return rep.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"SINR statistics for widely linear MMSE MIMO receivers"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // shared option storage
    int n_t = 2, n_r = 2, workers = 0;
    double snr_db = 0.0, threshold = 1.0, tol = 1e-8;
    long samples = 0, realizations = 2000, symbols = 250, n_spectra = 10000;
    std::uint64_t seed = default_seed();
    std::string out = "curve.csv", range_str = "0:1:15", grid_str, profile = "quick";
    std::vector<std::string> modes{"analytic"}, methods{"closed"};

    auto *pdf = app.add_subcommand("pdf", "SINR density curves");
    pdf->add_option("--nt", n_t, "transmit antennas")->required();
    pdf->add_option("--nr", n_r, "receive antennas")->required();
    pdf->add_option("--snr-db", snr_db, "per-antenna SNR rho in dB")->required();
    pdf->add_option("--mode", modes,
                    "one or more of analytic, approx, empirical, numeric")
        ->delimiter(',');
    pdf->add_option("--grid", grid_str, "count,min,max tau grid (default: automatic)");
    pdf->add_option("--samples", samples, "empirical mode sample count");
    pdf->add_option("--seed", seed, "random seed (default WLSINR_SEED or 12345)");
    pdf->add_option("--tol", tol, "series tolerance");
    pdf->add_option("--workers", workers, "worker threads (0: auto)");
    pdf->add_option("--out", out, "output CSV path");

    auto *outage = app.add_subcommand("outage", "outage probability curves");
    outage->add_option("--nt", n_t)->required();
    outage->add_option("--nr", n_r)->required();
    outage->add_option("--snr-db-range", range_str, "start:step:stop in dB");
    outage->add_option("--threshold", threshold, "outage threshold tau_o")->required();
    outage->add_option("--methods", methods, "subset of closed, empirical")->delimiter(',');
    outage->add_option("--samples", samples, "empirical sample count per point");
    outage->add_option("--seed", seed);
    outage->add_option("--workers", workers);
    outage->add_option("--out", out);

    auto *ser = app.add_subcommand("ser", "symbol error rate curves");
    ser->add_option("--nt", n_t)->required();
    ser->add_option("--nr", n_r)->required();
    ser->add_option("--snr-db-range", range_str);
    ser->add_option("--methods", methods, "subset of closed, mgf, empirical")->delimiter(',');
    ser->add_option("--realizations", realizations, "channel draws per point");
    ser->add_option("--symbols", symbols, "symbols per channel draw");
    ser->add_option("--n-spectra", n_spectra, "spectra for the mgf route");
    ser->add_option("--seed", seed);
    ser->add_option("--workers", workers);
    ser->add_option("--out", out);

    auto *div = app.add_subcommand("diversity", "diversity gains and slope fit");
    div->add_option("--nt", n_t)->required();
    div->add_option("--nr", n_r)->required();
    div->add_option("--snr-db-range", range_str, "fit window, default 20:1:30");
    div->add_option("--seed", seed);
    div->add_option("--out", out);

    auto *val = app.add_subcommand("validate", "run the acceptance criteria");
    val->add_option("--profile", profile, "quick or full")
        ->check(CLI::IsMember({"quick", "full"}));
    val->add_option("--seed", seed);
    val->add_option("--workers", workers);
    val->add_option("--out", out, "JSON report path (optional)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // stable usage-error contract
    }

    try {
        if (app.got_subcommand(pdf)) {
            int gn = 0;
            double gmin = 0.0, gmax = 0.0;
            if (!grid_str.empty()) {
                char c1, c2;
                std::istringstream is(grid_str);
                if (!(is >> gn >> c1 >> gmin >> c2 >> gmax) || c1 != ',' || c2 != ',' ||
                    gn < 2)
                    throw CLI::ValidationError("--grid", "expected count,min,max");
            }
            return cmd_pdf(n_t, n_r, snr_db, modes, gn, gmin, gmax, samples, seed, tol,
                           workers, out);
        }
        if (app.got_subcommand(outage))
            return cmd_outage(n_t, n_r, parse_range(range_str), threshold, methods, samples,
                              seed, workers, out);
        if (app.got_subcommand(ser))
            return cmd_ser(n_t, n_r, parse_range(range_str), methods, realizations, symbols,
                           n_spectra, seed, workers, out);
        if (app.got_subcommand(div)) {
            if (div->count("--snr-db-range") == 0)
                range_str = "20:1:30";
            return cmd_diversity(n_t, n_r, parse_range(range_str), seed, out);
        }
        if (app.got_subcommand(val))
            return cmd_validate(profile, seed, workers, out == "curve.csv" ? "" : out);
    } catch (const CLI::ValidationError &e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const wlsinr::truncation_error &e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 3;
    } catch (const wlsinr::integration_error &e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 3;
    } catch (const std::domain_error &e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 3;
    }
    return 2;
}
