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

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using std::string;

namespace {

int run_cli(const string &args) {
    const string cmd = string(WLSINR_CLI_PATH) + " " + args + " >/dev/null 2>/dev/null";
    const int ret = std::system(cmd.c_str());
    if (ret == -1)
        return -1;
    return WEXITSTATUS(ret);
}

string slurp(const string &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct csv_data {
    std::vector<string> header;
    std::vector<std::vector<string>> rows;
    string manifest_ref;
};

csv_data parse_csv(const string &path) {
    csv_data d;
    std::ifstream in(path);
    string line;
    bool header_done = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') {
            const auto pos = line.find("manifest: ");
            if (pos != string::npos)
                d.manifest_ref = line.substr(pos + 10);
            continue;
        }
        std::vector<string> cells;
        std::stringstream ss(line);
        string cell;
        while (std::getline(ss, cell, ','))
            cells.push_back(cell);
        if (!header_done) {
            d.header = cells;
            header_done = true;
        } else if (!cells.empty()) {
            d.rows.push_back(cells);
        }
    }
    return d;
}

double cell_value(const csv_data &d, std::size_t row, const string &col) {
    for (std::size_t c = 0; c < d.header.size(); ++c)
        if (d.header[c] == col)
            return std::strtod(d.rows[row][c].c_str(), nullptr);
    REQUIRE(false);
    return 0.0;
}

// variance of a density curve by trapezoid integration
double curve_variance(const csv_data &d) {
    double m0 = 0, m1 = 0, m2 = 0;
    for (std::size_t r = 1; r < d.rows.size(); ++r) {
        const double x0 = cell_value(d, r - 1, "tau"), x1 = cell_value(d, r, "tau");
        const double f0 = cell_value(d, r - 1, "density"), f1 = cell_value(d, r, "density");
        const double w = x1 - x0;
        m0 += 0.5 * (f0 + f1) * w;
        m1 += 0.5 * (f0 * x0 + f1 * x1) * w;
        m2 += 0.5 * (f0 * x0 * x0 + f1 * x1 * x1) * w;
    }
    const double mean = m1 / m0;
    return m2 / m0 - mean * mean;
}

} // namespace

TEST_CASE("pdf analytic curve: format, locale independence, oracle peak") {
    const string out = "cli_pdf_a.csv";
    REQUIRE(run_cli("pdf --nt 2 --nr 2 --snr-db 0 --mode analytic --grid 81,0.05,8 --out " +
                    out) == 0);
    const auto d = parse_csv(out);
    REQUIRE(d.header == std::vector<string>{"tau", "density"});
    REQUIRE(d.rows.size() == 81);
    CHECK(d.manifest_ref == out + ".manifest.json");
    // plain '.' decimal separators, no thousands grouping
    const string body = slurp(out);
    CHECK(body.find(',') != string::npos);
    CHECK(body.find(';') == string::npos);
    CHECK(body.find('\r') == string::npos);
    // the curve peaks where the numeric-oracle curve peaks (coarse check
    // against the independently produced numeric mode)
    const string out2 = "cli_pdf_n.csv";
    REQUIRE(run_cli("pdf --nt 2 --nr 2 --snr-db 0 --mode numeric --grid 81,0.05,8 --out " +
                    out2) == 0);
    const auto dn = parse_csv(out2);
    std::size_t pk_a = 0, pk_n = 0;
    for (std::size_t r = 0; r < d.rows.size(); ++r) {
        if (cell_value(d, r, "density") > cell_value(d, pk_a, "density"))
            pk_a = r;
        if (cell_value(dn, r, "density") > cell_value(dn, pk_n, "density"))
            pk_n = r;
    }
    CHECK(std::abs((int)pk_a - (int)pk_n) <= 1);
}

TEST_CASE("pdf curve broadens with more receive antennas") {
    REQUIRE(run_cli("pdf --nt 2 --nr 2 --snr-db 0 --mode analytic --grid 200,0.02,30 --out "
                    "cli_b22.csv") == 0);
    REQUIRE(run_cli("pdf --nt 2 --nr 4 --snr-db 0 --mode analytic --grid 200,0.02,30 --out "
                    "cli_b42.csv") == 0);
    const double v22 = curve_variance(parse_csv("cli_b22.csv"));
    const double v42 = curve_variance(parse_csv("cli_b42.csv"));
    CHECK(v42 > v22);
}

TEST_CASE("pdf usage errors") {
    CHECK(run_cli("pdf --nt 4 --nr 4 --snr-db 0 --mode analytic --out cli_bad1.csv") == 2);
    CHECK(run_cli("pdf --nt 2 --nr 2 --snr-db 0 --mode empirical --samples 0 --out "
                  "cli_bad2.csv") == 2);
    CHECK(run_cli("pdf --nt 2 --nr 2 --snr-db 0 --mode nonsense --out cli_bad3.csv") == 2);
    CHECK(run_cli("pdf --nr 2 --snr-db 0 --out cli_bad4.csv") == 2); // missing --nt
    CHECK(run_cli("nonsense") == 2);
}

TEST_CASE("pdf numeric failure surfaces as exit 3") {
    CHECK(run_cli("pdf --nt 2 --nr 2 --snr-db 0 --mode analytic --tol 0 --grid 2,30,40 "
                  "--out cli_fail.csv") == 3);
}

TEST_CASE("pdf multiple modes adds the kind column") {
    const string out = "cli_pdf_mk.csv";
    REQUIRE(run_cli("pdf --nt 2 --nr 2 --snr-db 3 --mode analytic,approx --grid 10,0.1,8 "
                    "--seed 5 --samples 1000 --out " +
                    out) == 0);
    const auto d = parse_csv(out);
    REQUIRE(d.header == std::vector<string>{"tau", "density", "kind"});
    REQUIRE(d.rows.size() == 20);
    CHECK(d.rows.front().back() == "analytic_nt2");
    CHECK(d.rows.back().back() == "approximate");
}

TEST_CASE("manifest replay reproduces identical bytes") {
    // rerunning the same resolved command overwrites the outputs with
    // byte-identical data; only the manifest timestamp may differ
    const string a = "cli_rep.csv";
    const string args = "pdf --nt 2 --nr 3 --snr-db 3 --mode empirical --samples 20000 "
                        "--seed 777 --workers 2 --out " +
                        a;
    REQUIRE(run_cli(args) == 0);
    const string first = slurp(a);
    const string first_manifest = slurp(a + ".manifest.json");
    REQUIRE(run_cli(args) == 0);
    CHECK(slurp(a) == first);
    auto strip_ts = [](string s) {
        const auto p = s.find("\"timestamp\"");
        if (p != string::npos) {
            const auto e = s.find('\n', p);
            s.erase(p, e - p);
        }
        return s;
    };
    CHECK(strip_ts(slurp(a + ".manifest.json")) == strip_ts(first_manifest));
}

TEST_CASE("diversity output carries the analytic gains") {
    const string out = "cli_div.csv";
    REQUIRE(run_cli("diversity --nt 2 --nr 2 --out " + out) == 0);
    const auto d = parse_csv(out);
    REQUIRE(!d.rows.empty());
    CHECK(cell_value(d, 0, "diversity_wl") == 1.5);
    CHECK(cell_value(d, 0, "diversity_lmmse") == 1.0);
    CHECK(cell_value(d, 0, "diversity_delta") == 0.5);
    CHECK(std::abs(cell_value(d, 0, "fitted_slope") - 1.5) < 0.15);
}

TEST_CASE("outage at zero threshold is exactly zero") {
    const string out = "cli_out.csv";
    REQUIRE(run_cli("outage --nt 2 --nr 2 --snr-db-range 0:5:10 --threshold 0 --methods "
                    "closed --out " +
                    out) == 0);
    const auto d = parse_csv(out);
    REQUIRE(d.rows.size() == 3);
    for (std::size_t r = 0; r < d.rows.size(); ++r)
        CHECK(cell_value(d, r, "closed") == 0.0);
}

TEST_CASE("ser closed and empirical columns stay close at moderate SNR") {
    const string out = "cli_ser.csv";
    REQUIRE(run_cli("ser --nt 2 --nr 4 --snr-db-range 0:3:6 --methods closed,empirical "
                    "--realizations 800 --symbols 650 --seed 9 --out " +
                    out) == 0);
    const auto d = parse_csv(out);
    REQUIRE(d.rows.size() == 3);
    for (std::size_t r = 0; r < d.rows.size(); ++r) {
        const double closed = cell_value(d, r, "closed");
        const double emp = cell_value(d, r, "empirical_wlmmse");
        if (closed > 1e-3)
            CHECK(std::abs(emp - closed) / closed < 0.15);
        CHECK(cell_value(d, r, "empirical_wlmmse") <=
              cell_value(d, r, "empirical_lmmse") + 3.0 * cell_value(d, r, "empirical_lmmse_se"));
    }
}

TEST_CASE("validate rejects a corrupted profile") {
    CHECK(run_cli("validate --profile bogus") == 2);
}
