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

#include "wlsinr/curves.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

#include "wlsinr/sinr_dist.hpp"

namespace wlsinr::curves {

std::string to_string(curve_kind k) {
    switch (k) {
    case curve_kind::analytic_nt2:
        return "analytic_nt2";
    case curve_kind::analytic_nt3:
        return "analytic_nt3";
    case curve_kind::approximate:
        return "approximate";
    case curve_kind::empirical:
        return "empirical";
    case curve_kind::numeric_oracle:
        return "numeric_oracle";
    }
    return "unknown";
}

void distribution_curve::validate() const {
    if (grid.size() != values.size() || grid.empty())
        throw std::domain_error("distribution_curve: grid/values size mismatch");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            throw std::domain_error("distribution_curve: grid must be strictly increasing");
    if (is_cdf) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i] < -1e-12 || values[i] > 1.0 + 1e-12)
                throw std::domain_error("distribution_curve: CDF outside [0, 1]");
            if (i && values[i] + 1e-12 < values[i - 1])
                throw std::domain_error("distribution_curve: CDF must be nondecreasing");
        }
    } else if (kind != curve_kind::approximate) {
        for (double v : values)
            if (v < 0.0)
                throw std::domain_error("distribution_curve: negative density");
    }
}

std::vector<double> default_tau_grid(const mimo::system_config &cfg, int points) {
    if (points < 2)
        throw std::domain_error("default_tau_grid: need at least two points");
    const double hi = dist::approx_quantile(0.9999, cfg);
    const double lo = hi * 1e-4;
    std::vector<double> g(points);
    const double step = std::log(hi / lo) / (points - 1);
    for (int i = 0; i < points; ++i)
        g[i] = lo * std::exp(step * i);
    g.back() = hi;
    return g;
}

std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string manifest_to_json(const run_manifest &m) {
    nlohmann::json j;
    j["command"] = m.command;
    nlohmann::json p = nlohmann::json::object();
    for (const auto &[k, v] : m.params)
        p[k] = v;
    j["params"] = p;
    j["seed"] = m.seed;
    j["version"] = m.version;
    j["timestamp"] = m.timestamp;
    j["outputs"] = m.outputs;
    return j.dump(2) + "\n";
}

void write_text_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    out << content;
    if (!out)
        throw std::runtime_error("failed writing output file: " + path);
}

void write_csv(const std::string &path, const std::string &manifest_ref,
               const std::vector<std::pair<std::string, std::vector<double>>> &columns,
               const std::vector<std::string> *string_column,
               const std::string &string_header) {
    if (columns.empty())
        throw std::domain_error("write_csv: no columns");
    const std::size_t rows = columns.front().second.size();
    for (const auto &[name, col] : columns)
        if (col.size() != rows)
            throw std::domain_error("write_csv: ragged columns");
    if (string_column && string_column->size() != rows)
        throw std::domain_error("write_csv: ragged string column");

    std::string s;
    s += "# manifest: " + manifest_ref + "\n";
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c)
            s += ',';
        s += columns[c].first;
    }
    if (string_column) {
        s += ',';
        s += string_header;
    }
    s += '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c)
                s += ',';
            s += format_double(columns[c].second[r]);
        }
        if (string_column) {
            s += ',';
            s += (*string_column)[r];
        }
        s += '\n';
    }
    write_text_file(path, s);
}

} // namespace wlsinr::curves
