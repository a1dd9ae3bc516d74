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
// Curve containers and machine-readable outputs: density/CDF curves with
// provenance, locale-independent CSV, and the JSON run manifest that every
// output file references.

#ifndef WLSINR_CURVES_HPP
#define WLSINR_CURVES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "wlsinr/mimo.hpp"

namespace wlsinr::curves {

enum class curve_kind { analytic_nt2, analytic_nt3, approximate, empirical, numeric_oracle };

std::string to_string(curve_kind k);

struct distribution_curve {
    std::vector<double> grid;   // strictly increasing tau values
    std::vector<double> values; // density (or CDF) on the grid
    bool is_cdf = false;
    curve_kind kind = curve_kind::analytic_nt2;
    mimo::system_config config;
    double tolerance = 0.0;

    // invariants: strictly increasing grid; densities nonnegative except
    // for the signed approximate form; CDFs nondecreasing within [0, 1]
    void validate() const;
};

// Default evaluation grid: log-spaced from tau_max/1e4 to the 99.99th
// percentile of the (clamped) approximate distribution.
std::vector<double> default_tau_grid(const mimo::system_config &cfg, int points = 400);

// One resolved CLI invocation; written next to every output file and
// sufficient to reproduce it.
struct run_manifest {
    std::string command;                                     // subcommand name
    std::vector<std::pair<std::string, std::string>> params; // resolved flags
    std::uint64_t seed = 0;
    std::string version;
    std::string timestamp; // RFC3339; excluded from determinism comparisons
    std::vector<std::string> outputs;
};

std::string manifest_to_json(const run_manifest &m);
void write_text_file(const std::string &path, const std::string &content);

// number formatting used by every writer: shortest round-trip decimal,
// locale-independent
std::string format_double(double v);

// CSV with '\n' newlines and a leading comment line referencing the
// manifest; columns[i] pairs a header name with a value vector.
void write_csv(const std::string &path, const std::string &manifest_ref,
               const std::vector<std::pair<std::string, std::vector<double>>> &columns,
               const std::vector<std::string> *string_column = nullptr,
               const std::string &string_header = "");

} // namespace wlsinr::curves

#endif // WLSINR_CURVES_HPP
