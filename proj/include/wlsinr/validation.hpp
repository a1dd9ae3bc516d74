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
// The validation suite: every library-level guarantee is pinned here as a
// numbered criterion with its tolerance, runnable by the acceptance test
// binary and by `wlsinr validate`.

#ifndef WLSINR_VALIDATION_HPP
#define WLSINR_VALIDATION_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace wlsinr::validation {

struct criterion_result {
    int id = 0;
    std::string name;
    bool pass = false;
    bool recorded_only = false; // informational entries that cannot fail
    double measured = 0.0;      // worst observed figure
    double tolerance = 0.0;
    std::string detail;
    double seconds = 0.0;
    std::vector<std::pair<std::string, double>> extras; // e.g. standard errors
};

struct report {
    std::string profile; // "quick" or "full"
    std::uint64_t seed = 0;
    int workers = 0;
    std::vector<criterion_result> results;

    bool all_pass() const {
        for (const auto &r : results)
            if (!r.pass && !r.recorded_only)
                return false;
        return true;
    }
};

// Runs criteria 1..12. profile "full" raises the Monte Carlo sample counts
// to 8e5-realization scale; tolerances are identical.
report run_all(const std::string &profile, std::uint64_t seed, int workers);

// Deterministic JSON serialization of the report body (no timestamps).
std::string report_body_json(const report &r);

// One human-readable line per criterion ("PASS ..." / "FAIL ..." / "INFO ...").
std::string format_line(const criterion_result &r);

} // namespace wlsinr::validation

#endif // WLSINR_VALIDATION_HPP
