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
// Acceptance suite runner: one pass/fail line per criterion, exit 0 iff all
// criteria pass. WLSINR_SEED overrides the default seed,
// WLSINR_ACCEPTANCE_PROFILE selects quick (default) or full.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "wlsinr/validation.hpp"

int main() {
    std::uint64_t seed = 12345;
    if (const char *env = std::getenv("WLSINR_SEED"))
        seed = std::strtoull(env, nullptr, 10);
    std::string profile = "quick";
    if (const char *env = std::getenv("WLSINR_ACCEPTANCE_PROFILE"))
        profile = env;

    std::printf("acceptance suite: profile=%s seed=%llu\n", profile.c_str(),
                (unsigned long long)seed);
    const auto rep = wlsinr::validation::run_all(profile, seed, 0);
    for (const auto &r : rep.results)
        std::printf("%s\n", wlsinr::validation::format_line(r).c_str());
    std::printf("%s\n", rep.all_pass() ? "ALL CRITERIA PASSED" : "CRITERIA FAILED");
    return rep.all_pass() ? 0 : 1;
}
