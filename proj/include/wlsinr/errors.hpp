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

#ifndef WLSINR_ERRORS_HPP
#define WLSINR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wlsinr {

// A series did not meet its tolerance within the term budget. Carries the
// partial sum and the number of terms actually accumulated.
class truncation_error : public std::runtime_error {
  public:
    truncation_error(const std::string &what, double partial_sum, long terms)
        : std::runtime_error(what), partial_sum_(partial_sum), terms_(terms) {}

    double partial_sum() const noexcept { return partial_sum_; }
    long terms() const noexcept { return terms_; }

  private:
    double partial_sum_;
    long terms_;
};

// A numerical integration failed to converge. Carries the best estimate and
// the error bound attached to it.
class integration_error : public std::runtime_error {
  public:
    integration_error(const std::string &what, double estimate, double error_bound)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

  private:
    double estimate_;
    double error_bound_;
};

// A linear system could not be factorized (matrix not positive definite).
class linear_solve_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace wlsinr

#endif // WLSINR_ERRORS_HPP
