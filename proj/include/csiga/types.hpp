// SPDX-License-Identifier: Apache-2.0
//
// csiga: cross-splitting information geometry detectors for MU-MIMO uplink
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

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace csiga {

using cplx = std::complex<double>;
using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;
using rvec = Eigen::VectorXd;
using rmat = Eigen::MatrixXd;

/// Raised when a Gaussian manifold point is numerically unusable
/// (precision not negative definite, covariance not positive definite).
class numerical_error : public std::runtime_error {
   public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by the iterative detectors when a free-parameter configuration
/// leaves the feasible region (an auxiliary precision stops being
/// invertible). Carries the offending user index and iteration.
class indefinite_state_error : public numerical_error {
   public:
    indefinite_state_error(const std::string& what, int user, int iteration)
        : numerical_error(what + " (user " + std::to_string(user) + ", iteration " +
                          std::to_string(iteration) + ")"),
          user_(user),
          iteration_(iteration) {}

    int user() const noexcept { return user_; }
    int iteration() const noexcept { return iteration_; }

   private:
    int user_;
    int iteration_;
};

}  // namespace csiga
