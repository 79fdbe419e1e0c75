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

#include "csiga/constellation.hpp"
#include "csiga/types.hpp"

namespace csiga {

/// Full input to any detector: channel, observation, noise power and the
/// symbol constellation.
struct DetectionProblem {
    cmat H;         // M x N channel
    cvec y;         // length-M received vector
    double sigma2;  // total per-entry complex noise power
    Constellation constellation;

    int antennas() const { return static_cast<int>(H.rows()); }
    int users() const { return static_cast<int>(H.cols()); }

    void validate() const {
        if (H.rows() < 1 || H.cols() < 1) throw std::invalid_argument("empty channel matrix");
        if (y.size() != H.rows())
            throw std::invalid_argument("received vector length does not match channel rows");
        if (!(sigma2 > 0.0)) throw std::invalid_argument("noise power must be positive");
    }
};

enum class GramVariant {
    linear,    // Gaussian prior: K = HᴴH / sigma2 + I
    nonlinear  // discrete prior: K = HᴴH / sigma2
};

/// Gram matrix and matched filter shared by the detectors and baselines.
struct PrecomputedGram {
    cmat K;   // N x N Hermitian coupling matrix
    cvec mf;  // matched filter Hᴴy / sigma2
    GramVariant variant = GramVariant::linear;
};

/// Computes K and the matched filter for the requested prior variant.
/// Hermitian symmetry of K is enforced by averaging with its adjoint, so
/// the diagonal is exactly real.
inline PrecomputedGram precompute(const DetectionProblem& problem, GramVariant variant) {
    problem.validate();
    PrecomputedGram g;
    g.variant = variant;
    g.K = (problem.H.adjoint() * problem.H) / problem.sigma2;
    if (variant == GramVariant::linear)
        g.K += cmat::Identity(problem.users(), problem.users());
    g.K = 0.5 * (g.K + g.K.adjoint()).eval();
    g.mf = (problem.H.adjoint() * problem.y) / problem.sigma2;
    return g;
}

}  // namespace csiga
