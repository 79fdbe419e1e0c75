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

#include <random>
#include <vector>

#include "csiga/channel.hpp"
#include "csiga/cs_iga.hpp"
#include "csiga/problem.hpp"
#include "csiga/splitting.hpp"

// Shared random-instance generators for the test suites. Everything is
// seeded explicitly so failures reproduce.

namespace csiga::testing {

inline cvec random_cvec(int n, rng_engine& rng, double scale = 1.0) {
    std::normal_distribution<double> gauss(0.0, scale);
    cvec v(n);
    for (int i = 0; i < n; ++i) v[i] = cplx(gauss(rng), gauss(rng));
    return v;
}

inline cmat random_cmat(int rows, int cols, rng_engine& rng, double scale = 1.0) {
    std::normal_distribution<double> gauss(0.0, scale);
    cmat m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = cplx(gauss(rng), gauss(rng));
    return m;
}

inline cmat random_hermitian(int n, rng_engine& rng) {
    const cmat a = random_cmat(n, n, rng);
    return 0.5 * (a + a.adjoint()).eval();
}

/// Hermitian positive definite with a safe spectral floor.
inline cmat random_hpd(int n, rng_engine& rng, double ridge = 0.5) {
    const cmat a = random_cmat(n, n, rng, 1.0 / std::sqrt(n));
    return (a * a.adjoint() + ridge * cmat::Identity(n, n)).eval();
}

inline DetectionProblem random_problem(int m, int n, int order, double sigma2, rng_engine& rng) {
    DetectionProblem p;
    p.constellation = make_constellation(order);
    p.H = generate_channel(m, n, rng);
    std::uniform_int_distribution<int> pick(0, order - 1);
    std::vector<int> sent(static_cast<std::size_t>(n));
    for (auto& s : sent) s = pick(rng);
    p.sigma2 = sigma2;
    p.y = transmit(sent, p.H, sigma2, p.constellation, rng).y;
    return p;
}

/// Random free parameters that keep every auxiliary manifold invertible;
/// rejection-sampled against the detector's own feasibility guards.
inline cs::AuxiliaryState random_feasible_state(const SplitComponents& split, rng_engine& rng) {
    const int n = split.users();
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> shift(-0.2, 2.0);
    for (;;) {
        cs::AuxiliaryState state = cs::make_state(n, cs::InitMode::zero);
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                state.lambda(i, j) = cplx(gauss(rng), gauss(rng));
                state.Lambda(i, j) = shift(rng) * split.D[i];
            }
        }
        try {
            cs::ProjectionRow scratch;
            for (int k = 0; k < n; ++k) cs::aux_moments(state, split, k, scratch);
            return state;
        } catch (const indefinite_state_error&) {
            // redraw
        }
    }
}

/// Dense auxiliary natural parameters (theta_n, Theta_n) for oracle use.
inline void dense_auxiliary_naturals(const cs::AuxiliaryState& state,
                                     const SplitComponents& split, int n, cvec& theta,
                                     cmat& Theta) {
    const int users = split.users();
    theta = state.lambda.col(n);
    theta[n] += split.b[n];
    Theta = -assemble_cross_matrix(split, n);
    for (int i = 0; i < users; ++i) Theta(i, i) -= state.Lambda(i, n) + split.D[i];
}

}  // namespace csiga::testing
