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

#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "csiga/constellation.hpp"
#include "csiga/types.hpp"

namespace csiga {

using rng_engine = std::mt19937_64;

/// SNR in dB to total per-entry complex noise power, under unit-energy
/// symbols and E[||H||_F^2] = M channel normalization: sigma_z^2 = 10^(-snr/10).
inline double snr_to_sigma2(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

enum class ChannelNorm {
    frobenius,  // i.i.d. CN(0, 1/N): E[||H||_F^2] = M
    per_user    // i.i.d. CN(0, 1/M): E[||h_n||^2] = 1 for every column
};

/// Draws an M x N channel with i.i.d. complex Gaussian entries. Under the
/// default normalization the expected squared Frobenius norm is M, i.e.
/// unit average received power per antenna for unit-energy symbols; the
/// per-user alternative gives every column unit expected energy instead.
/// An optional exponential column correlation rho in [0, 1) mixes columns
/// through the Cholesky factor of R_ij = rho^|i-j|; R has unit diagonal,
/// so either normalization is preserved in expectation.
inline cmat generate_channel(int m, int n, rng_engine& rng, double correlation = 0.0,
                             ChannelNorm norm = ChannelNorm::frobenius) {
    if (m < 1 || n < 1) throw std::invalid_argument("channel dimensions must be positive");
    if (correlation < 0.0 || correlation >= 1.0)
        throw std::invalid_argument("column correlation must lie in [0, 1)");
    if (m < n)
        std::fprintf(stderr,
                     "generate_channel: M=%d < N=%d leaves users underdetermined\n", m, n);
    const double entry_var = norm == ChannelNorm::frobenius ? 1.0 / n : 1.0 / m;
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5 * entry_var));
    cmat h(m, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i) h(i, j) = cplx(gauss(rng), gauss(rng));
    if (correlation > 0.0) {
        rmat corr(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) corr(i, j) = std::pow(correlation, std::abs(i - j));
        const rmat chol = corr.llt().matrixL();
        h = h * chol.transpose().cast<cplx>();
    }
    return h;
}

struct TransmitResult {
    cvec x;  // modulated symbols, length N
    cvec y;  // received vector, length M
};

/// y = H x + z with z circularly symmetric complex Gaussian, total
/// per-entry variance sigma2 (each real component sigma2 / 2).
inline TransmitResult transmit(const std::vector<int>& x_indices, const cmat& h, double sigma2,
                               const Constellation& cons, rng_engine& rng) {
    const int n = static_cast<int>(h.cols());
    const int m = static_cast<int>(h.rows());
    if (static_cast<int>(x_indices.size()) != n)
        throw std::invalid_argument("symbol index count must match channel columns");
    TransmitResult out;
    out.x.resize(n);
    for (int k = 0; k < n; ++k) {
        const int idx = x_indices[static_cast<std::size_t>(k)];
        if (idx < 0 || idx >= cons.order)
            throw std::out_of_range("symbol index " + std::to_string(idx) + " out of range");
        out.x[k] = cons.points[static_cast<std::size_t>(idx)];
    }
    std::normal_distribution<double> gauss(0.0, std::sqrt(sigma2 / 2.0));
    out.y = h * out.x;
    for (int i = 0; i < m; ++i) out.y[i] += cplx(gauss(rng), gauss(rng));
    return out;
}

}  // namespace csiga
