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

#include "csiga/problem.hpp"
#include "csiga/types.hpp"

// Cross decomposition of the Gram matrix: K = sum_n C_n + D, where D is
// the diagonal of K and C_n is the Hermitian rank-<=2 "cross" holding half
// of row n and half of column n of K (zero elsewhere). The companion
// splitting of the matched filter puts its n-th entry into the n-th
// component. Permutations that move index n to the front are realized as
// index bookkeeping only; nothing here materializes a permutation matrix.

namespace csiga {

struct SplitComponents {
    rvec D;     // diagonal of K
    cmat Kbar;  // Kbar(m, n) = K(m, n) / 2 for m != n, zero diagonal; column n is kbar_n
    rmat Lbar;  // |Kbar|^2 elementwise, Lbar(m, n) = |kbar_n[m]|^2
    cvec b;     // b[n] = matched-filter entry carried by component n

    int users() const { return static_cast<int>(D.size()); }
};

/// Splits a precomputed Gram into per-user cross components. The chosen
/// orientation is kbar_n[m] = K(m, n) / 2 (half of column n), which is the
/// reading under which sum_n C_n + diag(D) reconstructs K exactly.
inline SplitComponents cross_split(const PrecomputedGram& g) {
    const double scale = g.K.cwiseAbs().maxCoeff();
    if ((g.K - g.K.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * (1.0 + scale))
        throw std::invalid_argument("cross_split requires a Hermitian coupling matrix");
    SplitComponents s;
    s.D = g.K.diagonal().real();
    s.Kbar = 0.5 * g.K;
    s.Kbar.diagonal().setZero();
    s.Lbar = s.Kbar.cwiseAbs2();
    s.b = g.mf;
    return s;
}

/// Dense C_n for oracle/test use; the detectors never form it.
inline cmat assemble_cross_matrix(const SplitComponents& s, int n) {
    const int users = s.users();
    if (n < 0 || n >= users) throw std::out_of_range("cross component index out of range");
    cmat c = cmat::Zero(users, users);
    for (int m = 0; m < users; ++m) {
        if (m == n) continue;
        c(m, n) = s.Kbar(m, n);
        c(n, m) = std::conj(s.Kbar(m, n));
    }
    return c;
}

}  // namespace csiga
