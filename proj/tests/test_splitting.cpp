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

#include <catch2/catch_amalgamated.hpp>

#include "csiga/splitting.hpp"
#include "helpers.hpp"

using namespace csiga;

namespace {

PrecomputedGram gram_from(const cmat& k, rng_engine& rng) {
    PrecomputedGram g;
    g.K = k;
    g.mf = testing::random_cvec(static_cast<int>(k.rows()), rng);
    return g;
}

double reconstruction_error(const SplitComponents& s, const cmat& k) {
    const int n = s.users();
    cmat sum = cmat::Zero(n, n);
    for (int i = 0; i < n; ++i) sum += assemble_cross_matrix(s, i);
    for (int i = 0; i < n; ++i) sum(i, i) += s.D[i];
    return (sum - k).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("diagonal K splits into zero crosses", "[splitting]") {
    rng_engine rng(43);
    cmat k = cmat::Zero(4, 4);
    k.diagonal().setConstant(cplx(2.5, 0.0));
    const auto s = cross_split(gram_from(k, rng));
    REQUIRE(s.Kbar.cwiseAbs().maxCoeff() == 0.0);
    REQUIRE((s.D.array() == 2.5).all());
    for (int n = 0; n < 4; ++n)
        REQUIRE(assemble_cross_matrix(s, n).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("two-user split reproduces the worked component", "[splitting]") {
    rng_engine rng(47);
    cmat k(2, 2);
    k << cplx(2, 0), cplx(1, 1), cplx(1, -1), cplx(2, 0);
    const auto s = cross_split(gram_from(k, rng));
    // kbar_1 carries half of column 0 of K below the diagonal: K(1,0)/2 = (1-j)/2
    REQUIRE(std::abs(s.Kbar(1, 0) - cplx(0.5, -0.5)) < 1e-15);
    REQUIRE(reconstruction_error(s, k) < 1e-15);
}

TEST_CASE("reconstruction identities hold for all sizes", "[splitting]") {
    rng_engine rng(53);
    for (int n = 2; n <= 64; ++n) {
        const cmat k = testing::random_hermitian(n, rng);
        const auto g = gram_from(k, rng);
        const auto s = cross_split(g);
        REQUIRE(reconstruction_error(s, k) <= 1e-12 * (1.0 + k.cwiseAbs().maxCoeff()));
        // the matched-filter splitting sums back exactly
        cvec b_sum = cvec::Zero(n);
        for (int i = 0; i < n; ++i) b_sum[i] += s.b[i];
        REQUIRE((b_sum - g.mf).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("cross components are Hermitian, hollow, rank at most two", "[splitting]") {
    rng_engine rng(59);
    const cmat k = testing::random_hermitian(8, rng);
    const auto s = cross_split(gram_from(k, rng));
    for (int n = 0; n < 8; ++n) {
        const cmat c = assemble_cross_matrix(s, n);
        REQUIRE((c - c.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
        REQUIRE(c.diagonal().cwiseAbs().maxCoeff() == 0.0);
        const Eigen::JacobiSVD<cmat> svd(c);
        int rank = 0;
        for (int i = 0; i < svd.singularValues().size(); ++i)
            if (svd.singularValues()[i] > 1e-12) ++rank;
        REQUIRE(rank <= 2);
    }
}

TEST_CASE("off-diagonal weight is split half and half", "[splitting]") {
    rng_engine rng(61);
    const cmat k = testing::random_hermitian(5, rng);
    const auto s = cross_split(gram_from(k, rng));
    for (int n = 0; n < 5; ++n) {
        const cmat cn = assemble_cross_matrix(s, n);
        for (int m = 0; m < 5; ++m) {
            if (m == n) continue;
            REQUIRE(std::abs(cn(n, m) - 0.5 * k(n, m)) < 1e-14);
            const cmat cm = assemble_cross_matrix(s, m);
            REQUIRE(std::abs(cm(n, m) - 0.5 * k(n, m)) < 1e-14);
        }
    }
}

TEST_CASE("non-Hermitian input and bad indices are rejected", "[splitting]") {
    rng_engine rng(67);
    cmat k = testing::random_cmat(4, 4, rng);
    k(1, 2) += cplx(0.5, 0.5);  // break symmetry decisively
    k = k + cmat::Identity(4, 4) * 5.0;
    REQUIRE_THROWS_AS(cross_split(gram_from(k, rng)), std::invalid_argument);

    const cmat h = testing::random_hermitian(4, rng);
    const auto s = cross_split(gram_from(h, rng));
    REQUIRE_THROWS_AS(assemble_cross_matrix(s, 4), std::out_of_range);
    REQUIRE_THROWS_AS(assemble_cross_matrix(s, -1), std::out_of_range);
}
