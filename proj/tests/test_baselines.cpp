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

#include <numeric>

#include "csiga/baselines.hpp"
#include "csiga/ncs_iga.hpp"
#include "helpers.hpp"

using namespace csiga;
using namespace csiga::baselines;

TEST_CASE("lmmse identity channel and scalar Wiener forms", "[baselines]") {
    DetectionProblem p;
    p.constellation = make_constellation(4);
    p.H = cmat::Identity(3, 3);
    p.sigma2 = 1.0;
    rng_engine rng(167);
    p.y = testing::random_cvec(3, rng);
    const auto res = lmmse(p);
    REQUIRE((res.mu - 0.5 * p.y).cwiseAbs().maxCoeff() < 1e-14);
    REQUIRE((res.sigma_diag.array() - 0.5).abs().maxCoeff() < 1e-14);

    DetectionProblem scalar;
    scalar.constellation = make_constellation(4);
    scalar.H = testing::random_cmat(6, 1, rng);
    scalar.sigma2 = 0.4;
    scalar.y = testing::random_cvec(6, rng);
    const auto w = lmmse(scalar);
    const cplx expected = (scalar.H.col(0).adjoint() * scalar.y)(0) /
                          (scalar.H.col(0).squaredNorm() + scalar.sigma2);
    REQUIRE(std::abs(w.mu[0] - expected) < 1e-12);
}

TEST_CASE("lmmse satisfies its defining linear system", "[baselines]") {
    rng_engine rng(173);
    for (int rep = 0; rep < 20; ++rep) {
        const auto p = testing::random_problem(16, 4, 16, 0.3, rng);
        const auto res = lmmse(p);
        const cmat k = p.H.adjoint() * p.H / p.sigma2 + cmat::Identity(4, 4);
        const cvec rhs = p.H.adjoint() * p.y / p.sigma2;
        REQUIRE((k * res.mu - rhs).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("matched filter basics", "[baselines]") {
    DetectionProblem p;
    p.constellation = make_constellation(4);
    p.H = cmat::Identity(4, 4);
    p.sigma2 = 1.0;
    rng_engine rng(179);
    p.y = testing::random_cvec(4, rng);
    REQUIRE((matched_filter(p) - p.y).cwiseAbs().maxCoeff() < 1e-15);
    p.y.setZero();
    REQUIRE(matched_filter(p).cwiseAbs().maxCoeff() == 0.0);

    const auto rp = testing::random_problem(8, 3, 16, 0.7, rng);
    REQUIRE((matched_filter(rp) - precompute(rp, GramVariant::nonlinear).mf)
                .cwiseAbs()
                .maxCoeff() < 1e-12);
}

TEST_CASE("exact marginals concentrate in the noiseless limit", "[baselines]") {
    const auto cons = make_constellation(4);
    rng_engine rng(181);
    DetectionProblem p;
    p.constellation = cons;
    p.H = testing::random_cmat(6, 3, rng);
    p.sigma2 = 1e-8;
    const std::vector<int> sent{1, 3, 0};
    cvec x(3);
    for (int k = 0; k < 3; ++k) x[k] = cons.points[(std::size_t)sent[(std::size_t)k]];
    p.y = p.H * x;  // exactly noiseless
    const auto res = exact_marginals(p);
    for (int k = 0; k < 3; ++k) {
        REQUIRE(res.map_joint[(std::size_t)k] == sent[(std::size_t)k]);
        REQUIRE(res.eta_exact(k, sent[(std::size_t)k]) == Catch::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("N=1 marginals match the scalar sufficient statistic", "[baselines]") {
    rng_engine rng(191);
    for (int order : {4, 16}) {
        const auto cons = make_constellation(order);
        DetectionProblem p;
        p.constellation = cons;
        p.H = testing::random_cmat(5, 1, rng);
        p.sigma2 = 0.6;
        std::uniform_int_distribution<int> pick(0, order - 1);
        p.y = transmit({pick(rng)}, p.H, p.sigma2, cons, rng).y;
        const auto res = exact_marginals(p);

        // scalar statistic z = hᴴy/||h||^2 with variance sigma2/||h||^2
        const double h2 = p.H.col(0).squaredNorm();
        const cvec z = p.H.adjoint() * p.y / h2;
        const auto sp =
            ncs::symbol_posteriors(z, rvec::Constant(1, p.sigma2 / h2), cons);
        for (int l = 0; l < order; ++l)
            REQUIRE(res.eta_exact(0, l) == Catch::Approx(sp.eta(0, l)).margin(1e-9));
    }
}

TEST_CASE("symmetric tie breaks to the lowest index", "[baselines]") {
    // y = 0 through a scalar channel: all QPSK hypotheses are equidistant
    DetectionProblem p;
    p.constellation = make_constellation(4);
    p.H = cmat::Ones(1, 1);
    p.sigma2 = 0.5;
    p.y = cvec::Zero(1);
    const auto res = exact_marginals(p);
    REQUIRE(res.map_joint[0] == 0);
    for (int l = 0; l < 4; ++l) REQUIRE(res.eta_exact(0, l) == Catch::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("exact marginals are permutation equivariant", "[baselines]") {
    rng_engine rng(193);
    const auto p = testing::random_problem(6, 3, 4, 0.4, rng);
    const auto base = exact_marginals(p);

    DetectionProblem permuted = p;
    const std::vector<int> perm{2, 0, 1};  // column j of permuted = column perm[j] of p
    for (int j = 0; j < 3; ++j) permuted.H.col(j) = p.H.col(perm[(std::size_t)j]);
    const auto res = exact_marginals(permuted);
    for (int j = 0; j < 3; ++j) {
        for (int l = 0; l < 4; ++l)
            REQUIRE(res.eta_exact(j, l) ==
                    Catch::Approx(base.eta_exact(perm[(std::size_t)j], l)).margin(1e-9));
        REQUIRE(res.map_joint[(std::size_t)j] == base.map_joint[(std::size_t)perm[(std::size_t)j]]);
    }
}

TEST_CASE("discrete posterior mean stays inside the constellation hull", "[baselines]") {
    rng_engine rng(197);
    const auto cons = make_constellation(16);
    double extent = 0.0;
    for (auto c : cons.points) extent = std::max(extent, std::abs(c.real()));
    extent += 1e-12;
    for (int rep = 0; rep < 10; ++rep) {
        const auto p = testing::random_problem(5, 2, 16, 0.8, rng);
        const auto res = exact_marginals(p);
        for (int k = 0; k < 2; ++k) {
            REQUIRE(std::abs(res.mmse_mean[k].real()) <= extent);
            REQUIRE(std::abs(res.mmse_mean[k].imag()) <= extent);
        }
    }
}

TEST_CASE("hypothesis guard rejects oversized enumerations", "[baselines]") {
    DetectionProblem p;
    p.constellation = make_constellation(64);
    rng_engine rng(199);
    p.H = testing::random_cmat(4, 4, rng);
    p.sigma2 = 1.0;
    p.y = testing::random_cvec(4, rng);
    REQUIRE_THROWS_AS(exact_marginals(p), std::invalid_argument);  // 64^4 > 10^6
}
