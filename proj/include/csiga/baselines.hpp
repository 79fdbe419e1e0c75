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
#include <limits>
#include <vector>

#include "csiga/problem.hpp"
#include "csiga/types.hpp"

// Exact reference detectors, used as oracles by the tests and as
// comparison baselines by the experiment harness. None of these are on
// any hot path; clarity wins over speed.

namespace csiga::baselines {

struct LmmseResult {
    cvec mu;
    rvec sigma_diag;  // diagonal of the posterior covariance
};

/// Direct LMMSE via Cholesky of the (Hermitian positive definite)
/// regularized Gram: mu = (HᴴH/sigma2 + I)^{-1} Hᴴy/sigma2.
inline LmmseResult lmmse(const DetectionProblem& problem) {
    problem.validate();
    const int n = problem.users();
    const cmat K = (problem.H.adjoint() * problem.H) / problem.sigma2 + cmat::Identity(n, n);
    Eigen::LLT<cmat> llt(K);
    if (llt.info() != Eigen::Success)
        throw numerical_error("LMMSE system matrix is numerically singular");
    LmmseResult out;
    out.mu = llt.solve(problem.H.adjoint() * problem.y / problem.sigma2);
    out.sigma_diag = llt.solve(cmat::Identity(n, n)).diagonal().real();
    return out;
}

/// Matched filter Hᴴy / sigma2.
inline cvec matched_filter(const DetectionProblem& problem) {
    problem.validate();
    return problem.H.adjoint() * problem.y / problem.sigma2;
}

struct ExactMarginals {
    rmat eta_exact;             // N x L per-user marginal posteriors, rows sum to one
    std::vector<int> map_joint; // joint MAP symbol indices (ties to the lowest index)
    cvec mmse_mean;             // discrete posterior mean
};

inline constexpr long exact_hypothesis_limit = 1'000'000;

/// Exhaustive enumeration of the discrete posterior over all L^N symbol
/// hypotheses: per-user marginals via log-sum-exp, the joint MAP, and the
/// discrete MMSE mean. Guarded to at most a million hypotheses.
inline ExactMarginals exact_marginals(const DetectionProblem& problem) {
    problem.validate();
    const int n = problem.users();
    const int L = problem.constellation.order;
    double count = 1.0;
    for (int k = 0; k < n; ++k) {
        count *= L;
        if (count > static_cast<double>(exact_hypothesis_limit))
            throw std::invalid_argument("exact enumeration exceeds the hypothesis limit");
    }
    const long total = static_cast<long>(count);

    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    cvec x(n);
    for (int k = 0; k < n; ++k) x[k] = problem.constellation.points[0];
    cvec hx = problem.H * x;

    std::vector<double> loglik(static_cast<std::size_t>(total));
    double best = -std::numeric_limits<double>::infinity();
    long best_idx = 0;
    for (long h = 0; h < total; ++h) {
        const double ll = -(problem.y - hx).squaredNorm() / problem.sigma2;
        loglik[static_cast<std::size_t>(h)] = ll;
        if (ll > best) {
            best = ll;
            best_idx = h;
        }
        // mixed-radix increment, updating H x by the changed columns only
        for (int k = 0; k < n; ++k) {
            const int old = digits[static_cast<std::size_t>(k)];
            const int next = (old + 1) % L;
            digits[static_cast<std::size_t>(k)] = next;
            const cplx delta = problem.constellation.points[static_cast<std::size_t>(next)] -
                               problem.constellation.points[static_cast<std::size_t>(old)];
            hx += problem.H.col(k) * delta;
            if (next != 0) break;  // no carry
        }
    }

    ExactMarginals out;
    out.eta_exact = rmat::Zero(n, L);
    out.map_joint.resize(static_cast<std::size_t>(n));
    long rem = best_idx;
    for (int k = 0; k < n; ++k) {
        out.map_joint[static_cast<std::size_t>(k)] = static_cast<int>(rem % L);
        rem /= L;
    }
    // marginal accumulation against the global maximum for stability
    for (long h = 0; h < total; ++h) {
        const double w = std::exp(loglik[static_cast<std::size_t>(h)] - best);
        long r = h;
        for (int k = 0; k < n; ++k) {
            out.eta_exact(k, static_cast<int>(r % L)) += w;
            r /= L;
        }
    }
    out.mmse_mean.resize(n);
    for (int k = 0; k < n; ++k) {
        out.eta_exact.row(k) /= out.eta_exact.row(k).sum();
        cplx mean(0.0, 0.0);
        for (int l = 0; l < L; ++l)
            mean += out.eta_exact(k, l) * problem.constellation.points[static_cast<std::size_t>(l)];
        out.mmse_mean[k] = mean;
    }
    return out;
}

}  // namespace csiga::baselines
