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

#include <vector>

#include "csiga/splitting.hpp"
#include "csiga/types.hpp"

// Linear cross-splitting detector. Each user owns one auxiliary manifold
// whose precision couples that user's cross component with free diagonal
// parameters; its moments have a closed form via one block inversion, and
// the per-iteration belief exchange costs O(N) per user. At a fixed point
// the objective-manifold mean equals the LMMSE estimate.

namespace csiga::cs {

enum class InitMode {
    zero,  // lambda = 0, Lambda = 0; always feasible
    paper  // lambda = 0, Lambda = -1 everywhere; may be infeasible for weak columns
};

struct Config {
    int max_iterations = 50;
    double damping = 0.7;
    double tolerance = 0.0;  // early exit on max |delta lambda0|; 0 disables
    InitMode init = InitMode::zero;
};

/// Free parameters of all manifolds at one iteration. Column n of
/// lambda / Lambda holds the n-th auxiliary's (lambda_n, diag Lambda_n);
/// (lambda0, Lambda0) are the objective-manifold parameters.
struct AuxiliaryState {
    cmat lambda;
    rmat Lambda;
    cvec lambda0;
    rvec Lambda0;
    int iteration = 0;
};

inline AuxiliaryState make_state(int users, InitMode init) {
    AuxiliaryState s;
    s.lambda = cmat::Zero(users, users);
    s.lambda0 = cvec::Zero(users);
    if (init == InitMode::paper) {
        s.Lambda = -rmat::Ones(users, users);
        s.Lambda0 = -rvec::Ones(users);
    } else {
        s.Lambda = rmat::Zero(users, users);
        s.Lambda0 = rvec::Zero(users);
    }
    return s;
}

/// Closed-form expectation parameters of one auxiliary manifold.
/// lambda_check and R live in natural index order with slot n unused
/// (set to zero); s = kbar_nᴴ LambdaCheck kbar_n is the scalar coupling.
struct ProjectionRow {
    double r = 0.0;  // own-variance entry of Sigma_n
    cplx v;          // kbar_nᴴ LambdaCheck lambdabar_n
    cplx mu;         // own-mean entry of mu_n
    double s = 0.0;
    rvec lambda_check;  // (Lambdabar_n + Dbar_n)^{-1}
    rvec R;             // (1 + r * Lbar * lambda_check)^{-1}

    void resize(int users) {
        lambda_check.resize(users);
        R.resize(users);
    }
};

/// Moments of auxiliary n from the current state, O(N). Preconditions:
/// Lambda_n[m] + D[m] > 0 for all m != n, and the own-entry Schur
/// complement must stay positive; violations raise indefinite_state_error.
inline void aux_moments(const AuxiliaryState& state, const SplitComponents& split, int n,
                        ProjectionRow& out) {
    const int users = split.users();
    out.resize(users);
    double s = 0.0;
    cplx v(0.0, 0.0);
    for (int m = 0; m < users; ++m) {
        if (m == n) {
            out.lambda_check[m] = 0.0;
            continue;
        }
        const double denom = state.Lambda(m, n) + split.D[m];
        if (!(denom > 0.0))
            throw indefinite_state_error("auxiliary precision lost positivity", n,
                                         state.iteration);
        const double lc = 1.0 / denom;
        out.lambda_check[m] = lc;
        s += split.Lbar(m, n) * lc;
        v += std::conj(split.Kbar(m, n)) * lc * state.lambda(m, n);
    }
    const double r_denom = state.Lambda(n, n) + split.D[n] - s;
    if (!(r_denom > 0.0))
        throw indefinite_state_error("own-entry variance denominator is not positive", n,
                                     state.iteration);
    out.s = s;
    out.r = 1.0 / r_denom;
    out.v = v;
    out.mu = out.r * (split.b[n] + state.lambda(n, n) - v);
    for (int m = 0; m < users; ++m) {
        out.R[m] = (m == n) ? 0.0
                            : 1.0 / (1.0 + out.r * split.Lbar(m, n) * out.lambda_check[m]);
    }
}

/// Belief of auxiliary n: the offset between its diagonal m-projection
/// and the free parameters, in natural index order. xi and Xi are the
/// columns the caller accumulates into. O(N).
inline void aux_beliefs(const ProjectionRow& proj, const AuxiliaryState& state,
                        const SplitComponents& split, int n, Eigen::Ref<cvec> xi,
                        Eigen::Ref<rvec> Xi) {
    const int users = split.users();
    for (int m = 0; m < users; ++m) {
        if (m == n) continue;
        Xi[m] = -proj.r * split.Lbar(m, n) * proj.R[m];
        xi[m] = proj.R[m] * (state.lambda(m, n) - proj.mu * split.Kbar(m, n)) - state.lambda(m, n);
    }
    Xi[n] = -proj.s;
    xi[n] = split.b[n] - proj.v;
}

/// Beliefs of all auxiliaries at one iteration; column n is belief n.
struct Beliefs {
    cmat xi;
    rmat Xi;

    explicit Beliefs(int users = 0) { resize(users); }
    void resize(int users) {
        xi.resize(users, users);
        Xi.resize(users, users);
    }
};

inline void compute_beliefs(const AuxiliaryState& state, const SplitComponents& split,
                            ProjectionRow& scratch, Beliefs& out) {
    const int users = split.users();
    out.resize(users);
    for (int n = 0; n < users; ++n) {
        aux_moments(state, split, n, scratch);
        aux_beliefs(scratch, state, split, n, out.xi.col(n), out.Xi.col(n));
    }
}

/// Damped update: the objective point absorbs the belief total, each
/// auxiliary the total minus its own belief (all beliefs indexed by the
/// same iteration). Preserves the e-condition exactly.
inline void update(AuxiliaryState& state, const Beliefs& beliefs, double alpha) {
    const cvec xi_total = beliefs.xi.rowwise().sum();
    const rvec Xi_total = beliefs.Xi.rowwise().sum();
    state.lambda0 = (1.0 - alpha) * state.lambda0 + alpha * xi_total;
    state.Lambda0 = (1.0 - alpha) * state.Lambda0 + alpha * Xi_total;
    const int users = static_cast<int>(state.lambda.cols());
    for (int n = 0; n < users; ++n) {
        state.lambda.col(n) =
            (1.0 - alpha) * state.lambda.col(n) + alpha * (xi_total - beliefs.xi.col(n));
        state.Lambda.col(n) =
            (1.0 - alpha) * state.Lambda.col(n) + alpha * (Xi_total - beliefs.Xi.col(n));
    }
    state.iteration += 1;
}

/// One full iteration; returns max |delta lambda0| for stopping tests.
inline double step(AuxiliaryState& state, const SplitComponents& split, ProjectionRow& scratch,
                   Beliefs& beliefs, double alpha) {
    compute_beliefs(state, split, scratch, beliefs);
    const cvec before = state.lambda0;
    update(state, beliefs, alpha);
    return (state.lambda0 - before).cwiseAbs().maxCoeff();
}

/// Residual of the e-condition sum_n (lambda_n, Lambda_n) + (1-N)(lambda0, Lambda0) = 0.
inline double e_condition_residual(const AuxiliaryState& state) {
    const int users = static_cast<int>(state.lambda.cols());
    const cvec lam = state.lambda.rowwise().sum() + (1.0 - users) * state.lambda0;
    const rvec cap = state.Lambda.rowwise().sum() + (1.0 - users) * state.Lambda0;
    return std::max(lam.cwiseAbs().maxCoeff(), cap.cwiseAbs().maxCoeff());
}

/// Objective-manifold moments (Lambda0 + D)^{-1} (lambda0, 1): the
/// detector output. Requires positive diagonal precision.
inline void objective_moments(const AuxiliaryState& state, const SplitComponents& split,
                              cvec& mu, rvec& sigma) {
    const rvec prec = state.Lambda0 + split.D;
    if (!(prec.array() > 0.0).all())
        throw indefinite_state_error("objective precision lost positivity", -1, state.iteration);
    sigma = prec.cwiseInverse();
    mu = state.lambda0.array() * sigma.array();
}

struct IterationTrace {
    int iterations_run = 0;
    bool converged = false;               // early exit triggered by tolerance
    std::vector<double> lambda0_deltas;   // per-iteration max |delta lambda0|
};

struct LinearOutput {
    cvec mu_hat;
    rvec sigma_hat;
    IterationTrace trace;
};

/// Iterations only (precompute and split supplied by the caller).
inline LinearOutput run(const SplitComponents& split, const Config& config) {
    if (config.max_iterations < 1) throw std::invalid_argument("need at least one iteration");
    if (!(config.damping > 0.0 && config.damping <= 1.0))
        throw std::invalid_argument("damping factor must lie in (0, 1]");
    const int users = split.users();
    AuxiliaryState state = make_state(users, config.init);
    ProjectionRow scratch;
    Beliefs beliefs(users);
    LinearOutput out;
    out.trace.lambda0_deltas.reserve(static_cast<std::size_t>(config.max_iterations));
    for (int t = 0; t < config.max_iterations; ++t) {
        const double delta = step(state, split, scratch, beliefs, config.damping);
        out.trace.lambda0_deltas.push_back(delta);
        out.trace.iterations_run = t + 1;
        if (config.tolerance > 0.0 && delta < config.tolerance) {
            out.trace.converged = true;
            break;
        }
    }
    objective_moments(state, split, out.mu_hat, out.sigma_hat);
    return out;
}

/// CS-IGA end to end: Gram/matched filter, cross split, damped iterations,
/// and the diagonal objective readout. Non-convergence within the
/// iteration budget is reported through the trace, not as an error.
inline LinearOutput detect(const DetectionProblem& problem, const Config& config = {}) {
    const PrecomputedGram g = precompute(problem, GramVariant::linear);
    return run(cross_split(g), config);
}

}  // namespace csiga::cs
