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

#include <algorithm>
#include <cmath>
#include <vector>

#include "csiga/constellation.hpp"
#include "csiga/cs_iga.hpp"
#include "csiga/splitting.hpp"
#include "csiga/types.hpp"

// Nonlinear cross-splitting detector. The linear backbone runs on the
// prior-free Gram K = HᴴH / sigma2; an extra auxiliary manifold carries
// the discrete constellation prior. Each iteration collapses the belief
// total into a Gaussian cavity, evaluates per-symbol posteriors against
// it, moment-matches them back to a Gaussian, and feeds the resulting
// prior belief into the per-user parameters. The output is per-symbol
// probabilities and bit LLRs.

namespace csiga::ncs {

using cs::InitMode;

struct Config {
    int max_iterations = 50;
    double damping = 0.5;
    double llr_clip = 30.0;
    InitMode init = InitMode::zero;
    bool disable_prior = false;  // force zero extra beliefs (Gaussian backbone only)
};

/// Per-symbol posterior probabilities and their moment-matched Gaussian.
struct SymbolPosterior {
    rmat eta;          // N x L, rows sum to one
    cvec mu_tilde;     // posterior symbol means
    rvec sigma_tilde;  // posterior symbol variances (floored)
    int floored = 0;   // rows whose variance hit the floor
};

/// Floor applied to moment-matched variances before inversion; a point
/// mass would otherwise produce an infinite prior precision.
inline constexpr double variance_floor = 1e-12;

/// eta(k, l) proportional to exp(-|mu0_k - c_l|^2 / sigma0_k), normalized
/// per row in the log domain with max subtraction, followed by exact
/// moment matching of the discrete posterior.
inline SymbolPosterior symbol_posteriors(const cvec& mu0, const rvec& sigma0,
                                         const Constellation& cons) {
    const int users = static_cast<int>(mu0.size());
    if (sigma0.size() != users) throw std::invalid_argument("moment vector length mismatch");
    if (!(sigma0.array() > 0.0).all())
        throw std::invalid_argument("symbol posterior needs positive variances");
    const int L = cons.order;
    SymbolPosterior sp;
    sp.eta.resize(users, L);
    sp.mu_tilde.resize(users);
    sp.sigma_tilde.resize(users);
    std::vector<double> logw(static_cast<std::size_t>(L));
    for (int k = 0; k < users; ++k) {
        double max_log = -std::numeric_limits<double>::infinity();
        for (int l = 0; l < L; ++l) {
            logw[static_cast<std::size_t>(l)] =
                -std::norm(mu0[k] - cons.points[static_cast<std::size_t>(l)]) / sigma0[k];
            max_log = std::max(max_log, logw[static_cast<std::size_t>(l)]);
        }
        double total = 0.0;
        for (int l = 0; l < L; ++l) {
            const double w = std::exp(logw[static_cast<std::size_t>(l)] - max_log);
            sp.eta(k, l) = w;
            total += w;
        }
        cplx mean(0.0, 0.0);
        for (int l = 0; l < L; ++l) {
            sp.eta(k, l) /= total;
            mean += sp.eta(k, l) * cons.points[static_cast<std::size_t>(l)];
        }
        double var = 0.0;
        for (int l = 0; l < L; ++l)
            var += sp.eta(k, l) * std::norm(cons.points[static_cast<std::size_t>(l)] - mean);
        sp.mu_tilde[k] = mean;
        if (var < variance_floor) {
            var = variance_floor;
            sp.floored += 1;
        }
        sp.sigma_tilde[k] = var;
    }
    return sp;
}

/// Free parameters tied to the extra (prior-bearing) manifold.
struct ExtraState {
    cvec lambda_hat0;  // belief totals absorbed by the extra manifold
    rvec Lambda_hat0;
    cvec xi_e;  // prior beliefs from the most recent prior step
    rvec Xi_e;
};

/// Prior belief: the offset between the moment-matched objective point
/// and the extra manifold's parameters. Returns the objective naturals
/// (theta0 = mu/sigma, full precision 1/sigma) through the out-params so
/// callers can check the extended e-condition against the same values.
inline void extra_beliefs(const SymbolPosterior& sp, const ExtraState& extra, const rvec& D,
                          cvec& xi_e, rvec& Xi_e) {
    if (!(sp.sigma_tilde.array() > 0.0).all())
        throw std::invalid_argument("prior step needs positive matched variances");
    const rvec prior_precision = sp.sigma_tilde.cwiseInverse();
    const cvec prior_theta = sp.mu_tilde.array() * prior_precision.array();
    xi_e = prior_theta - extra.lambda_hat0;
    Xi_e = prior_precision - extra.Lambda_hat0 - D;
}

/// Bit LLRs from per-symbol probabilities: ln of the mass ratio between
/// the bit-0 and bit-1 constellation subsets, clipped to +-clip.
inline rmat llr_from_eta(const SymbolPosterior& sp, const Constellation& cons, double clip) {
    const int users = static_cast<int>(sp.eta.rows());
    const int bits = cons.bits_per_symbol;
    rmat llr(users, bits);
    for (int k = 0; k < users; ++k) {
        for (int i = 0; i < bits; ++i) {
            double p0 = 0.0;
            double p1 = 0.0;
            for (int l = 0; l < cons.order; ++l) {
                if (cons.bit(l, i) == 0)
                    p0 += sp.eta(k, l);
                else
                    p1 += sp.eta(k, l);
            }
            double value;
            if (p0 <= 0.0)
                value = -clip;
            else if (p1 <= 0.0)
                value = clip;
            else
                value = std::log(p0) - std::log(p1);
            llr(k, i) = std::clamp(value, -clip, clip);
        }
    }
    return llr;
}

/// Full detector state: the per-user auxiliaries (the lambda0 slots of
/// the embedded AuxiliaryState are unused here), the extra manifold, and
/// the prior-step values of the current iteration.
struct SoftState {
    cs::AuxiliaryState aux;
    ExtraState extra;
    SymbolPosterior posterior;
    cvec prior_theta0;        // moment-matched objective naturals of this iteration
    rvec prior_Lambda0_free;  // free diagonal parameter: 1/sigma_tilde - D
    long floored_total = 0;
};

inline SoftState make_state(int users, InitMode init) {
    SoftState s;
    s.aux = cs::make_state(users, init);
    s.extra.lambda_hat0 = cvec::Zero(users);
    s.extra.Lambda_hat0 = rvec::Zero(users);
    s.extra.xi_e = cvec::Zero(users);
    s.extra.Xi_e = rvec::Zero(users);
    s.prior_theta0 = cvec::Zero(users);
    s.prior_Lambda0_free = rvec::Zero(users);
    return s;
}

/// Cavity moments of the extra manifold, (Lambda_hat0 + D)^{-1} (lambda_hat0, 1).
inline void cavity_moments(const SoftState& state, const SplitComponents& split, cvec& mu,
                           rvec& sigma) {
    const rvec prec = state.extra.Lambda_hat0 + split.D;
    if (!(prec.array() > 0.0).all())
        throw indefinite_state_error("extra-manifold precision lost positivity", -1,
                                     state.aux.iteration);
    sigma = prec.cwiseInverse();
    mu = state.extra.lambda_hat0.array() * sigma.array();
}

/// One iteration in the statement order of the update rules: linear
/// beliefs, damped belief totals, prior step against the damped cavity,
/// then per-user parameters (damped, with the raw belief total plus the
/// prior belief). Returns max |delta lambda_hat0|.
inline double step(SoftState& state, const SplitComponents& split, const Constellation& cons,
                   const Config& config, cs::ProjectionRow& scratch, cs::Beliefs& beliefs) {
    const double alpha = config.damping;
    const int users = split.users();
    cs::compute_beliefs(state.aux, split, scratch, beliefs);
    const cvec xi_total = beliefs.xi.rowwise().sum();
    const rvec Xi_total = beliefs.Xi.rowwise().sum();

    const cvec hat_before = state.extra.lambda_hat0;
    state.extra.lambda_hat0 = (1.0 - alpha) * state.extra.lambda_hat0 + alpha * xi_total;
    state.extra.Lambda_hat0 = (1.0 - alpha) * state.extra.Lambda_hat0 + alpha * Xi_total;

    if (config.disable_prior) {
        state.extra.xi_e.setZero();
        state.extra.Xi_e.setZero();
    } else {
        cvec mu0;
        rvec sigma0;
        cavity_moments(state, split, mu0, sigma0);
        state.posterior = symbol_posteriors(mu0, sigma0, cons);
        state.floored_total += state.posterior.floored;
        extra_beliefs(state.posterior, state.extra, split.D, state.extra.xi_e, state.extra.Xi_e);
        state.prior_Lambda0_free = state.posterior.sigma_tilde.cwiseInverse() - split.D;
        state.prior_theta0 =
            state.posterior.mu_tilde.array() / state.posterior.sigma_tilde.array();
    }

    for (int n = 0; n < users; ++n) {
        state.aux.lambda.col(n) = (1.0 - alpha) * state.aux.lambda.col(n) +
                                  alpha * (xi_total + state.extra.xi_e - beliefs.xi.col(n));
        state.aux.Lambda.col(n) = (1.0 - alpha) * state.aux.Lambda.col(n) +
                                  alpha * (Xi_total + state.extra.Xi_e - beliefs.Xi.col(n));
    }
    state.aux.iteration += 1;
    return (state.extra.lambda_hat0 - hat_before).cwiseAbs().maxCoeff();
}

/// Residual of the extended e-condition
/// sum_n (lambda_n, Lambda_n) + (lambda_hat0, Lambda_hat0) - N (lambda0, Lambda0) = 0,
/// where (lambda0, Lambda0) are the moment-matched objective parameters of
/// the current iteration (the Lambda side uses the free diagonal, i.e.
/// the matched precision minus D). Exact for undamped updates.
inline double e_condition_residual(const SoftState& state) {
    const int users = static_cast<int>(state.aux.lambda.cols());
    const cvec lam = state.aux.lambda.rowwise().sum() + state.extra.lambda_hat0 -
                     static_cast<double>(users) * state.prior_theta0;
    const rvec cap = state.aux.Lambda.rowwise().sum() + state.extra.Lambda_hat0 -
                     static_cast<double>(users) * state.prior_Lambda0_free;
    return std::max(lam.cwiseAbs().maxCoeff(), cap.cwiseAbs().maxCoeff());
}

struct LlrOutput {
    rmat llr;                    // N x B bit LLRs
    SymbolPosterior eta;         // final per-symbol posteriors
    std::vector<int> hard;       // argmax_l eta(k, l)
    cs::IterationTrace trace;
    long floored = 0;            // variance-floor activations across the run
};

/// Hard symbol decisions from posterior rows; ties break to the lowest index.
inline std::vector<int> hard_decisions(const SymbolPosterior& sp) {
    const int users = static_cast<int>(sp.eta.rows());
    std::vector<int> hard(static_cast<std::size_t>(users));
    for (int k = 0; k < users; ++k) {
        int best = 0;
        for (int l = 1; l < static_cast<int>(sp.eta.cols()); ++l)
            if (sp.eta(k, l) > sp.eta(k, best)) best = l;
        hard[static_cast<std::size_t>(k)] = best;
    }
    return hard;
}

/// NCS-IGA end to end: prior-free Gram, cross split, damped iterations
/// with the symbol prior folded in each round, bit LLRs from the final
/// symbol posteriors.
inline LlrOutput detect_soft(const DetectionProblem& problem, const Config& config = {}) {
    if (config.max_iterations < 1) throw std::invalid_argument("need at least one iteration");
    if (!(config.damping > 0.0 && config.damping <= 1.0))
        throw std::invalid_argument("damping factor must lie in (0, 1]");
    const PrecomputedGram g = precompute(problem, GramVariant::nonlinear);
    const SplitComponents split = cross_split(g);
    const int users = split.users();
    SoftState state = csiga::ncs::make_state(users, config.init);
    cs::ProjectionRow scratch;
    cs::Beliefs beliefs(users);
    LlrOutput out;
    out.trace.lambda0_deltas.reserve(static_cast<std::size_t>(config.max_iterations));
    for (int t = 0; t < config.max_iterations; ++t) {
        const double delta = step(state, split, problem.constellation, config, scratch, beliefs);
        out.trace.lambda0_deltas.push_back(delta);
        out.trace.iterations_run = t + 1;
    }
    out.eta = state.posterior;
    out.llr = llr_from_eta(state.posterior, problem.constellation, config.llr_clip);
    out.hard = hard_decisions(state.posterior);
    out.floored = state.floored_total;
    return out;
}

}  // namespace csiga::ncs
