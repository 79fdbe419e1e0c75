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
#include <numbers>

#include "csiga/types.hpp"

// Exponential-family machinery for circularly symmetric complex Gaussians
//
//   p(x; theta, Theta) = exp{ xᴴtheta + thetaᴴx + xᴴThetaX - psi }
//
// with natural coordinates (theta, Theta), Theta negative definite, and
// expectation coordinates (mu, Sigma) related by the Legendre transform
// mu = -Theta⁻¹theta, Sigma = -Theta⁻¹. Points with diagonal precision
// (the objective manifold) get a compact representation that stores only
// the real diagonals; all transforms are diagonal-in/diagonal-out.

namespace csiga::ig {

struct GaussianNat {
    cvec theta;
    cmat Theta;  // Hermitian, negative definite
};

struct GaussianExp {
    cvec mu;
    cmat Sigma;  // Hermitian, positive definite
};

struct DiagGaussianNat {
    cvec theta;
    rvec Theta;  // diagonal entries, all < 0
};

struct DiagGaussianExp {
    cvec mu;
    rvec Sigma;  // diagonal entries, all > 0
};

namespace detail {

// Cholesky of -Theta; the on-demand negative-definiteness check.
inline Eigen::LLT<cmat> neg_definite_cholesky(const cmat& Theta) {
    Eigen::LLT<cmat> llt(-Theta);
    if (llt.info() != Eigen::Success)
        throw numerical_error("precision matrix is not negative definite");
    return llt;
}

inline double logdet_from_cholesky(const Eigen::LLT<cmat>& llt) {
    return 2.0 * llt.matrixL().toDenseMatrix().diagonal().real().array().log().sum();
}

}  // namespace detail

inline GaussianExp nat_to_exp(const GaussianNat& p) {
    const auto llt = detail::neg_definite_cholesky(p.Theta);
    GaussianExp q;
    q.Sigma = llt.solve(cmat::Identity(p.Theta.rows(), p.Theta.cols()));
    q.mu = llt.solve(p.theta);
    return q;
}

inline DiagGaussianExp nat_to_exp(const DiagGaussianNat& p) {
    if ((p.Theta.array() >= 0.0).any())
        throw numerical_error("diagonal precision must be strictly negative");
    DiagGaussianExp q;
    q.Sigma = -p.Theta.cwiseInverse();
    q.mu = p.theta.array() * q.Sigma.array();
    return q;
}

inline GaussianNat exp_to_nat(const GaussianExp& q) {
    Eigen::LLT<cmat> llt(q.Sigma);
    if (llt.info() != Eigen::Success)
        throw numerical_error("covariance matrix is not positive definite");
    GaussianNat p;
    p.Theta = -llt.solve(cmat::Identity(q.Sigma.rows(), q.Sigma.cols()));
    p.theta = llt.solve(q.mu);
    return p;
}

inline DiagGaussianNat exp_to_nat(const DiagGaussianExp& q) {
    if ((q.Sigma.array() <= 0.0).any())
        throw numerical_error("diagonal covariance must be strictly positive");
    DiagGaussianNat p;
    p.Theta = -q.Sigma.cwiseInverse();
    p.theta = q.mu.array() / q.Sigma.array();
    return p;
}

/// Free energy psi(theta, Theta) = N log(pi) - log det(-Theta) - thetaᴴTheta⁻¹theta.
inline double free_energy(const GaussianNat& p) {
    const auto llt = detail::neg_definite_cholesky(p.Theta);
    const int n = static_cast<int>(p.Theta.rows());
    const double quad = p.theta.dot(llt.solve(p.theta)).real();  // thetaᴴ(-Theta)⁻¹theta
    return n * std::log(std::numbers::pi) - detail::logdet_from_cholesky(llt) + quad;
}

inline double free_energy(const DiagGaussianNat& p) {
    if ((p.Theta.array() >= 0.0).any())
        throw numerical_error("diagonal precision must be strictly negative");
    const int n = static_cast<int>(p.Theta.size());
    return n * std::log(std::numbers::pi) - (-p.Theta).array().log().sum() +
           (p.theta.array().abs2() / (-p.Theta).array()).sum();
}

/// Negative entropy phi(mu, Sigma) = -log det Sigma - N (log pi + 1).
/// The additive constant is pinned so that kl_divergence(P, P) == 0.
inline double negative_entropy(double logdet_sigma, int n) {
    return -logdet_sigma - n * (std::log(std::numbers::pi) + 1.0);
}

/// KL divergence D(Q || P) in mixed coordinates: Q in expectation
/// coordinates (mu2, Sigma2), P in natural coordinates (theta1, Theta1).
inline double kl_divergence(const GaussianExp& q, const GaussianNat& p) {
    if (q.mu.size() != p.theta.size() || q.Sigma.rows() != p.Theta.rows())
        throw std::invalid_argument("KL divergence dimension mismatch");
    const int n = static_cast<int>(q.mu.size());
    Eigen::LLT<cmat> llt_q(q.Sigma);
    if (llt_q.info() != Eigen::Success)
        throw numerical_error("covariance matrix is not positive definite");
    const double logdet_sigma =
        2.0 * llt_q.matrixL().toDenseMatrix().diagonal().real().array().log().sum();
    const double phi = negative_entropy(logdet_sigma, n);
    const double psi = free_energy(p);
    const double cross = 2.0 * q.mu.dot(p.theta).real();  // mu2ᴴtheta1 + theta1ᴴmu2
    const cmat second_moment = q.Sigma + q.mu * q.mu.adjoint();
    const double trace = (second_moment * p.Theta).trace().real();
    return phi + psi - cross - trace;
}

/// m-projection onto the diagonal-precision manifold: the KL minimizer
/// keeps the mean and the diagonal of the covariance.
inline DiagGaussianExp m_project_diag(const GaussianExp& q) {
    DiagGaussianExp out;
    out.mu = q.mu;
    out.Sigma = q.Sigma.diagonal().real();
    return out;
}

inline DiagGaussianExp m_project_diag(const DiagGaussianExp& q) { return q; }

}  // namespace csiga::ig
