// Copyright 2026 The deloc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact Gaussian computations for quadratic targets V(x) = 0.5 x^T A x.
//
// For this family every quantity the library estimates has a closed form:
// the stationary law of LMC, the law of the Langevin diffusion at time t,
// marginals, the Bures (W2) distance and the relative entropy. These are the
// reference values for tests and experiments.

#ifndef DELOC_GAUSSIAN_H_
#define DELOC_GAUSSIAN_H_

#include <random>

#include <Eigen/Dense>

#include "deloc/subset.h"

namespace deloc {

class GaussianLaw {
 public:
  // Validates symmetry (1e-12 relative) and positive definiteness.
  GaussianLaw(Eigen::VectorXd mean, Eigen::MatrixXd cov);

  static GaussianLaw Centered(Eigen::MatrixXd cov);

  int dimension() const { return static_cast<int>(mean_.size()); }
  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& cov() const { return cov_; }

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd cov_;
};

// Eigenvalues of a symmetric positive definite matrix; throws
// std::invalid_argument when A is not symmetric or not positive definite.
Eigen::VectorXd SpdEigenvalues(const Eigen::MatrixXd& a);

// Stationary law of x <- (I - hA) x + sqrt(2h) z: zero mean and covariance
// (A (I - hA/2))^{-1}. Throws std::domain_error when h >= 2 / lambda_max(A).
GaussianLaw LmcStationaryLaw(const Eigen::MatrixXd& a, double h);

// Solves S = B S B^T + Q by the doubling form of the fixed-point iteration
// (S <- S + P S P^T, P <- P^2), stopping once ||P||_2^2 <= 1e-14. Requires
// spectral radius of B below 1. Independent of the closed form above.
Eigen::MatrixXd SolveDiscreteLyapunov(const Eigen::MatrixXd& b, const Eigen::MatrixXd& q);

// || S - (I - hA) S (I - hA) - 2h I ||_F.
double LyapunovResidual(const Eigen::MatrixXd& a, double h, const Eigen::MatrixXd& s);

// Law at time t of dY = -A Y dt + sqrt(2) dB started from `initial`.
GaussianLaw OuLaw(const Eigen::MatrixXd& a, const GaussianLaw& initial, double t);

// Law of the k-th LMC iterate started from `initial`.
GaussianLaw LmcLaw(const Eigen::MatrixXd& a, const GaussianLaw& initial, double h, int k);

// Sub-vector of the mean and principal sub-matrix of the covariance.
GaussianLaw Marginal(const GaussianLaw& law, const Subset& u);

// Squared Bures-Wasserstein distance.
double W2SqGaussian(const GaussianLaw& p, const GaussianLaw& q);

// KL(p || q).
double KlGaussian(const GaussianLaw& p, const GaussianLaw& q);

// Symmetric PSD square root by eigendecomposition. Eigenvalues below zero by
// more than 1e-10 relative to the largest are an error; the rest are clamped.
Eigen::MatrixXd SymmetricSqrt(const Eigen::MatrixXd& m);

// m draws, one per row.
Eigen::MatrixXd SampleGaussian(const GaussianLaw& law, int m, std::mt19937_64& rng);

// Tridiagonal matrix with `diag` on the diagonal and `off` next to it.
Eigen::MatrixXd TridiagonalPrecision(int n, double diag, double off);

}  // namespace deloc

#endif  // DELOC_GAUSSIAN_H_
