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

#include "deloc/gaussian.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace deloc {

namespace {

constexpr double kSymmetryTolerance = 1e-12;
constexpr double kClampTolerance = 1e-10;
constexpr double kLyapunovStop = 1e-14;
constexpr int kLyapunovMaxDoublings = 200;

void CheckSymmetric(const Eigen::MatrixXd& m, const char* what) {
  if (m.rows() != m.cols()) throw std::invalid_argument(std::string(what) + ": not square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance * scale) {
    throw std::invalid_argument(std::string(what) + ": not symmetric");
  }
}

struct SymEig {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

SymEig Decompose(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (a + a.transpose()));
  if (eig.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  return {eig.eigenvalues(), eig.eigenvectors()};
}

Eigen::MatrixXd Reassemble(const SymEig& e, const Eigen::VectorXd& f) {
  return e.vectors * f.asDiagonal() * e.vectors.transpose();
}

// lambda - 1 - log(lambda), accurate near lambda = 1.
double EntropyKernel(double lambda) {
  const double d = lambda - 1.0;
  return d - std::log1p(d);
}

}  // namespace

GaussianLaw::GaussianLaw(Eigen::VectorXd mean, Eigen::MatrixXd cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
  if (cov_.rows() != mean_.size()) {
    throw std::invalid_argument("GaussianLaw: mean and covariance sizes differ");
  }
  CheckSymmetric(cov_, "GaussianLaw covariance");
  cov_ = 0.5 * (cov_ + cov_.transpose());
  Eigen::LLT<Eigen::MatrixXd> llt(cov_);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("GaussianLaw: covariance is not positive definite");
  }
}

GaussianLaw GaussianLaw::Centered(Eigen::MatrixXd cov) {
  const auto n = cov.rows();
  return GaussianLaw(Eigen::VectorXd::Zero(n), std::move(cov));
}

Eigen::VectorXd SpdEigenvalues(const Eigen::MatrixXd& a) {
  CheckSymmetric(a, "precision");
  const auto e = Decompose(a);
  if (e.values.size() == 0 || !(e.values.minCoeff() > 0.0)) {
    throw std::invalid_argument("precision matrix is not positive definite");
  }
  return e.values;
}

GaussianLaw LmcStationaryLaw(const Eigen::MatrixXd& a, double h) {
  CheckSymmetric(a, "LmcStationaryLaw");
  if (!(h > 0.0)) throw std::invalid_argument("LmcStationaryLaw: h must be > 0");
  const auto e = Decompose(a);
  if (!(e.values.minCoeff() > 0.0)) {
    throw std::invalid_argument("LmcStationaryLaw: precision is not positive definite");
  }
  const double lmax = e.values.maxCoeff();
  if (h >= 2.0 / lmax) {
    std::ostringstream os;
    os << "LmcStationaryLaw: unstable step h=" << h << " >= 2/lambda_max(A) = " << 2.0 / lmax;
    throw std::domain_error(os.str());
  }
  const Eigen::VectorXd var =
      (e.values.array() * (1.0 - 0.5 * h * e.values.array())).inverse().matrix();
  return GaussianLaw::Centered(Reassemble(e, var));
}

Eigen::MatrixXd SolveDiscreteLyapunov(const Eigen::MatrixXd& b, const Eigen::MatrixXd& q) {
  if (b.rows() != b.cols() || q.rows() != b.rows() || q.cols() != b.cols()) {
    throw std::invalid_argument("SolveDiscreteLyapunov: size mismatch");
  }
  Eigen::MatrixXd s = q;
  Eigen::MatrixXd p = b;
  for (int it = 0; it < kLyapunovMaxDoublings; ++it) {
    const double norm = p.operatorNorm();
    if (norm * norm <= kLyapunovStop) return 0.5 * (s + s.transpose());
    s += p * s * p.transpose();
    p = (p * p).eval();
  }
  throw std::domain_error("SolveDiscreteLyapunov: iteration did not converge (spectral radius >= 1?)");
}

double LyapunovResidual(const Eigen::MatrixXd& a, double h, const Eigen::MatrixXd& s) {
  const auto n = a.rows();
  const Eigen::MatrixXd b = Eigen::MatrixXd::Identity(n, n) - h * a;
  return (s - b * s * b.transpose() - 2.0 * h * Eigen::MatrixXd::Identity(n, n)).norm();
}

GaussianLaw OuLaw(const Eigen::MatrixXd& a, const GaussianLaw& initial, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("OuLaw: t must be >= 0");
  CheckSymmetric(a, "OuLaw");
  if (a.rows() != initial.dimension()) throw std::invalid_argument("OuLaw: dimension mismatch");
  const auto e = Decompose(a);
  if (!(e.values.minCoeff() > 0.0)) throw std::invalid_argument("OuLaw: A not positive definite");
  const Eigen::VectorXd decay = (-t * e.values.array()).exp().matrix();
  const Eigen::MatrixXd semigroup = Reassemble(e, decay);
  // A^{-1} (I - e^{-2At}); -expm1 keeps small t accurate.
  const Eigen::VectorXd stationary_part =
      ((-(-2.0 * t * e.values.array()).unaryExpr([](double v) { return std::expm1(v); })) /
       e.values.array())
          .matrix();
  Eigen::MatrixXd cov =
      semigroup * initial.cov() * semigroup.transpose() + Reassemble(e, stationary_part);
  return GaussianLaw(semigroup * initial.mean(), 0.5 * (cov + cov.transpose()));
}

GaussianLaw LmcLaw(const Eigen::MatrixXd& a, const GaussianLaw& initial, double h, int k) {
  if (k < 0) throw std::invalid_argument("LmcLaw: k must be >= 0");
  if (a.rows() != initial.dimension()) throw std::invalid_argument("LmcLaw: dimension mismatch");
  const GaussianLaw stationary = LmcStationaryLaw(a, h);
  const auto e = Decompose(a);
  const Eigen::VectorXd contraction =
      (1.0 - h * e.values.array()).pow(static_cast<double>(k)).matrix();
  const Eigen::MatrixXd bk = Reassemble(e, contraction);
  // Sigma_k = B^k (Sigma_0 - Sigma_h) B^k + Sigma_h.
  Eigen::MatrixXd cov = bk * (initial.cov() - stationary.cov()) * bk.transpose() + stationary.cov();
  return GaussianLaw(bk * initial.mean(), 0.5 * (cov + cov.transpose()));
}

GaussianLaw Marginal(const GaussianLaw& law, const Subset& u) {
  if (u.empty()) throw std::invalid_argument("Marginal: empty subset");
  if (u.Bound() > law.dimension()) throw std::invalid_argument("Marginal: subset out of range");
  const std::vector<int> idx = u.Indices();
  const auto k = static_cast<Eigen::Index>(idx.size());
  Eigen::VectorXd mean(k);
  Eigen::MatrixXd cov(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    mean(a) = law.mean()(idx[static_cast<std::size_t>(a)]);
    for (Eigen::Index b = 0; b < k; ++b) {
      cov(a, b) = law.cov()(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
    }
  }
  return GaussianLaw(std::move(mean), std::move(cov));
}

Eigen::MatrixXd SymmetricSqrt(const Eigen::MatrixXd& m) {
  const auto e = Decompose(m);
  const double scale = std::max(e.values.cwiseAbs().maxCoeff(), 0.0);
  Eigen::VectorXd root(e.values.size());
  for (Eigen::Index i = 0; i < e.values.size(); ++i) {
    double v = e.values(i);
    if (v < 0.0) {
      if (-v > kClampTolerance * scale) {
        throw std::invalid_argument("SymmetricSqrt: matrix is not positive semidefinite");
      }
      v = 0.0;
    }
    root(i) = std::sqrt(v);
  }
  return Reassemble(e, root);
}

double W2SqGaussian(const GaussianLaw& p, const GaussianLaw& q) {
  if (p.dimension() != q.dimension()) throw std::invalid_argument("W2SqGaussian: dimension mismatch");
  const Eigen::MatrixXd root_q = SymmetricSqrt(q.cov());
  const Eigen::MatrixXd middle = root_q * p.cov() * root_q;
  const Eigen::MatrixXd cross = SymmetricSqrt(0.5 * (middle + middle.transpose()));
  const double bures = (p.cov() + q.cov() - 2.0 * cross).trace();
  const double mean_part = (p.mean() - q.mean()).squaredNorm();
  return std::max(0.0, mean_part + bures);
}

double KlGaussian(const GaussianLaw& p, const GaussianLaw& q) {
  if (p.dimension() != q.dimension()) throw std::invalid_argument("KlGaussian: dimension mismatch");
  Eigen::LLT<Eigen::MatrixXd> llt(q.cov());
  if (llt.info() != Eigen::Success) throw std::invalid_argument("KlGaussian: reference not SPD");
  const Eigen::MatrixXd l_inv_p = llt.matrixL().solve(p.cov());
  const Eigen::MatrixXd whitened = llt.matrixL().solve(l_inv_p.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (whitened + whitened.transpose()),
                                                      Eigen::EigenvaluesOnly);
  double kl = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    const double lambda = eig.eigenvalues()(i);
    if (!(lambda > 0.0)) throw std::invalid_argument("KlGaussian: covariance not SPD");
    kl += EntropyKernel(lambda);
  }
  const Eigen::VectorXd diff = llt.matrixL().solve(q.mean() - p.mean());
  kl += diff.squaredNorm();
  return std::max(0.0, 0.5 * kl);
}

Eigen::MatrixXd SampleGaussian(const GaussianLaw& law, int m, std::mt19937_64& rng) {
  Eigen::LLT<Eigen::MatrixXd> llt(law.cov());
  const Eigen::MatrixXd l = llt.matrixL();
  std::normal_distribution<double> normal;
  const int n = law.dimension();
  Eigen::MatrixXd out(m, n);
  Eigen::VectorXd z(n);
  for (int r = 0; r < m; ++r) {
    for (int i = 0; i < n; ++i) z(i) = normal(rng);
    out.row(r) = (law.mean() + l * z).transpose();
  }
  return out;
}

Eigen::MatrixXd TridiagonalPrecision(int n, double diag, double off) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = diag;
    if (i + 1 < n) a(i, i + 1) = a(i + 1, i) = off;
  }
  return a;
}

}  // namespace deloc
