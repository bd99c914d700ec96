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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.h"

namespace deloc {
namespace {

GaussianLaw RandomLaw(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXd m(n);
  for (int i = 0; i < n; ++i) m(i) = g(rng);
  return GaussianLaw(m, oracle::RandomSpd(n, 0.2, 3.0, rng));
}

TEST(GaussianTest, StationaryLawOneDimensional) {
  const GaussianLaw pi_h = LmcStationaryLaw(Eigen::MatrixXd::Identity(1, 1), 0.1);
  EXPECT_NEAR(pi_h.cov()(0, 0), 1.0 / 0.95, 1e-14);
  EXPECT_NEAR(pi_h.cov()(0, 0), oracle::ScalarLmcVariance(1.0, 0.1), 1e-12);
  EXPECT_EQ(pi_h.mean(), Eigen::VectorXd::Zero(1));
}

TEST(GaussianTest, StationaryLawSmallStepLimit) {
  const Eigen::MatrixXd a = TridiagonalPrecision(5, 2.0, -0.5);
  const Eigen::MatrixXd inv = a.inverse();
  EXPECT_LE((LmcStationaryLaw(a, 1e-8).cov() - inv).norm(), 1e-6 * inv.norm());
}

TEST(GaussianTest, StationaryLawMatchesLyapunovIteration) {
  const Eigen::MatrixXd a = TridiagonalPrecision(4, 2.0, -0.5);
  const Eigen::MatrixXd s = LmcStationaryLaw(a, 0.05).cov();
  EXPECT_LE((s - oracle::LyapunovFixedPoint(a, 0.05)).norm(), 1e-10);
  EXPECT_LE(LyapunovResidual(a, 0.05, s), 1e-10);
}

TEST(GaussianTest, DoublingSolverAgreesWithClosedForm) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial;
    const Eigen::MatrixXd a = oracle::RandomSpd(n, 0.3, 2.0, rng);
    const double h = 0.2;
    const Eigen::MatrixXd b = Eigen::MatrixXd::Identity(n, n) - h * a;
    const Eigen::MatrixXd q = 2 * h * Eigen::MatrixXd::Identity(n, n);
    EXPECT_LE((SolveDiscreteLyapunov(b, q) - LmcStationaryLaw(a, h).cov()).norm(), 1e-10);
  }
}

TEST(GaussianTest, StationaryLawRejectsUnstableStep) {
  const Eigen::MatrixXd a = Eigen::Vector2d(1.0, 4.0).asDiagonal();
  EXPECT_THROW(LmcStationaryLaw(a, 0.5), std::domain_error);
  EXPECT_NO_THROW(LmcStationaryLaw(a, 0.49));
  try {
    LmcStationaryLaw(a, 0.6);
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("2"), std::string::npos);
  }
}

TEST(GaussianTest, LyapunovResidualOnRandomInstances) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial;
    const Eigen::MatrixXd a = oracle::RandomSpd(n, 0.1, 5.0, rng);
    const double h = 0.3 / 5.0;
    EXPECT_LE(LyapunovResidual(a, h, LmcStationaryLaw(a, h).cov()), 1e-10);
  }
}

TEST(GaussianTest, OuLawEndpoints) {
  const Eigen::MatrixXd a = TridiagonalPrecision(3, 2.0, -0.5);
  std::mt19937_64 rng(1);
  const GaussianLaw init = RandomLaw(3, rng);
  const GaussianLaw at0 = OuLaw(a, init, 0.0);
  EXPECT_LE((at0.cov() - init.cov()).norm(), 1e-14);
  EXPECT_LE((at0.mean() - init.mean()).norm(), 1e-14);
  const double lmin = SpdEigenvalues(a).minCoeff();
  const GaussianLaw late = OuLaw(a, init, 50.0 / lmin);
  EXPECT_LE((late.cov() - a.inverse()).norm(), 1e-10);
  EXPECT_LE(late.mean().norm(), 1e-10);
}

TEST(GaussianTest, OuLawScalar) {
  const GaussianLaw law = OuLaw(Eigen::MatrixXd::Constant(1, 1, 2.0),
                                GaussianLaw::Centered(Eigen::MatrixXd::Identity(1, 1)), 0.5);
  const double expected = std::exp(-2.0) + 0.5 * (1.0 - std::exp(-2.0));
  EXPECT_NEAR(law.cov()(0, 0), expected, 1e-14);
  EXPECT_NEAR(expected, 0.567667, 1e-6);
}

TEST(GaussianTest, OuLawMatchesTaylorExponential) {
  std::mt19937_64 rng(12);
  const Eigen::MatrixXd a = oracle::RandomSpd(4, 0.5, 2.0, rng);
  const GaussianLaw init = RandomLaw(4, rng);
  const double t = 0.7;
  const Eigen::MatrixXd e = oracle::ExpmTaylor(-t * a);
  const Eigen::MatrixXd e2 = oracle::ExpmTaylor(-2 * t * a);
  const Eigen::MatrixXd cov =
      e * init.cov() * e + a.inverse() * (Eigen::MatrixXd::Identity(4, 4) - e2);
  const GaussianLaw law = OuLaw(a, init, t);
  EXPECT_LE((law.cov() - cov).norm(), 1e-11);
  EXPECT_LE((law.mean() - e * init.mean()).norm(), 1e-12);
}

TEST(GaussianTest, LmcLawConvergesToStationary) {
  const Eigen::MatrixXd a = TridiagonalPrecision(4, 2.0, -0.5);
  const GaussianLaw init = GaussianLaw::Centered(2.0 * a.inverse());
  const GaussianLaw k0 = LmcLaw(a, init, 0.1, 0);
  EXPECT_LE((k0.cov() - init.cov()).norm(), 1e-15);
  // One step by hand.
  const Eigen::MatrixXd b = Eigen::MatrixXd::Identity(4, 4) - 0.1 * a;
  const Eigen::MatrixXd one = b * init.cov() * b + 0.2 * Eigen::MatrixXd::Identity(4, 4);
  EXPECT_LE((LmcLaw(a, init, 0.1, 1).cov() - one).norm(), 1e-13);
  EXPECT_LE((LmcLaw(a, init, 0.1, 2000).cov() - LmcStationaryLaw(a, 0.1).cov()).norm(), 1e-10);
}

TEST(GaussianTest, MarginalSlices) {
  std::mt19937_64 rng(2);
  const GaussianLaw law = RandomLaw(4, rng);
  const GaussianLaw full = Marginal(law, Subset::Full(4));
  EXPECT_EQ(full.cov(), law.cov());
  const GaussianLaw m = Marginal(law, Subset{1, 3});
  EXPECT_EQ(m.cov()(0, 1), law.cov()(1, 3));
  EXPECT_EQ(m.mean()(1), law.mean()(3));
  EXPECT_THROW(Marginal(law, Subset{}), std::invalid_argument);
  EXPECT_THROW(Marginal(law, Subset{4}), std::invalid_argument);
}

TEST(GaussianTest, MarginalMatchesMonteCarloCovariance) {
  Eigen::Matrix3d cov;
  cov << 1.0, 0.5, 0.2, 0.5, 2.0, -0.3, 0.2, -0.3, 1.5;
  const GaussianLaw law = GaussianLaw::Centered(cov);
  std::mt19937_64 rng(77);
  const int m = 1000000;
  const Eigen::MatrixXd x = SampleGaussian(law, m, rng);
  const GaussianLaw marg = Marginal(law, Subset{0, 2});
  // Entry (0, 2): sample covariance of the product, SE from the product's variance.
  std::vector<double> prod(static_cast<std::size_t>(m)), sq0(prod.size()), sq2(prod.size());
  for (int r = 0; r < m; ++r) {
    prod[static_cast<std::size_t>(r)] = x(r, 0) * x(r, 2);
    sq0[static_cast<std::size_t>(r)] = x(r, 0) * x(r, 0);
    sq2[static_cast<std::size_t>(r)] = x(r, 2) * x(r, 2);
  }
  const auto p = oracle::Summarize(prod), s0 = oracle::Summarize(sq0), s2 = oracle::Summarize(sq2);
  EXPECT_LE(std::abs(p.mean - marg.cov()(0, 1)), 3 * p.se);
  EXPECT_LE(std::abs(s0.mean - marg.cov()(0, 0)), 3 * s0.se);
  EXPECT_LE(std::abs(s2.mean - marg.cov()(1, 1)), 3 * s2.se);
}

TEST(GaussianTest, BuresBasics) {
  std::mt19937_64 rng(5);
  const GaussianLaw p = RandomLaw(3, rng);
  EXPECT_NEAR(W2SqGaussian(p, p), 0.0, 1e-12);
  const auto n1 = GaussianLaw::Centered(Eigen::MatrixXd::Constant(1, 1, 4.0));
  const auto n2 = GaussianLaw::Centered(Eigen::MatrixXd::Constant(1, 1, 2.25));
  EXPECT_NEAR(W2SqGaussian(n1, n2), 0.25, 1e-15);
}

TEST(GaussianTest, OneDimensionalLmcBias) {
  const GaussianLaw pi_h = LmcStationaryLaw(Eigen::MatrixXd::Identity(1, 1), 0.1);
  const GaussianLaw pi = GaussianLaw::Centered(Eigen::MatrixXd::Identity(1, 1));
  const double w = W2SqGaussian(pi_h, pi);
  EXPECT_NEAR(w, std::pow(std::sqrt(1.0 / 0.95) - 1.0, 2), 1e-15);
  EXPECT_NEAR(w, 6.748748e-4, 1e-9);
  const double kl = KlGaussian(pi_h, pi);
  const double s2 = 1.0 / 0.95;
  EXPECT_NEAR(kl, 0.5 * (s2 - 1.0 - std::log(s2)), 1e-15);
  EXPECT_NEAR(kl, 6.691423e-4, 1e-9);
}

TEST(GaussianTest, BuresMatchesCommutingFormula) {
  std::mt19937_64 rng(8);
  const Eigen::MatrixXd q = oracle::RandomSpd(5, 1.0, 1.0, rng);  // identity up to rounding
  Eigen::MatrixXd basis = Eigen::HouseholderQR<Eigen::MatrixXd>(oracle::RandomSpd(5, 0.5, 2.0, rng)).householderQ();
  const Eigen::VectorXd l1 = Eigen::VectorXd::LinSpaced(5, 0.5, 3.0);
  const Eigen::VectorXd l2 = Eigen::VectorXd::LinSpaced(5, 2.0, 0.7);
  const GaussianLaw p = GaussianLaw::Centered(basis * l1.asDiagonal() * basis.transpose());
  const GaussianLaw r = GaussianLaw::Centered(basis * l2.asDiagonal() * basis.transpose());
  EXPECT_NEAR(W2SqGaussian(p, r), oracle::W2Commuting(l1, l2), 1e-10);
  (void)q;
}

TEST(GaussianTest, KlMatchesDeterminantForm) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 6;
    const GaussianLaw p = RandomLaw(n, rng), q = RandomLaw(n, rng);
    EXPECT_NEAR(KlGaussian(p, q), oracle::KlTextbook(p.mean(), p.cov(), q.mean(), q.cov()), 1e-10);
  }
  std::mt19937_64 r2(1);
  const GaussianLaw p = RandomLaw(3, r2);
  EXPECT_NEAR(KlGaussian(p, p), 0.0, 1e-13);
  EXPECT_THROW(KlGaussian(p, RandomLaw(2, r2)), std::invalid_argument);
}

TEST(GaussianTest, TalagrandInequalityForStronglyLogConcaveReference) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 5;
    const Eigen::MatrixXd a = oracle::RandomSpd(n, 0.5, 3.0, rng);
    const double alpha = SpdEigenvalues(a).minCoeff();
    const GaussianLaw ref = GaussianLaw::Centered(a.inverse());
    const GaussianLaw p = RandomLaw(n, rng);
    EXPECT_LE(0.5 * alpha * W2SqGaussian(p, ref), KlGaussian(p, ref) + 1e-12);
  }
}

TEST(GaussianTest, DataProcessingForMarginals) {
  std::mt19937_64 rng(33);
  std::uniform_int_distribution<int> pick(0, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const GaussianLaw p = RandomLaw(5, rng), q = RandomLaw(5, rng);
    const Subset u{pick(rng), pick(rng)};
    EXPECT_LE(KlGaussian(Marginal(p, u), Marginal(q, u)), KlGaussian(p, q) + 1e-12);
  }
}

TEST(GaussianTest, BuresSymmetryAndTriangle) {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 50; ++trial) {
    const GaussianLaw a = RandomLaw(3, rng), b = RandomLaw(3, rng), c = RandomLaw(3, rng);
    const double ab = W2SqGaussian(a, b), ba = W2SqGaussian(b, a);
    EXPECT_NEAR(ab, ba, 1e-9);
    EXPECT_LE(std::sqrt(ab), std::sqrt(W2SqGaussian(a, c)) + std::sqrt(W2SqGaussian(c, b)) + 1e-9);
  }
}

TEST(GaussianTest, OneDimensionalBiasIncreasesWithStep) {
  const Eigen::MatrixXd a = Eigen::MatrixXd::Constant(1, 1, 1.0);
  const GaussianLaw pi = GaussianLaw::Centered(Eigen::MatrixXd::Identity(1, 1));
  double prev = 0.0;
  for (int i = 1; i < 100; ++i) {
    const double w = W2SqGaussian(LmcStationaryLaw(a, 0.01 * i), pi);
    EXPECT_GT(w, prev);
    prev = w;
  }
}

TEST(GaussianTest, ValidationErrors) {
  Eigen::Matrix2d asym;
  asym << 1, 0.5, 0, 1;
  EXPECT_THROW(GaussianLaw::Centered(asym), std::invalid_argument);
  EXPECT_THROW(GaussianLaw::Centered(-Eigen::Matrix2d::Identity()), std::invalid_argument);
  EXPECT_THROW(SpdEigenvalues(asym), std::invalid_argument);
  Eigen::Matrix2d neg;
  neg << 1, 0, 0, -0.5;
  EXPECT_THROW(SymmetricSqrt(neg), std::invalid_argument);
}

TEST(GaussianTest, SymmetricSqrtSquaresBack) {
  std::mt19937_64 rng(6);
  const Eigen::MatrixXd m = oracle::RandomSpd(6, 0.1, 4.0, rng);
  const Eigen::MatrixXd r = SymmetricSqrt(m);
  EXPECT_LE((r * r - m).norm(), 1e-12);
}

}  // namespace
}  // namespace deloc
