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

#include "deloc/sampler.h"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "deloc/gaussian.h"
#include "deloc/sample_io.h"
#include "oracles.h"

namespace deloc {
namespace {

StructuredPotential Scalar(double a) { return GaussianPotential(Eigen::MatrixXd::Constant(1, 1, a)); }

// Batch-means standard error of the mean of x (batches of equal length).
oracle::MeanSe BatchMeans(const Eigen::VectorXd& x, int batches) {
  const Eigen::Index len = x.size() / batches;
  std::vector<double> means;
  for (int b = 0; b < batches; ++b) means.push_back(x.segment(b * len, len).mean());
  return oracle::Summarize(means);
}

TEST(SamplerTest, ZeroStepIsIdentity) {
  const auto pot = GaussianPotential(TridiagonalPrecision(3, 2.0, -0.5));
  const Eigen::Vector3d x(1, 2, 3);
  EXPECT_EQ(LmcStep(pot, x, 0.0, Eigen::Vector3d(5, 5, 5)), x);
}

TEST(SamplerTest, DeterministicContraction) {
  EXPECT_NEAR(LmcStep(Scalar(1.0), Eigen::VectorXd::Ones(1), 0.1, Eigen::VectorXd::Zero(1))(0), 0.9, 1e-15);
}

TEST(SamplerTest, QuadraticStepIsAffine) {
  std::mt19937_64 rng(3);
  const Eigen::MatrixXd a = oracle::RandomSpd(5, 0.5, 2.0, rng);
  const auto pot = GaussianPotential(a);
  const double h = 0.05;
  const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(5, -1, 1);
  const Eigen::VectorXd z = Eigen::VectorXd::LinSpaced(5, 0.3, -0.8);
  const Eigen::VectorXd expected = (Eigen::MatrixXd::Identity(5, 5) - h * a) * x + std::sqrt(2 * h) * z;
  EXPECT_LE((LmcStep(pot, x, h, z) - expected).norm(), 1e-14);
}

TEST(SamplerTest, ComposedStepsMatchAffineMap) {
  std::mt19937_64 rng(4);
  const Eigen::MatrixXd a = oracle::RandomSpd(4, 0.5, 2.0, rng);
  const auto pot = GaussianPotential(a);
  const double h = 0.1;
  const Eigen::MatrixXd b = Eigen::MatrixXd::Identity(4, 4) - h * a;
  std::normal_distribution<double> g;
  Eigen::VectorXd x = Eigen::VectorXd::Ones(4), y = x;
  for (int k = 0; k < 200; ++k) {
    Eigen::VectorXd z(4);
    for (int i = 0; i < 4; ++i) z(i) = g(rng);
    x = LmcStep(pot, x, h, z);
    y = b * y + std::sqrt(2 * h) * z;
  }
  EXPECT_LE((x - y).norm(), 1e-10);
}

TEST(SamplerTest, NonFiniteGradientFaults) {
  std::vector<FactorTerm> terms{FactorTerm::Callable(
      {0}, [](const Eigen::VectorXd&) { return 0.0; },
      [](const Eigen::VectorXd&) { return Eigen::VectorXd::Constant(1, NAN); }, 1.0, "nan")};
  const StructuredPotential pot(1, std::move(terms));
  EXPECT_THROW(LmcStep(pot, Eigen::VectorXd::Zero(1), 0.1, Eigen::VectorXd::Zero(1)), SamplerError);
  SamplerConfig cfg;
  cfg.iterations = 10;
  try {
    RunChain(pot, cfg, Eigen::VectorXd::Zero(1));
    FAIL() << "expected SamplerError";
  } catch (const SamplerError& e) {
    EXPECT_EQ(e.chain(), 0);
  }
}

TEST(SamplerTest, DivergenceIsDetected) {
  SamplerConfig cfg;
  cfg.h = 3.0;  // 1 - h a = -2: the chain blows up geometrically.
  cfg.iterations = 200;
  EXPECT_THROW(RunChain(Scalar(1.0), cfg, Eigen::VectorXd::Ones(1)), SamplerError);
}

TEST(SamplerTest, RowCountAndDeterminism) {
  SamplerConfig cfg;
  cfg.h = 0.1;
  cfg.iterations = 1003;
  cfg.burn_in = 100;
  cfg.thinning = 7;
  cfg.num_chains = 3;
  cfg.seed = 99;
  const auto pot = GaussianPotential(TridiagonalPrecision(3, 2.0, -0.5));
  const SampleStore a = RunChain(pot, cfg, Eigen::VectorXd::Zero(3));
  EXPECT_EQ(a.rows_per_chain, (1003 - 100 + 6) / 7);
  EXPECT_EQ(a.data.rows(), 3 * a.rows_per_chain);
  cfg.threads = 1;
  const SampleStore b = RunChain(pot, cfg, Eigen::VectorXd::Zero(3));
  EXPECT_EQ(a.data, b.data);
  // A chain's stream does not depend on how many chains run.
  cfg.num_chains = 1;
  const SampleStore c = RunChain(pot, cfg, Eigen::VectorXd::Zero(3));
  EXPECT_EQ(c.Chain(0), a.Chain(0));
}

TEST(SamplerTest, BurnInDefaultsToTenPercent) {
  SamplerConfig cfg;
  cfg.iterations = 1000;
  EXPECT_EQ(cfg.BurnIn(), 100);
  cfg.substeps = 4;
  EXPECT_THROW(cfg.Validate(), std::invalid_argument);
}

TEST(SamplerTest, CertifiedStepOnlyWarns) {
  SamplerConfig cfg;
  cfg.h = 0.2;
  cfg.iterations = 10;
  cfg.certified_h = 0.1;
  const SampleStore s = RunChain(Scalar(1.0), cfg, Eigen::VectorXd::Zero(1));
  EXPECT_FALSE(s.warnings.empty());
}

TEST(SamplerTest, OneDimensionalStationaryVariance) {
  SamplerConfig cfg;
  cfg.h = 0.1;
  cfg.iterations = 1000000;
  cfg.burn_in = 1000;
  cfg.seed = 5;
  const SampleStore s = RunChain(Scalar(1.0), cfg, Eigen::VectorXd::Zero(1));
  const Eigen::VectorXd x = s.data.col(0);
  const auto var = BatchMeans(x.array().square(), 50);
  const auto mean = BatchMeans(x, 50);
  const double target = oracle::ScalarLmcVariance(1.0, 0.1);
  EXPECT_NEAR(target, 1.0526315789, 1e-9);
  EXPECT_LE(std::abs(var.mean - target), 3 * var.se);
  EXPECT_LE(std::abs(mean.mean), 4 * mean.se);
}

TEST(SamplerTest, LangevinReferenceApproachesDiffusion) {
  SamplerConfig cfg;
  cfg.h = 0.1;
  cfg.mode = SamplerMode::kLangevinReference;
  cfg.substeps = 64;
  cfg.iterations = 200000;
  cfg.burn_in = 1000;
  cfg.seed = 6;
  const SampleStore s = RunChain(Scalar(1.0), cfg, Eigen::VectorXd::Zero(1));
  const auto var = BatchMeans(s.data.col(0).array().square(), 50);
  // Euler bias at h/m is 1/(1 - h/2m) - 1 ~ 8e-4, well inside the noise.
  EXPECT_LE(std::abs(var.mean - 1.0), 3 * var.se);
}

TEST(SamplerTest, MarginalSamplesSliceColumns) {
  SamplerConfig cfg;
  cfg.h = 0.1;
  cfg.iterations = 5000;
  const auto pot = GaussianPotential(TridiagonalPrecision(4, 2.0, -0.5));
  const SampleStore s = RunChain(pot, cfg, Eigen::VectorXd::Zero(4));
  EXPECT_EQ(MarginalSamples(s, Subset::Full(4)), s.data);
  EXPECT_EQ(MarginalSamples(s, Subset{1}), s.data.col(1));
  const Eigen::MatrixXd m = MarginalSamples(s, Subset{0, 2});
  const Eigen::MatrixXd cf = s.data.rowwise() - s.data.colwise().mean();
  const Eigen::MatrixXd cm = m.rowwise() - m.colwise().mean();
  const Eigen::MatrixXd full_cov = cf.transpose() * cf;
  const Eigen::MatrixXd sub_cov = cm.transpose() * cm;
  EXPECT_NEAR(sub_cov(0, 1), full_cov(0, 2), 1e-12 * full_cov.norm());
  EXPECT_THROW(MarginalSamples(s, Subset{4}), std::invalid_argument);
}

TEST(SampleIoTest, BinaryRoundTrip) {
  SamplerConfig cfg;
  cfg.h = 0.05;
  cfg.iterations = 300;
  cfg.num_chains = 2;
  cfg.seed = 12;
  const auto pot = GaussianPotential(TridiagonalPrecision(3, 2.0, -0.5));
  const SampleStore s = RunChain(pot, cfg, Eigen::VectorXd::Zero(3));
  const auto path = std::filesystem::temp_directory_path() / "deloc_sample_io_test.bin";
  WriteSampleStore(s, path);
  const SampleStore r = ReadSampleStore(path);
  std::filesystem::remove(path);
  EXPECT_EQ(r.data, s.data);
  EXPECT_EQ(r.n, 3);
  EXPECT_EQ(r.num_chains, 2);
  EXPECT_EQ(r.potential_hash, pot.Hash());
  EXPECT_EQ(r.config.seed, 12u);
  std::ostringstream csv;
  WriteSampleStoreCsv(s, csv);
  EXPECT_EQ(csv.str().rfind("chain,row,x0,x1,x2\n", 0), 0u);
}

}  // namespace
}  // namespace deloc
