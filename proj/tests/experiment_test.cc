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

#include "deloc/experiment.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "deloc/gaussian.h"

namespace deloc {
namespace {

const ExperimentRow* FindRow(const ExperimentReport& r, const std::string& metric, int n = -1) {
  for (const auto& row : r.rows) {
    if (row.metric == metric && (n < 0 || row.n == n)) return &row;
  }
  return nullptr;
}

bool SameBits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

void ExpectIdenticalRows(const ExperimentReport& a, const ExperimentReport& b) {
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].metric, b.rows[i].metric);
    EXPECT_EQ(a.rows[i].subset, b.rows[i].subset);
    EXPECT_TRUE(SameBits(a.rows[i].value, b.rows[i].value)) << a.rows[i].metric << " row " << i;
    EXPECT_EQ(a.rows[i].se.has_value(), b.rows[i].se.has_value());
    if (a.rows[i].se && b.rows[i].se) EXPECT_TRUE(SameBits(*a.rows[i].se, *b.rows[i].se));
  }
}

TEST(ExperimentTest, TypeNamesRoundTrip) {
  for (const char* name : {"gaussian-scaling", "bound-vs-truth", "subadditivity", "continuous-time",
                           "onestep-linf", "sampler-vs-oracle", "delocalization-failure"}) {
    const auto t = ParseExperimentType(name);
    ASSERT_TRUE(t.has_value()) << name;
    EXPECT_EQ(ToString(*t), name);
  }
  EXPECT_FALSE(ParseExperimentType("scaling").has_value());
}

TEST(ExperimentTest, ConfigParsing) {
  const ExperimentConfig c = ParseExperimentConfig(R"({
    "experiment": "gaussian-scaling", "target": {"family": "tridiagonal", "diag": 3, "off": -1},
    "dimensions": [4, 8], "h": [0.01, 0.02], "panel": {"random-k": {"count": 5, "size": 2}},
    "growth": {"c": 3, "p": 1}, "seed": 9})");
  EXPECT_EQ(c.type, ExperimentType::kGaussianScaling);
  EXPECT_EQ(c.target.diag, 3.0);
  EXPECT_EQ(c.dimensions, (std::vector<int>{4, 8}));
  EXPECT_EQ(c.panel.kind, PanelSpec::Kind::kRandomK);
  EXPECT_EQ(*c.growth_c, 3.0);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_FALSE(c.source.empty());
  EXPECT_EQ(c.target.Precision(4), TridiagonalPrecision(4, 3.0, -1.0));
}

TEST(ExperimentTest, ConfigErrors) {
  const char* bad[] = {
      R"({"experiment": "gaussian-scaling", "dimensions": [4], "h": [0.1], "bogus": 1})",
      R"({"experiment": "warp", "dimensions": [4], "h": [0.1]})",
      R"({"experiment": "gaussian-scaling", "dimensions": [], "h": [0.1]})",
      R"({"experiment": "gaussian-scaling", "dimensions": [4], "h": []})",
      R"({"experiment": "gaussian-scaling", "dimensions": [4], "h": [0.1], "panel": {"explicit": []}})",
      R"({"experiment": "onestep-linf", "dimensions": [8], "h": [0.1], "panel": {"explicit": [[0,1,2,3,4]]}})",
      R"({"experiment": "continuous-time", "dimensions": [4], "t": [1], "epsilon": [1.0]})",
      R"({"experiment": "delocalization-failure", "dimensions": [3], "h": [0.1],
          "rotation": {"kind": "explicit", "matrix": [[1, 1, 0], [0, 1, 0], [0, 0, 1]]}})",
      R"({"experiment": "gaussian-scaling", "dimensions": [4], "h": [0.1],
          "target": {"family": "precision", "matrix": [[2, 0], [0, 2]]}})",
  };
  for (const char* text : bad) {
    EXPECT_THROW(ParseExperimentConfig(text), std::invalid_argument) << text;
  }
}

TEST(ExperimentTest, PotentialTargetMustBeGaussian) {
  const ExperimentConfig c = ParseExperimentConfig(R"({
    "experiment": "subadditivity", "dimensions": [3], "h": [0.05],
    "potential": {"n": 3, "terms": [{"kind": "builtin:chain-pairwise",
                                      "params": {"confining": 1.0, "coupling": 0.5}}]}})");
  EXPECT_EQ(c.target.family, TargetSpec::Family::kPotential);
  // 0.5 x^2 confining plus 0.5 b (x_i - x_j)^2 couplings.
  Eigen::Matrix3d expected;
  expected << 1.5, -0.5, 0, -0.5, 2.0, -0.5, 0, -0.5, 1.5;
  EXPECT_LE((c.target.Precision(3) - expected).norm(), 1e-14);
  EXPECT_THROW(ParseExperimentConfig(R"({
    "experiment": "subadditivity", "dimensions": [2], "h": [0.05],
    "potential": {"n": 2, "terms": [{"kind": "builtin:chain-pairwise",
                  "params": {"coupling": 0.5, "shape": "logcosh"}}]}})"),
               std::invalid_argument);
}

TEST(ExperimentTest, DefaultPanelIsSingletonsAndEdges) {
  PanelSpec spec;
  const auto panel = spec.Build(4, InteractionGraph::Path(4), 1);
  ASSERT_EQ(panel.size(), 7u);
  EXPECT_EQ(panel[0], Subset{0});
  EXPECT_EQ(panel[4], (Subset{0, 1}));
  PanelSpec empty;
  empty.kind = PanelSpec::Kind::kExplicit;
  EXPECT_THROW(empty.Build(4, InteractionGraph::Path(4), 1), std::invalid_argument);
}

TEST(ExperimentTest, RotationIsOrthogonal) {
  RotationSpec r;
  const Eigen::MatrixXd q = r.Rotation(9);
  EXPECT_LE((q.transpose() * q - Eigen::MatrixXd::Identity(9, 9)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((q.col(0) - Eigen::VectorXd::Constant(9, 1.0 / 3.0)).norm(), 1e-12);
  RotationSpec bad;
  bad.kind = RotationSpec::Kind::kExplicit;
  bad.matrix = Eigen::Matrix2d::Ones();
  EXPECT_THROW(bad.Rotation(2), std::invalid_argument);
}

TEST(ExperimentTest, GaussianScalingIsDimensionFree) {
  const ExperimentReport r = RunExperiment(ParseExperimentConfig(R"({
    "experiment": "gaussian-scaling", "target": {"family": "tridiagonal", "diag": 2, "off": -0.5},
    "dimensions": [16, 64, 256], "h": [0.01], "panel": "all-singletons", "growth": {"c": 3, "p": 1}})"));
  EXPECT_EQ(r.AcceptanceFailures(), 0);
  const ExperimentRow* relvar = FindRow(r, "relvar:max-w2sq-singleton");
  ASSERT_NE(relvar, nullptr);
  EXPECT_LT(relvar->value, 0.05);
  const ScalingFit full = FitScaling(r, "w2sq-full", Predictor::kN);
  EXPECT_NEAR(full.slope, 1.0, 0.05);
  const ScalingFit single = FitScaling(r, "max-w2sq-singleton", Predictor::kN);
  EXPECT_LT(std::abs(single.slope), 0.05);
  // Every panel row names its bound.
  for (const auto& row : r.rows) {
    if (row.bound) EXPECT_FALSE(row.theorem.empty()) << row.metric;
  }
}

TEST(ExperimentTest, SubadditivityRowsAllHold) {
  const ExperimentReport r = RunExperiment(ParseExperimentConfig(
      R"({"experiment": "subadditivity", "dimensions": [8], "h": [0.05]})"));
  EXPECT_EQ(r.AcceptanceFailures(), 0);
  int rows = 0;
  for (const auto& row : r.rows) {
    if (row.metric == "subadditivity") {
      ++rows;
      EXPECT_TRUE(row.valid.value_or(false)) << row.subset;
    }
  }
  EXPECT_EQ(rows, 8);
  ASSERT_NE(FindRow(r, "subadditivity-equality"), nullptr);
}

TEST(ExperimentTest, BoundVsTruthAtRelativeSteps) {
  const ExperimentReport r = RunExperiment(ParseExperimentConfig(R"({
    "experiment": "bound-vs-truth", "dimensions": [6], "h": [0.25, 0.5, 1.0], "h_relative": true,
    "growth": {"c": 3, "p": 1}})"));
  EXPECT_EQ(r.AcceptanceFailures(), 0);
  int kl = 0;
  for (const auto& row : r.rows) {
    if (row.metric == "kl") {
      ++kl;
      ASSERT_TRUE(row.bound.has_value());
      EXPECT_LE(row.value, *row.bound);
      EXPECT_EQ(row.theorem, "sparse-poly");
    }
  }
  EXPECT_EQ(kl, 3 * 11);  // 6 singletons + 5 edges per step
}

TEST(ExperimentTest, ErrorsBecomeRowsAndRunContinues) {
  const ExperimentReport r = RunExperiment(ParseExperimentConfig(R"({
    "experiment": "subadditivity", "target": {"family": "precision", "matrix": [[4, 0], [0, 1]]},
    "dimensions": [2], "h": [0.1, 0.6]})"));
  const ExperimentRow* err = FindRow(r, "error");
  ASSERT_NE(err, nullptr);
  EXPECT_FALSE(err->error.empty());
  EXPECT_EQ(err->h, 0.6);
  EXPECT_GE(r.AcceptanceFailures(), 1);
  EXPECT_NE(FindRow(r, "subadditivity-equality"), nullptr);
}

TEST(ExperimentTest, ReportsAreDeterministicAcrossThreadCounts) {
  const std::string base = R"({"experiment": "onestep-linf", "target": {"family": "tridiagonal", "diag": 2, "off": -0.3},
    "dimensions": [3, 4], "h": [0.5, 1.0], "h_relative": true, "samples": 128, "resamples": 5, "seed": 17, "threads": )";
  const ExperimentReport one = RunExperiment(ParseExperimentConfig(base + "1}"));
  const ExperimentReport three = RunExperiment(ParseExperimentConfig(base + "3}"));
  const ExperimentReport again = RunExperiment(ParseExperimentConfig(base + "1}"));
  ExpectIdenticalRows(one, three);
  ExpectIdenticalRows(one, again);
  // Empirical rows carry a standard error.
  const ExperimentRow* linf = FindRow(one, "w2sq-linf");
  ASSERT_NE(linf, nullptr);
  ASSERT_TRUE(linf->se.has_value());
  EXPECT_GT(*linf->se, 0.0);
  EXPECT_TRUE(linf->bound.has_value());
  EXPECT_EQ(linf->theorem, "onestep-linf");
}

TEST(ExperimentTest, ContinuousTimeBoundDominates) {
  const ExperimentReport r = RunExperiment(ParseExperimentConfig(R"({
    "experiment": "continuous-time", "dimensions": [5], "epsilon": [0.5], "t": [0.5, 1.5]})"));
  EXPECT_EQ(r.AcceptanceFailures(), 0);
  int rows = 0;
  for (const auto& row : r.rows) {
    if (row.metric.rfind("kl[", 0) == 0) {
      ++rows;
      EXPECT_LE(row.value, *row.bound);
    }
  }
  EXPECT_EQ(rows, 2 * 9);
}

TEST(ExperimentTest, DelocalizationFailureDemo) {
  RotationSpec rot;
  const ExperimentReport r = DelocalizationFailureDemo(rot, 0.1, {8, 32, 128});
  EXPECT_EQ(r.AcceptanceFailures(), 0);
  const ExperimentRow* growth = FindRow(r, "rotated:growth:max-w2sq-singleton");
  ASSERT_NE(growth, nullptr);
  EXPECT_GE(growth->value, 2.0);
  const ExperimentRow* product = FindRow(r, "product:relvar:max-w2sq-singleton");
  ASSERT_NE(product, nullptr);
  EXPECT_LT(product->value, 0.05);

  RotationSpec identity;
  identity.kind = RotationSpec::Kind::kIdentity;
  const ExperimentReport id = DelocalizationFailureDemo(identity, 0.1, {8, 32, 128});
  EXPECT_EQ(id.AcceptanceFailures(), 0);
  EXPECT_NE(FindRow(id, "rotated:relvar:max-w2sq-singleton"), nullptr);

  const ExperimentReport tiny = DelocalizationFailureDemo(rot, 1e-9, {8, 32});
  for (const auto& row : tiny.rows) {
    if (row.metric.find("max-w2sq-singleton") != std::string::npos && row.metric.find(':') == row.metric.rfind(':')) {
      EXPECT_LT(row.value, 1e-12) << row.metric;
    }
  }
}

TEST(ExperimentTest, FitScalingOnSyntheticRows) {
  ExperimentReport r;
  for (double h : {0.01, 0.02, 0.05, 0.1}) {
    ExperimentRow row;
    row.metric = "kl";
    row.h = h;
    row.n = 4;
    row.subset = "{0 1}";
    row.value = 7 * h;
    r.rows.push_back(row);
  }
  const ScalingFit fit = FitScaling(r, "kl", Predictor::kH);
  EXPECT_NEAR(fit.slope, 1.0, 1e-6);
  EXPECT_NEAR(std::exp(fit.intercept), 7.0, 1e-9);
  EXPECT_NEAR(fit.r2, 1.0, 1e-12);
  EXPECT_EQ(fit.points, 4);
  EXPECT_THROW(FitScaling(r, "kl", Predictor::kUsize), std::invalid_argument);  // constant predictor
  EXPECT_THROW(FitScaling(r, "missing", Predictor::kH), std::invalid_argument);
}

TEST(ExperimentTest, FitLogLogErrors) {
  const std::vector<double> x{1, 2, 4}, y{1, 0, 3}, two{1, 2};
  EXPECT_THROW(FitLogLog(x, y), std::invalid_argument);
  EXPECT_THROW(FitLogLog(two, two), std::invalid_argument);
  const std::vector<double> flat{5, 5, 5};
  const ScalingFit f = FitLogLog(x, flat);
  EXPECT_NEAR(f.slope, 0.0, 1e-15);
  EXPECT_EQ(f.r2, 1.0);
}

TEST(ExperimentTest, GitBlobHash) {
  EXPECT_EQ(GitBlobHash(""), "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
  EXPECT_EQ(GitBlobHash("hello\n"), "ce013625030ba8dba906f756967f9e9ca394464a");
}

TEST(ExperimentTest, CsvSidecarAndGnuplotOutput) {
  const ExperimentReport r = RunExperiment(ParseExperimentConfig(
      R"({"experiment": "subadditivity", "dimensions": [4], "h": [0.05]})"));
  std::ostringstream csv;
  WriteReportCsv(r, csv);
  std::istringstream lines(csv.str());
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  EXPECT_EQ(header, "experiment,n,h,subset,metric,value,se,bound,theorem,valid");
  EXPECT_EQ(first.rfind("subadditivity,4,0.05,", 0), 0u) << first;
  EXPECT_EQ(std::count(first.begin(), first.end(), ','), 9);

  const auto side = nlohmann::json::parse(ReportSidecarJson(r));
  EXPECT_EQ(side["config_hash"], GitBlobHash(r.config_json));
  EXPECT_TRUE(side.contains("environment"));
  EXPECT_EQ(side["rows"], r.rows.size());

  const auto dir = std::filesystem::temp_directory_path() / "deloc_experiment_test";
  std::filesystem::create_directories(dir);
  const auto files = WriteGnuplotFiles(r, dir / "run");
  ASSERT_FALSE(files.empty());
  for (const auto& f : files) {
    EXPECT_TRUE(std::filesystem::exists(f)) << f;
    EXPECT_EQ(f.extension(), ".dat");
  }
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace deloc
