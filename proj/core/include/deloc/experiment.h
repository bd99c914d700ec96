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

// Config-driven experiments. A run sweeps every (n, h) cell of the config on
// a worker pool, each cell seeded from (seed, cell index), and assembles the
// rows in cell order so the thread count never changes the report.
//
// Config (JSON):
//   {
//     "experiment": "gaussian-scaling" | "bound-vs-truth" | "subadditivity" |
//                   "continuous-time" | "onestep-linf" | "sampler-vs-oracle" |
//                   "delocalization-failure",
//     "target": {"family": "tridiagonal", "diag": 2, "off": -0.5}
//             | {"family": "precision", "matrix": [[...], ...]}
//             | {"family": "potential", "spec": {...} | "path/to/potential.json"},
//     "dimensions": [16, 64, 256],
//     "h": [0.01],
//     "h_relative": false,          // h as fractions of h* (bound-vs-truth) or 1/beta
//     "panel": "default" | "all-singletons" | "all-pairs"
//            | {"random-k": {"count": 10, "size": 2}} | {"explicit": [[0], [0, 1]]},
//     "gamma": 1, "growth": {"c": 3, "p": 1},
//     "epsilon": [0.5], "t": [0.5], "initial_scale": 2,   // continuous-time
//     "k": [1, 2],                                        // subadditivity
//     "samples": 2048, "resamples": 20,                   // empirical metrics
//     "sampler": {"iterations": 500000, "chains": 4, "thinning": 60, "burn_in": 5000},
//     "rotation": {"kind": "all-ones", "weak": 0.05, "strong": 4},
//     "seed": 1, "threads": 0, "output": "out/run"
//   }
// The "potential" family needs an all-quadratic potential, i.e. a Gaussian.

#ifndef DELOC_EXPERIMENT_H_
#define DELOC_EXPERIMENT_H_

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "deloc/graph.h"
#include "deloc/potential.h"
#include "deloc/sampler.h"
#include "deloc/scaling.h"
#include "deloc/subset.h"

namespace deloc {

enum class ExperimentType {
  kGaussianScaling,
  kBoundVsTruth,
  kSubadditivity,
  kContinuousTime,
  kOnestepLinf,
  kSamplerVsOracle,
  kDelocalizationFailure,
};

std::string ToString(ExperimentType t);
std::optional<ExperimentType> ParseExperimentType(const std::string& name);

struct TargetSpec {
  enum class Family { kTridiagonal, kPrecision, kPotential };
  Family family = Family::kTridiagonal;
  double diag = 2.0;
  double off = -0.5;
  Eigen::MatrixXd matrix;  // kPrecision and kPotential (fixed dimension)

  // Throws std::invalid_argument when a fixed-size target is asked for another n.
  Eigen::MatrixXd Precision(int n) const;
};

// Assembles the precision matrix of an all-quadratic potential; throws for
// callable factors.
Eigen::MatrixXd PrecisionFromPotential(const StructuredPotential& pot);

// Interaction graph of x^T A x / 2: edge ij iff A_ij != 0.
InteractionGraph GraphFromPrecision(const Eigen::MatrixXd& a);

struct PanelSpec {
  enum class Kind { kDefault, kSingletons, kPairs, kRandomK, kExplicit };
  Kind kind = Kind::kDefault;
  int count = 0;
  int size = 0;
  std::vector<std::vector<int>> subsets;

  // kDefault: all singletons, then every edge of `g`.
  std::vector<Subset> Build(int n, const InteractionGraph& g, std::uint64_t seed) const;
};

struct RotationSpec {
  enum class Kind { kIdentity, kAllOnes, kExplicit };
  Kind kind = Kind::kAllOnes;
  // Product precision diag(weak, strong, ..., strong).
  double weak = 0.05;
  double strong = 4.0;
  Eigen::MatrixXd matrix;  // kExplicit

  // Q with Q e_1 = 1/sqrt(n) for kAllOnes (a Householder reflection).
  // Throws std::invalid_argument unless ||Q^T Q - I||_max <= 1e-10.
  Eigen::MatrixXd Rotation(int n) const;
  // Q diag(weak, strong, ...) Q^T.
  Eigen::MatrixXd Precision(int n) const;
};

struct ExperimentConfig {
  ExperimentType type = ExperimentType::kGaussianScaling;
  TargetSpec target;
  std::vector<int> dimensions;
  std::vector<double> h;
  bool h_relative = false;
  PanelSpec panel;
  double gamma = 1.0;
  // Polynomial growth certificate; measured from the graph when absent.
  std::optional<double> growth_c, growth_p;
  std::vector<double> epsilon{0.5};
  std::vector<double> t;
  double initial_scale = 2.0;
  std::vector<int> k;
  int samples = 2048;
  int resamples = 20;
  SamplerConfig sampler;
  RotationSpec rotation;
  std::uint64_t seed = 1;
  int threads = 0;
  std::optional<std::filesystem::path> output;
  // Canonical JSON text of the config as parsed.
  std::string source;

  // Throws std::invalid_argument on the first problem.
  void Validate() const;
};

ExperimentConfig ParseExperimentConfig(const std::string& json_text);
ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path);

struct ExperimentRow {
  std::string experiment;
  int n = 0;
  double h = 0.0;
  std::string subset;
  std::string metric;
  double value = 0.0;
  std::optional<double> se;
  std::optional<double> bound;
  std::string theorem;
  // Outcome of the row's check (value against bound or oracle), if any.
  std::optional<bool> valid;
  // Failed acceptance rows make the CLI exit with status 2.
  bool acceptance = false;
  std::string error;
};

struct ExperimentReport {
  std::string experiment;
  std::string config_hash;  // git blob hash of the canonical config
  std::string config_json;
  std::uint64_t seed = 0;
  std::string started, finished;  // UTC, ISO 8601
  std::vector<ExperimentRow> rows;

  int AcceptanceFailures() const;
};

// Cells that throw are recorded as an "error" row and the run continues.
ExperimentReport RunExperiment(const ExperimentConfig& config);

// Exact per-coordinate bias of the rotated product Q D Q^T and of D itself,
// for every n in `dimensions`: rows "rotated:max-w2sq-singleton" and
// "product:max-w2sq-singleton", plus cross-n summary rows.
ExperimentReport DelocalizationFailureDemo(const RotationSpec& rotation, double h,
                                           const std::vector<int>& dimensions);

enum class Predictor { kH, kUsize, kN };

// Log-log fit of `metric` rows against the predictor; rows may be narrowed to
// one h (for predictor n) or one n (for predictor h).
ScalingFit FitScaling(const ExperimentReport& report, const std::string& metric,
                      Predictor predictor, std::optional<double> at_h = std::nullopt,
                      std::optional<int> at_n = std::nullopt);

// experiment,n,h,subset,metric,value,se,bound,theorem,valid
void WriteReportCsv(const ExperimentReport& report, std::ostream& os);
// Config, metadata and environment, without rows.
std::string ReportSidecarJson(const ExperimentReport& report);
// One whitespace-separated column file per metric ("n h value se bound"),
// named <prefix>.<metric>.dat. Returns the files written.
std::vector<std::filesystem::path> WriteGnuplotFiles(const ExperimentReport& report,
                                                     const std::filesystem::path& prefix);

// "blob <len>\0<text>" SHA-1, as git computes it.
std::string GitBlobHash(const std::string& text);

}  // namespace deloc

#endif  // DELOC_EXPERIMENT_H_
