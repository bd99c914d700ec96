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

// Empirical Wasserstein distances between sample sets.
//
// Values are exact for the two empirical measures; the gap to the distance
// between the underlying laws (a positive bias of order 1/m in one
// dimension, worse in higher ones) is left to the caller.

#ifndef DELOC_METRICS_H_
#define DELOC_METRICS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "deloc/gaussian.h"
#include "deloc/subset.h"

namespace deloc {

enum class Metric { kW2sq, kW2sqLinf };
enum class Method { kQuantile, kAssignment, kExact };
enum class GroundNorm { kL2, kLinf };

std::string ToString(Metric m);
std::string ToString(Method m);

struct DistanceEstimate {
  double value = 0.0;
  Metric metric = Metric::kW2sq;
  int size_a = 0;
  int size_b = 0;
  double standard_error = 0.0;
  Method method = Method::kQuantile;
  int resamples = 0;
};

struct BootstrapOptions {
  // 0 disables the bootstrap (standard_error = 0).
  int resamples = 200;
  std::uint64_t seed = 0x5eed;
};

inline constexpr int kMaxAssignmentDim = 8;
inline constexpr int kMaxAssignmentSamples = 4096;

// (1/m) sum (a_(i) - b_(i))^2 over the sorted samples. When sizes differ
// the larger set is subsampled without replacement (seeded by opts.seed).
// The bootstrap resamples each set independently and recomputes the
// statistic, so it reflects the sampling noise of both sides.
DistanceEstimate W2sq1d(std::span<const double> a, std::span<const double> b,
                        const BootstrapOptions& opts = {});

// Exact optimal matching between equal-size point clouds (one point per
// row) under |.|^2 or |.|_inf^2. Rows beyond kMaxAssignmentSamples or more
// than kMaxAssignmentDim columns are rejected. The bootstrap re-solves on
// independently resampled rows of each cloud.
DistanceEstimate W2sqAssignment(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                GroundNorm norm, const BootstrapOptions& opts = {});

struct SubadditivityRow {
  int k = 0;
  int subsets = 0;
  double average_marginal = 0.0;  // mean over the panel of W2^2(a^u, b^u)
  double scaled_full = 0.0;       // (k/n) W2^2(a, b)
  double slack = 0.0;             // scaled_full - average_marginal
  double tolerance = 0.0;
  bool holds = false;
};

// All k-subsets when C(n, k) <= max_subsets, otherwise a seeded random panel
// of max_subsets distinct k-subsets. Tolerance 1e-9.
SubadditivityRow SubadditivityGaussian(const GaussianLaw& a, const GaussianLaw& b, int k,
                                       int max_subsets = 512, std::uint64_t seed = 1);

// Same check from samples (n <= kMaxAssignmentDim): marginals by assignment
// (quantile for k = 1), tolerance 3 * sqrt(se_avg^2 + (k/n)^2 se_full^2)
// with se_avg the bootstrap SE of the panel mean treating subsets as
// independent (conservative when they overlap).
SubadditivityRow SubadditivityEmpirical(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, int k,
                                        const BootstrapOptions& opts = {}, int max_subsets = 64);

// The k-subsets used by the checks above.
std::vector<Subset> SubsetPanel(int n, int k, int max_subsets, std::uint64_t seed);

}  // namespace deloc

#endif  // DELOC_METRICS_H_
