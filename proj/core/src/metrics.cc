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

#include "deloc/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "deloc/assignment.h"

namespace deloc {

namespace {

double SortedW2sq(std::vector<double>& a, std::vector<double>& b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s / static_cast<double>(a.size());
}

double StdDev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

std::vector<double> Subsample(std::span<const double> x, std::size_t m, std::mt19937_64& rng) {
  std::vector<double> out(x.begin(), x.end());
  if (m < out.size()) {
    std::shuffle(out.begin(), out.end(), rng);
    out.resize(m);
  }
  return out;
}

CostMatrix Costs(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, GroundNorm norm) {
  const Eigen::Index m = a.rows();
  CostMatrix c(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      if (norm == GroundNorm::kL2) {
        c(i, j) = (a.row(i) - b.row(j)).squaredNorm();
      } else {
        const double d = (a.row(i) - b.row(j)).cwiseAbs().maxCoeff();
        c(i, j) = d * d;
      }
    }
  }
  return c;
}

double AssignmentValue(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, GroundNorm norm) {
  return SolveAssignment(Costs(a, b, norm)).cost / static_cast<double>(a.rows());
}

Eigen::MatrixXd ResampleRows(const Eigen::MatrixXd& x, std::mt19937_64& rng) {
  std::uniform_int_distribution<Eigen::Index> pick(0, x.rows() - 1);
  Eigen::MatrixXd out(x.rows(), x.cols());
  for (Eigen::Index r = 0; r < x.rows(); ++r) out.row(r) = x.row(pick(rng));
  return out;
}

Eigen::MatrixXd Columns(const Eigen::MatrixXd& x, const Subset& u) {
  const auto idx = u.Indices();
  Eigen::MatrixXd out(x.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) out.col(static_cast<Eigen::Index>(c)) = x.col(idx[c]);
  return out;
}

double Binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::string ToString(Metric m) { return m == Metric::kW2sq ? "w2sq" : "w2sq-linf"; }

std::string ToString(Method m) {
  switch (m) {
    case Method::kQuantile: return "quantile";
    case Method::kAssignment: return "assignment";
    case Method::kExact: return "exact";
  }
  return "?";
}

DistanceEstimate W2sq1d(std::span<const double> a, std::span<const double> b,
                        const BootstrapOptions& opts) {
  if (a.empty() || b.empty()) throw std::invalid_argument("W2sq1d: empty sample set");
  const std::size_t m = std::min(a.size(), b.size());
  if (m < 2) throw std::invalid_argument("W2sq1d: need at least 2 samples per side");
  std::mt19937_64 rng(opts.seed);
  std::vector<double> sa = Subsample(a, m, rng);
  std::vector<double> sb = Subsample(b, m, rng);

  DistanceEstimate est;
  est.metric = Metric::kW2sq;
  est.method = Method::kQuantile;
  est.size_a = est.size_b = static_cast<int>(m);
  est.resamples = std::max(0, opts.resamples);
  est.value = SortedW2sq(sa, sb);

  if (est.resamples > 0) {
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    std::vector<double> ra(m), rb(m), stats;
    stats.reserve(static_cast<std::size_t>(est.resamples));
    for (int r = 0; r < est.resamples; ++r) {
      for (std::size_t i = 0; i < m; ++i) ra[i] = sa[pick(rng)];
      for (std::size_t i = 0; i < m; ++i) rb[i] = sb[pick(rng)];
      stats.push_back(SortedW2sq(ra, rb));
    }
    est.standard_error = StdDev(stats);
  }
  return est;
}

DistanceEstimate W2sqAssignment(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                GroundNorm norm, const BootstrapOptions& opts) {
  if (a.rows() == 0 || b.rows() == 0) throw std::invalid_argument("W2sqAssignment: empty sample set");
  if (a.rows() != b.rows()) {
    throw std::invalid_argument("W2sqAssignment: sample counts differ; subsample the larger set");
  }
  if (a.cols() != b.cols()) throw std::invalid_argument("W2sqAssignment: dimensions differ");
  if (a.cols() > kMaxAssignmentDim || a.rows() > kMaxAssignmentSamples) {
    throw std::invalid_argument("W2sqAssignment: limit is " + std::to_string(kMaxAssignmentDim) +
                                " coordinates and " + std::to_string(kMaxAssignmentSamples) +
                                " samples; subsample or use a smaller marginal");
  }
  DistanceEstimate est;
  est.metric = norm == GroundNorm::kL2 ? Metric::kW2sq : Metric::kW2sqLinf;
  est.method = Method::kAssignment;
  est.size_a = est.size_b = static_cast<int>(a.rows());
  est.resamples = std::max(0, opts.resamples);
  est.value = AssignmentValue(a, b, norm);
  if (est.resamples > 0) {
    std::mt19937_64 rng(opts.seed);
    std::vector<double> stats;
    for (int r = 0; r < est.resamples; ++r) {
      const Eigen::MatrixXd ra = ResampleRows(a, rng);
      const Eigen::MatrixXd rb = ResampleRows(b, rng);
      stats.push_back(AssignmentValue(ra, rb, norm));
    }
    est.standard_error = StdDev(stats);
  }
  return est;
}

std::vector<Subset> SubsetPanel(int n, int k, int max_subsets, std::uint64_t seed) {
  if (k < 1 || k > n) throw std::invalid_argument("SubsetPanel: need 1 <= k <= n");
  if (max_subsets < 1) throw std::invalid_argument("SubsetPanel: empty panel");
  if (Binomial(n, k) <= max_subsets) return SubsetsOfSize(n, k);
  std::mt19937_64 rng(seed);
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::set<std::vector<int>> seen;
  std::vector<Subset> out;
  while (static_cast<int>(out.size()) < max_subsets) {
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<int> pick(idx.begin(), idx.begin() + k);
    std::sort(pick.begin(), pick.end());
    if (seen.insert(pick).second) out.emplace_back(std::span<const int>(pick));
  }
  return out;
}

SubadditivityRow SubadditivityGaussian(const GaussianLaw& a, const GaussianLaw& b, int k,
                                       int max_subsets, std::uint64_t seed) {
  const int n = a.dimension();
  const auto panel = SubsetPanel(n, k, max_subsets, seed);
  SubadditivityRow row;
  row.k = k;
  row.subsets = static_cast<int>(panel.size());
  double total = 0.0;
  for (const auto& u : panel) total += W2SqGaussian(Marginal(a, u), Marginal(b, u));
  row.average_marginal = total / static_cast<double>(panel.size());
  row.scaled_full = static_cast<double>(k) / n * W2SqGaussian(a, b);
  row.slack = row.scaled_full - row.average_marginal;
  row.tolerance = 1e-9;
  row.holds = row.slack >= -row.tolerance;
  return row;
}

SubadditivityRow SubadditivityEmpirical(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, int k,
                                        const BootstrapOptions& opts, int max_subsets) {
  const int n = static_cast<int>(a.cols());
  const auto panel = SubsetPanel(n, k, max_subsets, opts.seed);
  SubadditivityRow row;
  row.k = k;
  row.subsets = static_cast<int>(panel.size());
  double total = 0.0, var = 0.0;
  for (const auto& u : panel) {
    const Eigen::MatrixXd ca = Columns(a, u), cb = Columns(b, u);
    DistanceEstimate e;
    if (k == 1) {
      e = W2sq1d(std::span<const double>(ca.data(), static_cast<std::size_t>(ca.rows())),
                 std::span<const double>(cb.data(), static_cast<std::size_t>(cb.rows())), opts);
    } else {
      e = W2sqAssignment(ca, cb, GroundNorm::kL2, opts);
    }
    total += e.value;
    var += e.standard_error * e.standard_error;
  }
  const double p = static_cast<double>(panel.size());
  row.average_marginal = total / p;
  const double se_avg = std::sqrt(var) / p;
  const auto full = W2sqAssignment(a, b, GroundNorm::kL2, opts);
  const double scale = static_cast<double>(k) / n;
  row.scaled_full = scale * full.value;
  row.slack = row.scaled_full - row.average_marginal;
  row.tolerance = 3.0 * std::sqrt(se_avg * se_avg + scale * scale * full.standard_error *
                                                        full.standard_error);
  row.holds = row.slack >= -row.tolerance;
  return row;
}

}  // namespace deloc
