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

// Langevin Monte Carlo.
//
//   x <- x - h grad V(x) + sqrt(2h) z,   z ~ N(0, I).
//
// The noise enters with a plus sign; z is symmetric so the law of the chain
// is the same either way.

#ifndef DELOC_SAMPLER_H_
#define DELOC_SAMPLER_H_

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "deloc/potential.h"
#include "deloc/subset.h"

namespace deloc {

enum class SamplerMode {
  kLmc,
  // `substeps` Euler-Maruyama steps of size h/substeps per recorded step: a
  // stand-in for the continuous-time diffusion with O(h/substeps) error.
  kLangevinReference,
};

struct SamplerConfig {
  double h = 0.01;
  std::int64_t iterations = 1000;
  // Defaults to 10% of `iterations`.
  std::optional<std::int64_t> burn_in;
  int num_chains = 1;
  std::uint64_t seed = 0;
  SamplerMode mode = SamplerMode::kLmc;
  int substeps = 1;
  int thinning = 1;
  // Worker threads; 0 picks min(num_chains, hardware concurrency).
  int threads = 0;
  // Step-size ceiling from a bound certificate. Exceeding it only warns.
  std::optional<double> certified_h;

  std::int64_t BurnIn() const;
  std::int64_t RowsPerChain() const;
  // Throws std::invalid_argument on an unusable configuration.
  void Validate() const;
};

struct SampleStore {
  int n = 0;
  int num_chains = 0;
  std::int64_t rows_per_chain = 0;
  SamplerConfig config;
  std::string potential_hash;
  // num_chains * rows_per_chain rows, chain-major; one coordinate per column.
  Eigen::MatrixXd data;
  std::vector<std::string> warnings;

  Eigen::MatrixXd Chain(int c) const;
};

// Raised on a non-finite gradient or on divergence (|x|_inf > 1e8).
class SamplerError : public std::runtime_error {
 public:
  SamplerError(const std::string& what, int chain, std::int64_t iteration)
      : std::runtime_error(what), chain_(chain), iteration_(iteration) {}
  int chain() const { return chain_; }
  std::int64_t iteration() const { return iteration_; }

 private:
  int chain_;
  std::int64_t iteration_;
};

inline constexpr double kDivergenceThreshold = 1e8;

// One LMC step with caller-supplied standard normal noise. Throws
// SamplerError (iteration 0) when the gradient is not finite.
Eigen::VectorXd LmcStep(const StructuredPotential& pot, const Eigen::VectorXd& x, double h,
                        const Eigen::VectorXd& noise);

// Independent chains from a shared start x0. Chain c draws from its own
// generator seeded by (seed, c), so its stream does not depend on how many
// chains run or on thread scheduling.
SampleStore RunChain(const StructuredPotential& pot, const SamplerConfig& config,
                     const Eigen::VectorXd& x0);

// Generator used by chain `chain` of a run seeded with `seed`.
std::mt19937_64 ChainRng(std::uint64_t seed, std::uint64_t chain);

// Columns of u (sorted), all rows in store order.
Eigen::MatrixXd MarginalSamples(const SampleStore& store, const Subset& u);

}  // namespace deloc

#endif  // DELOC_SAMPLER_H_
