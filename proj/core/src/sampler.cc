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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

namespace deloc {

std::int64_t SamplerConfig::BurnIn() const {
  return burn_in ? *burn_in : iterations / 10;
}

std::int64_t SamplerConfig::RowsPerChain() const {
  const std::int64_t kept = iterations - BurnIn();
  return (kept + thinning - 1) / thinning;
}

void SamplerConfig::Validate() const {
  if (!(h >= 0.0) || !std::isfinite(h)) throw std::invalid_argument("sampler: h must be finite and >= 0");
  if (iterations < 1) throw std::invalid_argument("sampler: iterations must be >= 1");
  if (BurnIn() < 0 || BurnIn() >= iterations) {
    throw std::invalid_argument("sampler: burn_in must lie in [0, iterations)");
  }
  if (num_chains < 1) throw std::invalid_argument("sampler: num_chains must be >= 1");
  if (thinning < 1) throw std::invalid_argument("sampler: thinning must be >= 1");
  if (substeps < 1) throw std::invalid_argument("sampler: substeps must be >= 1");
  if (mode == SamplerMode::kLmc && substeps != 1) {
    throw std::invalid_argument("sampler: substeps only apply to langevin-reference mode");
  }
  if (threads < 0) throw std::invalid_argument("sampler: threads must be >= 0");
}

Eigen::MatrixXd SampleStore::Chain(int c) const {
  if (c < 0 || c >= num_chains) throw std::out_of_range("SampleStore: chain index");
  return data.middleRows(static_cast<Eigen::Index>(c) * rows_per_chain, rows_per_chain);
}

Eigen::VectorXd LmcStep(const StructuredPotential& pot, const Eigen::VectorXd& x, double h,
                        const Eigen::VectorXd& noise) {
  if (noise.size() != x.size()) throw std::invalid_argument("LmcStep: noise length != n");
  const Eigen::VectorXd g = EvalGradient(pot, x);
  if (!g.allFinite()) throw SamplerError("LmcStep: non-finite gradient", 0, 0);
  return x - h * g + std::sqrt(2.0 * h) * noise;
}

std::mt19937_64 ChainRng(std::uint64_t seed, std::uint64_t chain) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chain), static_cast<std::uint32_t>(chain >> 32),
                    0x6c6d63u};
  return std::mt19937_64(seq);
}

namespace {

void RunOne(const StructuredPotential& pot, const SamplerConfig& cfg, const Eigen::VectorXd& x0,
            int chain, Eigen::MatrixXd* data) {
  auto rng = ChainRng(cfg.seed, static_cast<std::uint64_t>(chain));
  std::normal_distribution<double> normal;
  const int n = pot.dimension();
  const int sub = cfg.mode == SamplerMode::kLmc ? 1 : cfg.substeps;
  const double dt = cfg.h / sub;
  const double scale = std::sqrt(2.0 * dt);
  const std::int64_t burn = cfg.BurnIn();
  const Eigen::Index base = static_cast<Eigen::Index>(chain) * cfg.RowsPerChain();

  Eigen::VectorXd x = x0;
  Eigen::VectorXd z(n);
  Eigen::Index row = 0;
  for (std::int64_t it = 1; it <= cfg.iterations; ++it) {
    for (int s = 0; s < sub; ++s) {
      const Eigen::VectorXd g = EvalGradient(pot, x);
      if (!g.allFinite()) {
        std::ostringstream os;
        os << "sampler: non-finite gradient at chain " << chain << ", iteration " << it;
        throw SamplerError(os.str(), chain, it);
      }
      for (int i = 0; i < n; ++i) z(i) = normal(rng);
      x.noalias() -= dt * g;
      x.noalias() += scale * z;
    }
    if (!(x.cwiseAbs().maxCoeff() <= kDivergenceThreshold)) {
      std::ostringstream os;
      os << "sampler: diverged (|x|_inf > " << kDivergenceThreshold << ") at chain " << chain
         << ", iteration " << it << "; h=" << cfg.h << " is likely too large for this target";
      throw SamplerError(os.str(), chain, it);
    }
    if (it > burn && (it - burn - 1) % cfg.thinning == 0) {
      data->row(base + row) = x.transpose();
      ++row;
    }
  }
}

}  // namespace

SampleStore RunChain(const StructuredPotential& pot, const SamplerConfig& config,
                     const Eigen::VectorXd& x0) {
  config.Validate();
  if (x0.size() != pot.dimension()) throw std::invalid_argument("RunChain: x0 length != n");
  if (!x0.allFinite()) throw std::invalid_argument("RunChain: x0 must be finite");

  SampleStore store;
  store.n = pot.dimension();
  store.num_chains = config.num_chains;
  store.rows_per_chain = config.RowsPerChain();
  store.config = config;
  store.potential_hash = pot.Hash();
  if (config.certified_h && config.h > *config.certified_h) {
    std::ostringstream os;
    os << "h=" << config.h << " exceeds the certified step " << *config.certified_h;
    store.warnings.push_back(os.str());
  }
  store.data.resize(static_cast<Eigen::Index>(config.num_chains) * store.rows_per_chain, store.n);

  int workers = config.threads > 0
                    ? config.threads
                    : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, config.num_chains);

  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(config.num_chains));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int c = next++; c < config.num_chains; c = next++) {
      try {
        RunOne(pot, config, x0, c, &store.data);
      } catch (...) {
        errors[static_cast<std::size_t>(c)] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  // Report the lowest failing chain so the error is scheduling-independent.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return store;
}

Eigen::MatrixXd MarginalSamples(const SampleStore& store, const Subset& u) {
  if (u.empty()) throw std::invalid_argument("MarginalSamples: empty subset");
  if (u.Bound() > store.n) throw std::invalid_argument("MarginalSamples: subset out of range");
  const auto idx = u.Indices();
  Eigen::MatrixXd out(store.data.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t a = 0; a < idx.size(); ++a) {
    out.col(static_cast<Eigen::Index>(a)) = store.data.col(idx[a]);
  }
  return out;
}

}  // namespace deloc
