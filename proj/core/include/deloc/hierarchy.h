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

// Set-indexed Markov semigroups bounding vectors of marginal entropies.
//
// A function F on subsets of [n] is evolved by a rate matrix A whose chain
// only ever grows its state:
//
//   sparse:  A F(u) = lambda (F(N(u)) - F(u)),  N F(u) = F(N(u))
//   weak:    A F(u) = kappa sum_{w : w∩u≠∅} L_w (F(w ∪ u) - F(u)),
//            N F(u) = sum_{w : w∩u≠∅} L_w F(w)
//
// In the sparse case the chain walks u -> N_1(u) -> N_2(u) -> ... with
// Exp(lambda) holding times, so e^{tA}F(u) is a finite Poisson mixture once
// the neighbourhoods stabilize. The weak case is evaluated by
// uniformization on the (small) family of reachable sets.

#ifndef DELOC_HIERARCHY_H_
#define DELOC_HIERARCHY_H_

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "deloc/graph.h"
#include "deloc/potential.h"
#include "deloc/subset.h"

namespace deloc {

// u -> F(u). Copies share the memo table, which is safe for concurrent use.
class SubsetFunction {
 public:
  using Fn = std::function<double(const Subset&)>;

  explicit SubsetFunction(Fn fn, bool memoize = false);

  // S(u) = |u|.
  static SubsetFunction Size();
  static SubsetFunction Constant(double value);
  // scale * |u|.
  static SubsetFunction Linear(double scale);

  double operator()(const Subset& u) const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

// Poisson(mean) mass at 0..J-1 plus the tail P(X >= J), J = masses.size()-1.
// The entries sum to one up to rounding.
std::vector<double> PoissonLevels(double mean, int stabilization);

class SparseGenerator {
 public:
  SparseGenerator(const InteractionGraph* graph, double rate);

  // rate = gamma beta^2 / (alpha eps), eps in (0, 1).
  static SparseGenerator FromParams(const InteractionGraph* graph, double alpha, double beta,
                                    double gamma, double eps);

  const InteractionGraph& graph() const { return *graph_; }
  double rate() const { return rate_; }

  double Apply(const SubsetFunction& f, const Subset& u) const;

 private:
  const InteractionGraph* graph_;
  double rate_;
};

double ApplyNSparse(const InteractionGraph& g, const SubsetFunction& f, const Subset& u);

// Exact: sum_{j<J} P(Lambda=j) F(N_j(u)) + P(Lambda>=J) F(N_J(u)).
double SemigroupSparse(const SparseGenerator& gen, double t, const SubsetFunction& f,
                       const Subset& u);

// u -> e^{tA}F(u), memoized.
SubsetFunction SemigroupSparseFunction(const SparseGenerator& gen, double t, SubsetFunction f);

// |A N F(u) - N A F(u)|; zero up to rounding in the sparse case.
double CommutationResidual(const SparseGenerator& gen, const SubsetFunction& f, const Subset& u);

struct WeightedSupport {
  Subset support;
  double weight = 0.0;
};

inline constexpr std::size_t kMaxReachableStates = std::size_t{1} << 16;
inline constexpr double kUniformizationTail = 1e-12;

class WeakGenerator {
 public:
  // Supports with zero weight are dropped.
  WeakGenerator(int n, std::vector<WeightedSupport> supports, double rate_factor);

  // Factor supports weighted by L_w, rate factor gamma M0 / (alpha eps).
  static WeakGenerator FromPotential(const StructuredPotential& pot, double alpha, double gamma,
                                     double eps);

  int dimension() const { return n_; }
  const std::vector<WeightedSupport>& supports() const { return supports_; }
  double rate_factor() const { return rate_factor_; }
  // max_i sum_{w ∋ i} L_w over the stored supports.
  double M0() const;

  double Apply(const SubsetFunction& f, const Subset& u) const;

  // Sets reachable from any start (starts included), in discovery order.
  // Throws std::length_error once more than `limit` are found.
  std::vector<Subset> Reachable(const std::vector<Subset>& starts,
                                std::size_t limit = kMaxReachableStates) const;

 private:
  int n_;
  std::vector<WeightedSupport> supports_;
  double rate_factor_;
};

double ApplyNWeak(const std::vector<WeightedSupport>& supports, const SubsetFunction& f,
                  const Subset& u);

// Uniformization with Theta the largest exit rate among reachable states;
// the series stops once the remaining Poisson(Theta t) mass is below 1e-12
// and that mass is placed on the last computed term.
double SemigroupWeak(const WeakGenerator& gen, double t, const SubsetFunction& f,
                     const Subset& u);

// |A N F(u) - N A F(u)| for the weak operators.
double WeakCommutationResidual(const WeakGenerator& gen, const SubsetFunction& f,
                               const Subset& u);

struct CertificateInput {
  double alpha = 1.0;
  double beta = 1.0;  // sparse only
  double gamma = 1.0;
  double epsilon = 0.5;
  double h = 0.01;
  int steps = 0;
  // Step ceiling of the matching theorem; h above it is an error.
  std::optional<double> h_max;
};

// Right-hand side of the iterated one-step inequality, for every k in
// 0..steps:
//   T^k e^{khA} H0 + (1-e^{-alpha h})/alpha sum_{j<k} T^j e^{(j+1)hA} N G
// with T = e^{-alpha h} I + kappa N^2, kappa = 2 beta^4 h^2 (1-e^{-alpha h})
// / (alpha^2 (1-eps)) and G(u) = beta^2 h (beta h + 1) |u| / (1-eps),
// evaluated at u. Exact: everything lives on the chain N_0(u) ... N_J(u).
std::vector<double> CertifiedTrajectorySparse(const InteractionGraph& g, const CertificateInput& in,
                                              const SubsetFunction& h0, const Subset& u);

// Weak analogue with T = e^{-alpha h} e^{hA} + kappa e^{hA} N^2,
// kappa = 2 h^2 M0^2 (1-e^{-alpha h}) / (alpha^2 (1-eps)), and
// G = h M0 / (1-eps) ((M0/alpha) h N^2 S + N S); second term
// (1-e^{-alpha h})/alpha sum_{j<k} T^j e^{hA} G. The generator's rate
// factor is ignored in favour of gamma M0 / (alpha eps) from `in`.
std::vector<double> CertifiedTrajectoryWeak(const WeakGenerator& gen, const CertificateInput& in,
                                            const SubsetFunction& h0, const Subset& u);

}  // namespace deloc

#endif  // DELOC_HIERARCHY_H_
