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

// Structured potentials V(x) = sum_u V_u(x_u) over factor supports u.
//
// Each factor carries a Lipschitz weight L_u for its gradient. The weights
// drive the interaction constants M_p and R_p, the interaction graph, and the
// weak-interaction generator in hierarchy.h.

#ifndef DELOC_POTENTIAL_H_
#define DELOC_POTENTIAL_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "deloc/subset.h"

namespace deloc {

enum class FactorKind { kQuadratic, kCallable };

// One factor V_u(x_u). Supports are stored sorted; callables still receive
// their arguments in the order the caller declared them.
class FactorTerm {
 public:
  using ValueFn = std::function<double(const Eigen::VectorXd&)>;
  using GradientFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

  // 0.5 * x_u^T Q x_u. The Lipschitz weight is the operator norm of Q; a
  // supplied value must agree with it to 1e-10.
  static FactorTerm Quadratic(std::vector<int> support, Eigen::MatrixXd q,
                              std::optional<double> lipschitz = std::nullopt);

  // Arbitrary smooth factor with analytic gradient. `lipschitz` is taken as
  // given. `descriptor` identifies the factor for hashing and export.
  static FactorTerm Callable(std::vector<int> support, ValueFn value,
                             GradientFn gradient, double lipschitz,
                             std::string descriptor);

  const std::vector<int>& support() const { return support_; }
  const Subset& support_set() const { return support_set_; }
  FactorKind kind() const { return kind_; }
  double lipschitz() const { return lipschitz_; }
  const std::string& descriptor() const { return descriptor_; }
  // Only meaningful for quadratic factors (rows follow the sorted support).
  const Eigen::MatrixXd& matrix() const { return q_; }

  // Arguments are in sorted-support order.
  double Value(const Eigen::VectorXd& x_u) const;
  Eigen::VectorXd Gradient(const Eigen::VectorXd& x_u) const;

 private:
  FactorTerm() = default;

  std::vector<int> support_;
  Subset support_set_;
  FactorKind kind_ = FactorKind::kQuadratic;
  double lipschitz_ = 0.0;
  std::string descriptor_;
  Eigen::MatrixXd q_;
  // Callable argument j reads sorted position arg_order_[j].
  std::vector<int> arg_order_;
  std::shared_ptr<const ValueFn> value_;
  std::shared_ptr<const GradientFn> gradient_;
};

// alpha: log-Sobolev constant. beta: gradient Lipschitz constant (defaults to
// M_0 when unset). gamma: conditional transport constant (1 for strongly
// log-concave targets). alpha0: l-infinity bound on the off-diagonal Hessian.
struct SmoothnessParams {
  double alpha = 1.0;
  std::optional<double> beta;
  double gamma = 1.0;
  std::optional<double> alpha0;
};

struct InteractionConstants {
  double m0 = 0.0;
  double m1 = 0.0;
  double r0 = 0.0;
  double r1 = 0.0;
};

struct WeakCondition {
  bool holds = false;
  // 1 - gamma*M0*R1/alpha^2; only in (0, 1] when `holds`.
  double eta = 0.0;
  double lhs = 0.0;  // gamma * M0 * R1
  double rhs = 0.0;  // alpha^2
};

class StructuredPotential {
 public:
  StructuredPotential(int n, std::vector<FactorTerm> terms,
                      std::optional<SmoothnessParams> smoothness = std::nullopt);

  int dimension() const { return n_; }
  const std::vector<FactorTerm>& terms() const { return terms_; }
  const std::optional<SmoothnessParams>& smoothness() const { return smoothness_; }

  // Smoothness with beta resolved (M_0 when not supplied). Throws if the
  // potential carries no smoothness parameters.
  SmoothnessParams ResolvedSmoothness() const;

  // Content hash over supports, kinds, weights and descriptors (hex string).
  std::string Hash() const;

 private:
  int n_;
  std::vector<FactorTerm> terms_;
  std::optional<SmoothnessParams> smoothness_;
};

double EvalPotential(const StructuredPotential& pot, const Eigen::VectorXd& x);

// Component i is sum over factors w containing i of d_i V_w(x_w).
Eigen::VectorXd EvalGradient(const StructuredPotential& pot, const Eigen::VectorXd& x);

// Gradient restricted to the (sorted) coordinates of u.
Eigen::VectorXd EvalPartialGradient(const StructuredPotential& pot,
                                    const Eigen::VectorXd& x, const Subset& u);

// M_p = max_i sum_{w ∋ i} L_w |w|^p,  R_p = max_i sum_{w ∋ i, |w|>=2} L_w (|w|-1)^p.
// Factors with L_w = 0 are ignored.
InteractionConstants ComputeInteractionConstants(const StructuredPotential& pot);

// gamma * M0 * R1 < alpha^2, using the potential's smoothness parameters.
WeakCondition CheckWeakCondition(const StructuredPotential& pot);
WeakCondition CheckWeakCondition(double alpha, double gamma,
                                 const InteractionConstants& k);

// ---------------------------------------------------------------------------
// Builders.

// V(x) = 0.5 x^T A x, split into singleton factors 0.5*A_ii*x_i^2 and pair
// factors A_ij*x_i*x_j so the interaction graph is the sparsity pattern of A.
StructuredPotential GaussianPotential(const Eigen::MatrixXd& precision,
                                      std::optional<SmoothnessParams> smoothness = std::nullopt);

enum class PairShape {
  kQuadratic,  // V_ij(d) = 0.5 * b * d^2
  kLogCosh,    // V_ij(d) = b * log(cosh(d)), |V_ij''| <= b
};

struct ConfiningTerm {
  int index = 0;
  double curvature = 1.0;  // quadratic part: 0.5 * a * x^2
  double logcosh = 0.0;    // optional q * log(cosh(x)); V_i'' <= a + q
};

struct PairTerm {
  int i = 0;
  int j = 0;
  double bound = 0.0;  // sup |V_ij''|
  PairShape shape = PairShape::kQuadratic;
};

// V(x) = sum_i V_i(x_i) + sum_{i<j} V_ij(x_i - x_j), V_ij even.
struct PairwiseSpec {
  int n = 0;
  std::vector<ConfiningTerm> confining;
  std::vector<PairTerm> pairs;

  // Symmetric matrix of sup|V_ij''| with zero diagonal. Throws on self pairs
  // or repeated pairs.
  Eigen::MatrixXd BoundMatrix() const;
};

// Factor list for a pairwise spec (shared by FromPairwise and the file
// loader's builtins).
std::vector<FactorTerm> PairwiseFactors(const PairwiseSpec& spec);

// Pair factors get Lipschitz weight 2*b: the Hessian of (x_i, x_j) ->
// V_ij(x_i - x_j) is V_ij'' * [[1, -1], [-1, 1]], whose norm is 2|V_ij''|.
StructuredPotential FromPairwise(const PairwiseSpec& spec,
                                 std::optional<SmoothnessParams> smoothness = std::nullopt);

// Confining terms a on every listed coordinate plus coupling b between
// consecutive ones.
PairwiseSpec ChainPairwise(std::span<const int> coords, double confining, double coupling,
                           PairShape shape = PairShape::kQuadratic);
PairwiseSpec ChainPairwise(int n, double confining, double coupling,
                           PairShape shape = PairShape::kQuadratic);
// rows x cols grid in row-major order, 4-neighbour couplings.
PairwiseSpec GridPairwise(int rows, int cols, double confining, double coupling,
                          PairShape shape = PairShape::kQuadratic);
// All pairs coupled with bound coupling / n.
PairwiseSpec MeanFieldPairwise(int n, double confining, double coupling,
                               PairShape shape = PairShape::kQuadratic);

}  // namespace deloc

#endif  // DELOC_POTENTIAL_H_
