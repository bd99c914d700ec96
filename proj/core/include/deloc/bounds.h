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

// Explicit constants and bound curves for marginal LMC bias.
//
// Stationary:  H(pi_h^u | pi^u) <= C h |u|  for h <= h*, hence
//              W2^2(pi_h^u, pi^u) <= (2/alpha) C h |u|.
// Dynamic:     H(rho_kh^u | pi^u) <= transient(k) |u| + C h |u|.
//
// Precondition failures produce valid = false with a reason instead of an
// exception, so parameter sweeps can cross invalid regions. Whatever could
// still be computed is filled in.

#ifndef DELOC_BOUNDS_H_
#define DELOC_BOUNDS_H_

#include <optional>
#include <string>

#include "deloc/graph.h"
#include "deloc/hierarchy.h"
#include "deloc/subset.h"

namespace deloc {

enum class Theorem {
  kSparsePoly,
  kSparseExp,
  kWeak,
  kOnestepLinf,
  kSparseDynPoly,
  kSparseDynExp,
  kWeakDyn,
  kContinuousTime,
};

std::string ToString(Theorem t);
// Accepts the names produced by ToString ("sparse-poly", "weak-dyn", ...).
std::optional<Theorem> ParseTheorem(const std::string& name);

struct BoundInputs {
  std::optional<double> alpha, beta, gamma, c, p, r, m0, m1, r1, alpha0, h, c0, epsilon, t;
  std::optional<int> n, k, usize;
};

struct BoundOutputs {
  std::optional<double> C, h_star, eta, tau, bound_value;
};

struct BoundReport {
  Theorem theorem = Theorem::kSparsePoly;
  BoundInputs inputs;
  BoundOutputs outputs;
  bool valid = true;
  std::string reason;
};

// C = 40 c^2 p^p (beta^2/alpha) (8 gamma beta^2/alpha^2 + 1)^p,
// h* = alpha / (4 c beta^2).
BoundReport SparsePolyConstants(double alpha, double beta, double gamma, double c, double p);

// eta = 1 - (gamma beta^2/alpha^2)(r-1), C = 10 beta^2 c^2 e^{gamma(r-1)/c} / (alpha eta^3),
// h* = alpha eta^{3/2} / (5 beta^2 c). Needs r < 1 + alpha^2/(gamma beta^2).
BoundReport SparseExpConstants(double alpha, double beta, double gamma, double c, double r);

// eta = 1 - gamma M0 R1/alpha^2, C = 10 M0 M1 e^gamma / (alpha eta^3),
// h* = alpha eta^{3/2} / (5 M0 M1). Needs gamma M0 R1 < alpha^2.
BoundReport WeakConstants(double alpha, double gamma, double m0, double m1, double r1);

// W2,linf^2(pi_h, pi) <= h log(2n) (4 beta/(alpha-alpha0))^2, times |u| for
// the W2^2 bound on a u-marginal. Needs beta > alpha > alpha0 > 0, h <= 1/beta.
BoundReport OnestepLinfBound(double alpha, double alpha0, double beta, double h, int n, int usize);

struct DynamicParams {
  // kSparsePoly / kSparseExp / kWeak or their dynamic counterparts.
  Theorem theorem = Theorem::kSparseDynPoly;
  double alpha = 1.0, beta = 1.0, gamma = 1.0;
  double c = 1.0, p = 1.0, r = 1.0;      // sparse
  double m0 = 0.0, m1 = 0.0, r1 = 0.0;   // weak
};

// sparse-poly: 2 c C0 e^{-alpha kh/2} (2 gamma beta^2 kh/alpha + 1)^p |u| + C h |u|
// sparse-exp:  c C0 e^{-tau kh} |u| + C h |u|
// weak:        C0 e^{-tau kh} |u| + C h |u|,   tau = alpha eta^2 / (2 (2 - eta)).
BoundReport DynamicBound(const DynamicParams& params, int k, double h, int usize, double c0);

// Poisson-rate gamma beta^2/(2 alpha) process Lambda:
//   e^{-2 alpha (1-eps) t} E H0(N_{Lambda(t/eps)}(u)),
// summed exactly up to the stabilization index. Throws unless eps in (0,1).
BoundReport ContinuousTimeBound(const InteractionGraph& g, const Subset& u, double t, double eps,
                                double alpha, double beta, double gamma, const SubsetFunction& h0);

// E Lambda(t)^p <= (lambda t + p)^p.
double PoissonMomentBound(double lambda, double t, double p);

// <pi, |grad V|_inf^2> <= 4 beta log(2n).
double SubgaussianGradLinfBound(double beta, int n);

// Default eps for the certificates: 1/2 (sparse-poly), the midpoint of
// (gamma beta^2 (r-1)/alpha^2, 1) (sparse-exp) and of (gamma M0 R1/alpha^2, 1) (weak).
double DefaultEpsilonSparsePoly();
double DefaultEpsilonSparseExp(double alpha, double beta, double gamma, double r);
double DefaultEpsilonWeak(double alpha, double gamma, double m0, double r1);

std::string BoundReportJson(const BoundReport& report);

}  // namespace deloc

#endif  // DELOC_BOUNDS_H_
