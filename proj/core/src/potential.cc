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

#include "deloc/potential.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace deloc {

namespace {

constexpr double kQuadraticNormTolerance = 1e-10;

double SpectralNorm(const Eigen::MatrixXd& q) {
  if (q.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(q, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

// Sorts `support` and returns, for each original position, its sorted slot.
std::vector<int> CanonicalizeSupport(std::vector<int>& support) {
  if (support.empty()) throw std::invalid_argument("FactorTerm: empty support");
  std::vector<int> order(support.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return support[a] < support[b]; });
  std::vector<int> sorted(support.size());
  std::vector<int> slot(support.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    sorted[k] = support[static_cast<std::size_t>(order[k])];
    slot[static_cast<std::size_t>(order[k])] = static_cast<int>(k);
  }
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (sorted[k] < 0) throw std::invalid_argument("FactorTerm: negative index in support");
    if (k > 0 && sorted[k] == sorted[k - 1]) {
      throw std::invalid_argument("FactorTerm: duplicate index " +
                                  std::to_string(sorted[k]) + " in support");
    }
  }
  support = std::move(sorted);
  return slot;
}

Eigen::VectorXd Gather(const Eigen::VectorXd& x, const std::vector<int>& idx) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) out(static_cast<Eigen::Index>(k)) = x(idx[k]);
  return out;
}

void CheckDimension(const StructuredPotential& pot, const Eigen::VectorXd& x) {
  if (x.size() != pot.dimension()) {
    throw std::invalid_argument("dimension mismatch: potential has n=" +
                                std::to_string(pot.dimension()) + ", x has length " +
                                std::to_string(x.size()));
  }
}

}  // namespace

FactorTerm FactorTerm::Quadratic(std::vector<int> support, Eigen::MatrixXd q,
                                 std::optional<double> lipschitz) {
  FactorTerm t;
  const auto slot = CanonicalizeSupport(support);
  const auto m = static_cast<Eigen::Index>(support.size());
  if (q.rows() != m || q.cols() != m) {
    throw std::invalid_argument("FactorTerm::Quadratic: matrix must be |support| x |support|");
  }
  if (!q.allFinite()) throw std::invalid_argument("FactorTerm::Quadratic: non-finite matrix");
  if ((q - q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, q.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("FactorTerm::Quadratic: matrix is not symmetric");
  }
  Eigen::MatrixXd permuted(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      permuted(slot[static_cast<std::size_t>(a)], slot[static_cast<std::size_t>(b)]) = q(a, b);
    }
  }
  t.q_ = 0.5 * (permuted + permuted.transpose());
  const double norm = SpectralNorm(t.q_);
  if (lipschitz.has_value()) {
    if (!(*lipschitz >= 0.0)) throw std::invalid_argument("FactorTerm: negative Lipschitz weight");
    if (std::abs(*lipschitz - norm) > kQuadraticNormTolerance * std::max(1.0, norm)) {
      std::ostringstream os;
      os << "FactorTerm::Quadratic: lipschitz " << *lipschitz
         << " does not match operator norm " << norm;
      throw std::invalid_argument(os.str());
    }
  }
  t.lipschitz_ = norm;
  t.kind_ = FactorKind::kQuadratic;
  t.support_ = std::move(support);
  t.support_set_ = Subset(std::span<const int>(t.support_));
  std::ostringstream os;
  os.precision(17);
  os << "quadratic[";
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) os << t.q_(a, b) << (a + 1 == m && b + 1 == m ? "" : ",");
  }
  os << ']';
  t.descriptor_ = os.str();
  return t;
}

FactorTerm FactorTerm::Callable(std::vector<int> support, ValueFn value, GradientFn gradient,
                                double lipschitz, std::string descriptor) {
  if (!value || !gradient) throw std::invalid_argument("FactorTerm::Callable: missing function");
  if (!(lipschitz >= 0.0) || !std::isfinite(lipschitz)) {
    throw std::invalid_argument("FactorTerm: Lipschitz weight must be finite and >= 0");
  }
  FactorTerm t;
  t.arg_order_ = CanonicalizeSupport(support);
  t.support_ = std::move(support);
  t.support_set_ = Subset(std::span<const int>(t.support_));
  t.kind_ = FactorKind::kCallable;
  t.lipschitz_ = lipschitz;
  t.descriptor_ = std::move(descriptor);
  t.value_ = std::make_shared<const ValueFn>(std::move(value));
  t.gradient_ = std::make_shared<const GradientFn>(std::move(gradient));
  return t;
}

double FactorTerm::Value(const Eigen::VectorXd& x_u) const {
  if (kind_ == FactorKind::kQuadratic) return 0.5 * x_u.dot(q_ * x_u);
  Eigen::VectorXd args(x_u.size());
  for (std::size_t j = 0; j < arg_order_.size(); ++j) {
    args(static_cast<Eigen::Index>(j)) = x_u(arg_order_[j]);
  }
  return (*value_)(args);
}

Eigen::VectorXd FactorTerm::Gradient(const Eigen::VectorXd& x_u) const {
  if (kind_ == FactorKind::kQuadratic) return q_ * x_u;
  Eigen::VectorXd args(x_u.size());
  for (std::size_t j = 0; j < arg_order_.size(); ++j) {
    args(static_cast<Eigen::Index>(j)) = x_u(arg_order_[j]);
  }
  const Eigen::VectorXd g = (*gradient_)(args);
  if (g.size() != x_u.size()) throw std::runtime_error("FactorTerm: gradient has wrong length");
  Eigen::VectorXd out(x_u.size());
  for (std::size_t j = 0; j < arg_order_.size(); ++j) {
    out(arg_order_[j]) = g(static_cast<Eigen::Index>(j));
  }
  return out;
}

StructuredPotential::StructuredPotential(int n, std::vector<FactorTerm> terms,
                                         std::optional<SmoothnessParams> smoothness)
    : n_(n), terms_(std::move(terms)), smoothness_(std::move(smoothness)) {
  if (n_ < 1) throw std::invalid_argument("StructuredPotential: n must be >= 1");
  for (const auto& t : terms_) {
    if (t.support().back() >= n_) {
      throw std::invalid_argument("StructuredPotential: support index " +
                                  std::to_string(t.support().back()) + " outside [0, " +
                                  std::to_string(n_) + ")");
    }
  }
  if (smoothness_.has_value()) {
    const auto s = ResolvedSmoothness();
    if (!(s.alpha > 0.0)) throw std::invalid_argument("smoothness: alpha must be > 0");
    if (!(s.gamma > 0.0)) throw std::invalid_argument("smoothness: gamma must be > 0");
    if (!(*s.beta >= s.alpha)) {
      throw std::invalid_argument("smoothness: need 0 < alpha <= beta");
    }
    if (s.alpha0.has_value() && !(*s.alpha0 >= 0.0)) {
      throw std::invalid_argument("smoothness: alpha0 must be >= 0");
    }
  }
}

SmoothnessParams StructuredPotential::ResolvedSmoothness() const {
  if (!smoothness_.has_value()) {
    throw std::logic_error("StructuredPotential: no smoothness parameters attached");
  }
  SmoothnessParams s = *smoothness_;
  if (!s.beta.has_value()) s.beta = ComputeInteractionConstants(*this).m0;
  return s;
}

std::string StructuredPotential::Hash() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  mix("n=" + std::to_string(n_));
  for (const auto& t : terms_) {
    std::ostringstream os;
    os.precision(17);
    os << "|";
    for (int i : t.support()) os << i << ',';
    os << "L=" << t.lipschitz() << ';' << t.descriptor();
    mix(os.str());
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

double EvalPotential(const StructuredPotential& pot, const Eigen::VectorXd& x) {
  CheckDimension(pot, x);
  double v = 0.0;
  for (const auto& t : pot.terms()) v += t.Value(Gather(x, t.support()));
  return v;
}

Eigen::VectorXd EvalGradient(const StructuredPotential& pot, const Eigen::VectorXd& x) {
  CheckDimension(pot, x);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(pot.dimension());
  for (const auto& t : pot.terms()) {
    const Eigen::VectorXd gu = t.Gradient(Gather(x, t.support()));
    for (std::size_t k = 0; k < t.support().size(); ++k) {
      g(t.support()[k]) += gu(static_cast<Eigen::Index>(k));
    }
  }
  return g;
}

Eigen::VectorXd EvalPartialGradient(const StructuredPotential& pot, const Eigen::VectorXd& x,
                                    const Subset& u) {
  CheckDimension(pot, x);
  if (u.empty()) throw std::invalid_argument("EvalPartialGradient: empty subset");
  if (u.Bound() > pot.dimension()) {
    throw std::invalid_argument("EvalPartialGradient: subset out of range");
  }
  const std::vector<int> idx = u.Indices();
  Eigen::VectorXd g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(idx.size()));
  for (const auto& t : pot.terms()) {
    if (!t.support_set().Intersects(u)) continue;
    const Eigen::VectorXd gu = t.Gradient(Gather(x, t.support()));
    for (std::size_t k = 0; k < t.support().size(); ++k) {
      const auto it = std::lower_bound(idx.begin(), idx.end(), t.support()[k]);
      if (it != idx.end() && *it == t.support()[k]) {
        g(it - idx.begin()) += gu(static_cast<Eigen::Index>(k));
      }
    }
  }
  return g;
}

InteractionConstants ComputeInteractionConstants(const StructuredPotential& pot) {
  const auto n = static_cast<std::size_t>(pot.dimension());
  std::vector<double> m0(n, 0.0), m1(n, 0.0), r0(n, 0.0), r1(n, 0.0);
  for (const auto& t : pot.terms()) {
    const double l = t.lipschitz();
    if (l == 0.0) continue;
    const double size = static_cast<double>(t.support().size());
    for (int i : t.support()) {
      const auto k = static_cast<std::size_t>(i);
      m0[k] += l;
      m1[k] += l * size;
      if (t.support().size() >= 2) {
        r0[k] += l;
        r1[k] += l * (size - 1.0);
      }
    }
  }
  InteractionConstants c;
  c.m0 = *std::max_element(m0.begin(), m0.end());
  c.m1 = *std::max_element(m1.begin(), m1.end());
  c.r0 = *std::max_element(r0.begin(), r0.end());
  c.r1 = *std::max_element(r1.begin(), r1.end());
  return c;
}

WeakCondition CheckWeakCondition(double alpha, double gamma, const InteractionConstants& k) {
  WeakCondition w;
  w.lhs = gamma * k.m0 * k.r1;
  w.rhs = alpha * alpha;
  w.holds = w.lhs < w.rhs;
  w.eta = 1.0 - w.lhs / w.rhs;
  return w;
}

WeakCondition CheckWeakCondition(const StructuredPotential& pot) {
  const auto s = pot.ResolvedSmoothness();
  return CheckWeakCondition(s.alpha, s.gamma, ComputeInteractionConstants(pot));
}

StructuredPotential GaussianPotential(const Eigen::MatrixXd& precision,
                                      std::optional<SmoothnessParams> smoothness) {
  const Eigen::Index n = precision.rows();
  if (n < 1 || precision.cols() != n) {
    throw std::invalid_argument("GaussianPotential: precision must be square");
  }
  std::vector<FactorTerm> terms;
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXd q(1, 1);
    q(0, 0) = precision(i, i);
    terms.push_back(FactorTerm::Quadratic({i}, q));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(precision(i, j) - precision(j, i)) >
          1e-12 * std::max(1.0, std::abs(precision(i, j)))) {
        throw std::invalid_argument("GaussianPotential: precision is not symmetric");
      }
      if (precision(i, j) == 0.0) continue;
      Eigen::MatrixXd q = Eigen::MatrixXd::Zero(2, 2);
      q(0, 1) = q(1, 0) = precision(i, j);
      terms.push_back(FactorTerm::Quadratic({i, j}, q));
    }
  }
  return StructuredPotential(static_cast<int>(n), std::move(terms), std::move(smoothness));
}

Eigen::MatrixXd PairwiseSpec::BoundMatrix() const {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  std::set<std::pair<int, int>> seen;
  for (const auto& p : pairs) {
    if (p.i == p.j) throw std::invalid_argument("PairwiseSpec: self pair " + std::to_string(p.i));
    if (p.i < 0 || p.j < 0 || p.i >= n || p.j >= n) {
      throw std::invalid_argument("PairwiseSpec: pair index out of range");
    }
    const auto key = std::minmax(p.i, p.j);
    if (!seen.insert(key).second) {
      throw std::invalid_argument("PairwiseSpec: repeated pair (" + std::to_string(key.first) +
                                  "," + std::to_string(key.second) + ")");
    }
    if (!(p.bound >= 0.0)) throw std::invalid_argument("PairwiseSpec: negative bound");
    b(p.i, p.j) = b(p.j, p.i) = p.bound;
  }
  return b;
}

std::vector<FactorTerm> PairwiseFactors(const PairwiseSpec& spec) {
  (void)spec.BoundMatrix();  // validation
  std::vector<FactorTerm> terms;
  for (const auto& c : spec.confining) {
    if (c.index < 0 || c.index >= spec.n) {
      throw std::invalid_argument("PairwiseSpec: confining index out of range");
    }
    if (!(c.curvature >= 0.0) || !(c.logcosh >= 0.0)) {
      throw std::invalid_argument("PairwiseSpec: confining coefficients must be >= 0");
    }
    if (c.logcosh == 0.0) {
      Eigen::MatrixXd q(1, 1);
      q(0, 0) = c.curvature;
      terms.push_back(FactorTerm::Quadratic({c.index}, q));
      continue;
    }
    const double a = c.curvature;
    const double s = c.logcosh;
    std::ostringstream os;
    os.precision(17);
    os << "confining-logcosh[a=" << a << ",q=" << s << ']';
    terms.push_back(FactorTerm::Callable(
        {c.index},
        [a, s](const Eigen::VectorXd& x) {
          return 0.5 * a * x(0) * x(0) + s * std::log(std::cosh(x(0)));
        },
        [a, s](const Eigen::VectorXd& x) {
          Eigen::VectorXd g(1);
          g(0) = a * x(0) + s * std::tanh(x(0));
          return g;
        },
        a + s, os.str()));
  }
  for (const auto& p : spec.pairs) {
    const double b = p.bound;
    if (p.shape == PairShape::kQuadratic) {
      Eigen::MatrixXd q(2, 2);
      q << b, -b, -b, b;
      terms.push_back(FactorTerm::Quadratic({p.i, p.j}, q));
      continue;
    }
    std::ostringstream os;
    os.precision(17);
    os << "pair-logcosh[b=" << b << ']';
    terms.push_back(FactorTerm::Callable(
        {p.i, p.j},
        [b](const Eigen::VectorXd& x) { return b * std::log(std::cosh(x(0) - x(1))); },
        [b](const Eigen::VectorXd& x) {
          const double d = b * std::tanh(x(0) - x(1));
          Eigen::VectorXd g(2);
          g << d, -d;
          return g;
        },
        2.0 * b, os.str()));
  }
  return terms;
}

StructuredPotential FromPairwise(const PairwiseSpec& spec,
                                 std::optional<SmoothnessParams> smoothness) {
  return StructuredPotential(spec.n, PairwiseFactors(spec), std::move(smoothness));
}

PairwiseSpec ChainPairwise(std::span<const int> coords, double confining, double coupling,
                           PairShape shape) {
  PairwiseSpec spec;
  spec.n = coords.empty() ? 0 : *std::max_element(coords.begin(), coords.end()) + 1;
  for (int c : coords) spec.confining.push_back({c, confining, 0.0});
  for (std::size_t k = 1; k < coords.size(); ++k) {
    spec.pairs.push_back({coords[k - 1], coords[k], coupling, shape});
  }
  return spec;
}

PairwiseSpec ChainPairwise(int n, double confining, double coupling, PairShape shape) {
  std::vector<int> coords(static_cast<std::size_t>(n));
  std::iota(coords.begin(), coords.end(), 0);
  return ChainPairwise(coords, confining, coupling, shape);
}

PairwiseSpec GridPairwise(int rows, int cols, double confining, double coupling,
                          PairShape shape) {
  PairwiseSpec spec;
  spec.n = rows * cols;
  for (int i = 0; i < spec.n; ++i) spec.confining.push_back({i, confining, 0.0});
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int i = r * cols + c;
      if (c + 1 < cols) spec.pairs.push_back({i, i + 1, coupling, shape});
      if (r + 1 < rows) spec.pairs.push_back({i, i + cols, coupling, shape});
    }
  }
  return spec;
}

PairwiseSpec MeanFieldPairwise(int n, double confining, double coupling, PairShape shape) {
  PairwiseSpec spec;
  spec.n = n;
  for (int i = 0; i < n; ++i) spec.confining.push_back({i, confining, 0.0});
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      spec.pairs.push_back({i, j, coupling / static_cast<double>(n), shape});
    }
  }
  return spec;
}

}  // namespace deloc
