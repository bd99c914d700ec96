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

#include "deloc/hierarchy.h"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace deloc {

struct SubsetFunction::State {
  Fn fn;
  bool memoize = false;
  std::shared_mutex mu;
  std::unordered_map<Subset, double, SubsetHash> table;
};

SubsetFunction::SubsetFunction(Fn fn, bool memoize) : state_(std::make_shared<State>()) {
  if (!fn) throw std::invalid_argument("SubsetFunction: empty callable");
  state_->fn = std::move(fn);
  state_->memoize = memoize;
}

SubsetFunction SubsetFunction::Size() {
  return SubsetFunction([](const Subset& u) { return static_cast<double>(u.size()); });
}

SubsetFunction SubsetFunction::Constant(double value) {
  return SubsetFunction([value](const Subset&) { return value; });
}

SubsetFunction SubsetFunction::Linear(double scale) {
  return SubsetFunction([scale](const Subset& u) { return scale * static_cast<double>(u.size()); });
}

double SubsetFunction::operator()(const Subset& u) const {
  if (!state_->memoize) return state_->fn(u);
  {
    std::shared_lock lock(state_->mu);
    auto it = state_->table.find(u);
    if (it != state_->table.end()) return it->second;
  }
  const double v = state_->fn(u);
  std::unique_lock lock(state_->mu);
  state_->table.emplace(u, v);
  return v;
}

namespace {

double PoissonPmf(double mean, int j) {
  if (mean == 0.0) return j == 0 ? 1.0 : 0.0;
  return std::exp(j * std::log(mean) - mean - std::lgamma(j + 1.0));
}

void CheckTime(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("semigroup: t must be finite and >= 0");
}

void CheckEpsilon(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
}

// Poisson(mean) weights for the uniformization series: step(m, w, done) for
// m = 0, 1, ... until the remaining mass drops below the cutoff; the last
// call carries that remaining mass as well, so the weights sum to one.
template <typename Step>
void UniformizationWeights(double mean, Step&& step) {
  double cumulative = 0.0;
  for (int m = 0;; ++m) {
    const double w = PoissonPmf(mean, m);
    cumulative += w;
    const double tail = std::max(0.0, 1.0 - cumulative);
    const bool done = tail < kUniformizationTail && m >= mean;
    step(m, done ? w + tail : w, done);
    if (done) return;
  }
}

}  // namespace

std::vector<double> PoissonLevels(double mean, int stabilization) {
  if (!(mean >= 0.0)) throw std::invalid_argument("PoissonLevels: mean must be >= 0");
  if (stabilization < 0) throw std::invalid_argument("PoissonLevels: negative stabilization index");
  std::vector<double> out(static_cast<std::size_t>(stabilization) + 1);
  double mass = 0.0;
  for (int j = 0; j < stabilization; ++j) {
    out[static_cast<std::size_t>(j)] = PoissonPmf(mean, j);
    mass += out[static_cast<std::size_t>(j)];
  }
  out.back() = std::max(0.0, 1.0 - mass);
  return out;
}

// ---------------------------------------------------------------------------
// Sparse case.

SparseGenerator::SparseGenerator(const InteractionGraph* graph, double rate)
    : graph_(graph), rate_(rate) {
  if (graph_ == nullptr) throw std::invalid_argument("SparseGenerator: null graph");
  if (!(rate_ >= 0.0) || !std::isfinite(rate_)) throw std::invalid_argument("SparseGenerator: rate must be >= 0");
}

SparseGenerator SparseGenerator::FromParams(const InteractionGraph* graph, double alpha,
                                            double beta, double gamma, double eps) {
  CheckEpsilon(eps);
  if (!(alpha > 0.0 && beta > 0.0 && gamma > 0.0)) {
    throw std::invalid_argument("SparseGenerator: alpha, beta, gamma must be > 0");
  }
  return SparseGenerator(graph, gamma * beta * beta / (alpha * eps));
}

double SparseGenerator::Apply(const SubsetFunction& f, const Subset& u) const {
  return rate_ * (f(graph_->Neighborhood(u, 1)) - f(u));
}

double ApplyNSparse(const InteractionGraph& g, const SubsetFunction& f, const Subset& u) {
  return f(g.Neighborhood(u, 1));
}

double SemigroupSparse(const SparseGenerator& gen, double t, const SubsetFunction& f,
                       const Subset& u) {
  CheckTime(t);
  const auto chain = gen.graph().NeighborhoodChain(u);
  const auto levels = PoissonLevels(gen.rate() * t, static_cast<int>(chain.size()) - 1);
  double total = 0.0;
  for (std::size_t j = 0; j < chain.size(); ++j) {
    if (levels[j] != 0.0) total += levels[j] * f(chain[j]);
  }
  return total;
}

SubsetFunction SemigroupSparseFunction(const SparseGenerator& gen, double t, SubsetFunction f) {
  CheckTime(t);
  return SubsetFunction(
      [gen, t, f = std::move(f)](const Subset& u) { return SemigroupSparse(gen, t, f, u); },
      /*memoize=*/true);
}

double CommutationResidual(const SparseGenerator& gen, const SubsetFunction& f, const Subset& u) {
  const InteractionGraph& g = gen.graph();
  const SubsetFunction nf([&](const Subset& v) { return ApplyNSparse(g, f, v); });
  const SubsetFunction af([&](const Subset& v) { return gen.Apply(f, v); });
  return std::abs(gen.Apply(nf, u) - ApplyNSparse(g, af, u));
}

// ---------------------------------------------------------------------------
// Weak case.

WeakGenerator::WeakGenerator(int n, std::vector<WeightedSupport> supports, double rate_factor)
    : n_(n), rate_factor_(rate_factor) {
  if (!(rate_factor >= 0.0) || !std::isfinite(rate_factor)) {
    throw std::invalid_argument("WeakGenerator: rate factor must be >= 0");
  }
  for (auto& s : supports) {
    if (s.support.empty() || s.support.Bound() > n) {
      throw std::invalid_argument("WeakGenerator: support empty or out of range");
    }
    if (!(s.weight >= 0.0)) throw std::invalid_argument("WeakGenerator: negative weight");
    if (s.weight > 0.0) supports_.push_back(std::move(s));
  }
}

WeakGenerator WeakGenerator::FromPotential(const StructuredPotential& pot, double alpha,
                                           double gamma, double eps) {
  CheckEpsilon(eps);
  if (!(alpha > 0.0 && gamma > 0.0)) throw std::invalid_argument("WeakGenerator: alpha, gamma must be > 0");
  std::vector<WeightedSupport> supports;
  for (const auto& t : pot.terms()) supports.push_back({t.support_set(), t.lipschitz()});
  const double m0 = ComputeInteractionConstants(pot).m0;
  return WeakGenerator(pot.dimension(), std::move(supports), gamma * m0 / (alpha * eps));
}

double WeakGenerator::M0() const {
  std::vector<double> load(static_cast<std::size_t>(n_), 0.0);
  for (const auto& s : supports_) {
    for (int i : s.support.Indices()) load[static_cast<std::size_t>(i)] += s.weight;
  }
  return load.empty() ? 0.0 : *std::max_element(load.begin(), load.end());
}

double WeakGenerator::Apply(const SubsetFunction& f, const Subset& u) const {
  const double fu = f(u);
  double total = 0.0;
  for (const auto& s : supports_) {
    if (s.support.Intersects(u)) total += s.weight * (f(s.support.Union(u)) - fu);
  }
  return rate_factor_ * total;
}

std::vector<Subset> WeakGenerator::Reachable(const std::vector<Subset>& starts,
                                             std::size_t limit) const {
  std::unordered_map<Subset, std::size_t, SubsetHash> seen;
  std::vector<Subset> order;
  auto visit = [&](const Subset& s) {
    if (seen.emplace(s, order.size()).second) {
      order.push_back(s);
      if (order.size() > limit) {
        throw std::length_error("weak generator: more than " + std::to_string(limit) +
                                " reachable states");
      }
    }
  };
  for (const auto& s : starts) visit(s);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const Subset v = order[head];
    for (const auto& s : supports_) {
      if (s.support.Intersects(v)) visit(s.support.Union(v));
    }
  }
  return order;
}

double ApplyNWeak(const std::vector<WeightedSupport>& supports, const SubsetFunction& f,
                  const Subset& u) {
  double total = 0.0;
  for (const auto& s : supports) {
    if (s.support.Intersects(u)) total += s.weight * f(s.support);
  }
  return total;
}

namespace {

// Rate matrix of the weak chain restricted to a closed family of states,
// with N available when the family contains every support.
class WeakLattice {
 public:
  WeakLattice(const WeakGenerator& gen, double rate_factor, std::vector<Subset> states,
              bool with_n)
      : states_(std::move(states)) {
    std::unordered_map<Subset, int, SubsetHash> index;
    for (std::size_t i = 0; i < states_.size(); ++i) index.emplace(states_[i], static_cast<int>(i));
    out_.resize(states_.size());
    if (with_n) n_terms_.resize(states_.size());
    for (std::size_t i = 0; i < states_.size(); ++i) {
      double exit = 0.0;
      for (const auto& s : gen.supports()) {
        if (!s.support.Intersects(states_[i])) continue;
        const Subset next = s.support.Union(states_[i]);
        if (next != states_[i]) {
          const double r = rate_factor * s.weight;
          out_[i].push_back({index.at(next), r});
          exit += r;
        }
        if (with_n) n_terms_[i].push_back({index.at(s.support), s.weight});
      }
      theta_ = std::max(theta_, exit);
    }
  }

  std::size_t size() const { return states_.size(); }
  const Subset& state(std::size_t i) const { return states_[i]; }

  Eigen::VectorXd Evaluate(const SubsetFunction& f) const {
    Eigen::VectorXd v(static_cast<Eigen::Index>(states_.size()));
    for (std::size_t i = 0; i < states_.size(); ++i) v(static_cast<Eigen::Index>(i)) = f(states_[i]);
    return v;
  }

  // e^{tA} v by uniformization.
  Eigen::VectorXd Exp(double t, const Eigen::VectorXd& v) const {
    if (theta_ == 0.0 || t == 0.0) return v;
    Eigen::VectorXd term = v, result = Eigen::VectorXd::Zero(v.size());
    UniformizationWeights(theta_ * t, [&](int m, double w, bool /*done*/) {
      if (m > 0) term = Step(term);
      result += w * term;
    });
    return result;
  }

  Eigen::VectorXd ApplyN(const Eigen::VectorXd& v) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
    for (std::size_t i = 0; i < n_terms_.size(); ++i) {
      for (const auto& [j, w] : n_terms_[i]) out(static_cast<Eigen::Index>(i)) += w * v(j);
    }
    return out;
  }

 private:
  struct Edge {
    int to;
    double weight;
  };

  // P = I + A / theta.
  Eigen::VectorXd Step(const Eigen::VectorXd& v) const {
    Eigen::VectorXd out = v;
    for (std::size_t i = 0; i < out_.size(); ++i) {
      double delta = 0.0;
      for (const auto& e : out_[i]) delta += e.weight * (v(e.to) - v(static_cast<Eigen::Index>(i)));
      out(static_cast<Eigen::Index>(i)) += delta / theta_;
    }
    return out;
  }

  std::vector<Subset> states_;
  std::vector<std::vector<Edge>> out_;
  std::vector<std::vector<Edge>> n_terms_;
  double theta_ = 0.0;
};

void CheckCertificateInput(const CertificateInput& in) {
  CheckEpsilon(in.epsilon);
  if (!(in.alpha > 0.0 && in.gamma > 0.0)) throw std::invalid_argument("certificate: alpha, gamma must be > 0");
  if (!(in.h > 0.0) || !std::isfinite(in.h)) throw std::invalid_argument("certificate: h must be > 0");
  if (in.steps < 0) throw std::invalid_argument("certificate: steps must be >= 0");
  if (in.h_max && in.h > *in.h_max) {
    throw std::domain_error("certificate: h = " + std::to_string(in.h) + " exceeds h* = " +
                            std::to_string(*in.h_max));
  }
}

}  // namespace

double SemigroupWeak(const WeakGenerator& gen, double t, const SubsetFunction& f,
                     const Subset& u) {
  CheckTime(t);
  const WeakLattice lattice(gen, gen.rate_factor(), gen.Reachable({u}), /*with_n=*/false);
  return lattice.Exp(t, lattice.Evaluate(f))(0);
}

double WeakCommutationResidual(const WeakGenerator& gen, const SubsetFunction& f,
                               const Subset& u) {
  const auto& supports = gen.supports();
  const SubsetFunction nf([&](const Subset& v) { return ApplyNWeak(supports, f, v); });
  const SubsetFunction af([&](const Subset& v) { return gen.Apply(f, v); });
  return std::abs(gen.Apply(nf, u) - ApplyNWeak(supports, af, u));
}

// ---------------------------------------------------------------------------
// Certificates.

std::vector<double> CertifiedTrajectorySparse(const InteractionGraph& g, const CertificateInput& in,
                                              const SubsetFunction& h0, const Subset& u) {
  CheckCertificateInput(in);
  if (!(in.beta > 0.0)) throw std::invalid_argument("certificate: beta must be > 0");
  const auto chain = g.NeighborhoodChain(u);
  const int top = static_cast<int>(chain.size()) - 1;
  const std::size_t levels = chain.size();

  const double a = in.alpha, b = in.beta, h = in.h, eps = in.epsilon;
  const double lambda = in.gamma * b * b / (a * eps);
  const double decay = std::exp(-a * h);
  const double one_minus = -std::expm1(-a * h);
  const double kappa = 2.0 * std::pow(b, 4) * h * h * one_minus / (a * a * (1.0 - eps));
  const double g_scale = b * b * h * (b * h + 1.0) / (1.0 - eps);

  // Level i holds the value at N_i(u); from N_i(u) the chain stabilizes
  // after top - i more steps.
  std::vector<std::vector<double>> weights(levels);
  for (int i = 0; i <= top; ++i) weights[static_cast<std::size_t>(i)] = PoissonLevels(lambda * h, top - i);
  auto shift = [&](const std::vector<double>& v) {
    std::vector<double> out(levels);
    for (int i = 0; i <= top; ++i) out[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(std::min(i + 1, top))];
    return out;
  };
  auto exp_ha = [&](const std::vector<double>& v) {
    std::vector<double> out(levels, 0.0);
    for (int i = 0; i <= top; ++i) {
      const auto& w = weights[static_cast<std::size_t>(i)];
      for (std::size_t j = 0; j < w.size(); ++j) out[static_cast<std::size_t>(i)] += w[j] * v[static_cast<std::size_t>(i) + j];
    }
    return out;
  };
  // P = T e^{hA}; T and e^{hA} commute here.
  auto step = [&](const std::vector<double>& v) {
    const auto e = exp_ha(v);
    const auto n2 = shift(shift(e));
    std::vector<double> out(levels);
    for (std::size_t i = 0; i < levels; ++i) out[i] = decay * e[i] + kappa * n2[i];
    return out;
  };

  std::vector<double> v(levels), gv(levels);
  for (std::size_t i = 0; i < levels; ++i) {
    v[i] = h0(chain[i]);
    gv[i] = g_scale * static_cast<double>(chain[i].size());
  }
  std::vector<double> w = exp_ha(shift(gv));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(in.steps) + 1);
  out.push_back(v[0]);
  double acc = 0.0;
  for (int k = 1; k <= in.steps; ++k) {
    v = step(v);
    acc += w[0];
    w = step(w);
    out.push_back(v[0] + one_minus / a * acc);
  }
  return out;
}

std::vector<double> CertifiedTrajectoryWeak(const WeakGenerator& gen, const CertificateInput& in,
                                            const SubsetFunction& h0, const Subset& u) {
  CheckCertificateInput(in);
  const double m0 = gen.M0();
  const double a = in.alpha, h = in.h, eps = in.epsilon;
  const double rate_factor = in.gamma * m0 / (a * eps);

  std::vector<Subset> starts{u};
  for (const auto& s : gen.supports()) starts.push_back(s.support);
  const WeakLattice lattice(gen, rate_factor, gen.Reachable(starts), /*with_n=*/true);

  const double decay = std::exp(-a * h);
  const double one_minus = -std::expm1(-a * h);
  const double kappa = 2.0 * h * h * m0 * m0 * one_minus / (a * a * (1.0 - eps));
  auto step = [&](const Eigen::VectorXd& v) {
    return lattice.Exp(h, (decay * v + kappa * lattice.ApplyN(lattice.ApplyN(v))).eval());
  };

  const Eigen::VectorXd size = lattice.Evaluate(SubsetFunction::Size());
  const Eigen::VectorXd ns = lattice.ApplyN(size);
  const Eigen::VectorXd gv = h * m0 / (1.0 - eps) * ((m0 / a) * h * lattice.ApplyN(ns) + ns);

  Eigen::VectorXd v = lattice.Evaluate(h0);
  Eigen::VectorXd w = lattice.Exp(h, gv);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(in.steps) + 1);
  out.push_back(v(0));
  double acc = 0.0;
  for (int k = 1; k <= in.steps; ++k) {
    v = step(v);
    acc += w(0);
    w = step(w);
    out.push_back(v(0) + one_minus / a * acc);
  }
  return out;
}

}  // namespace deloc
