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

#include "deloc/bounds.h"

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace deloc {

namespace {

constexpr std::array<std::pair<Theorem, const char*>, 8> kNames = {{
    {Theorem::kSparsePoly, "sparse-poly"},
    {Theorem::kSparseExp, "sparse-exp"},
    {Theorem::kWeak, "weak"},
    {Theorem::kOnestepLinf, "onestep-linf"},
    {Theorem::kSparseDynPoly, "sparse-dyn-poly"},
    {Theorem::kSparseDynExp, "sparse-dyn-exp"},
    {Theorem::kWeakDyn, "weak-dyn"},
    {Theorem::kContinuousTime, "continuous-time"},
}};

// Records the first failed precondition.
void Require(BoundReport* r, bool ok, const std::string& reason) {
  if (!ok && r->valid) {
    r->valid = false;
    r->reason = reason;
  }
}

double Tau(double alpha, double eta) { return alpha * eta * eta / (2.0 * (2.0 - eta)); }

}  // namespace

std::string ToString(Theorem t) {
  for (const auto& [k, name] : kNames) {
    if (k == t) return name;
  }
  return "?";
}

std::optional<Theorem> ParseTheorem(const std::string& name) {
  for (const auto& [k, n] : kNames) {
    if (name == n) return k;
  }
  return std::nullopt;
}

BoundReport SparsePolyConstants(double alpha, double beta, double gamma, double c, double p) {
  BoundReport r;
  r.theorem = Theorem::kSparsePoly;
  r.inputs.alpha = alpha;
  r.inputs.beta = beta;
  r.inputs.gamma = gamma;
  r.inputs.c = c;
  r.inputs.p = p;
  Require(&r, alpha > 0.0, "alpha > 0");
  Require(&r, alpha <= beta, "alpha <= beta");
  Require(&r, gamma > 0.0, "gamma > 0");
  Require(&r, c >= 1.0, "c >= 1");
  Require(&r, p >= 1.0, "p >= 1");
  if (alpha > 0.0 && beta > 0.0 && c > 0.0 && p > 0.0) {
    const double ratio = beta * beta / alpha;
    r.outputs.C = 40.0 * c * c * std::pow(p, p) * ratio *
                  std::pow(8.0 * gamma * beta * beta / (alpha * alpha) + 1.0, p);
    r.outputs.h_star = alpha / (4.0 * c * beta * beta);
  }
  return r;
}

BoundReport SparseExpConstants(double alpha, double beta, double gamma, double c, double r_growth) {
  BoundReport r;
  r.theorem = Theorem::kSparseExp;
  r.inputs.alpha = alpha;
  r.inputs.beta = beta;
  r.inputs.gamma = gamma;
  r.inputs.c = c;
  r.inputs.r = r_growth;
  Require(&r, alpha > 0.0, "alpha > 0");
  Require(&r, alpha <= beta, "alpha <= beta");
  Require(&r, gamma > 0.0, "gamma > 0");
  Require(&r, c >= 1.0, "c >= 1");
  Require(&r, r_growth >= 1.0, "r >= 1");
  if (!(alpha > 0.0 && beta > 0.0 && gamma > 0.0 && c > 0.0)) return r;
  const double eta = 1.0 - gamma * beta * beta / (alpha * alpha) * (r_growth - 1.0);
  r.outputs.eta = eta;
  const bool subcritical = r_growth < 1.0 + alpha * alpha / (gamma * beta * beta) && eta > 0.0;
  Require(&r, subcritical, "r < 1 + alpha^2/(gamma beta^2)");
  if (!subcritical) return r;
  r.outputs.tau = Tau(alpha, eta);
  r.outputs.C = 10.0 * beta * beta * c * c / (alpha * eta * eta * eta) *
                std::exp(gamma * (r_growth - 1.0) / c);
  r.outputs.h_star = alpha * std::pow(eta, 1.5) / (5.0 * beta * beta * c);
  return r;
}

BoundReport WeakConstants(double alpha, double gamma, double m0, double m1, double r1) {
  BoundReport r;
  r.theorem = Theorem::kWeak;
  r.inputs.alpha = alpha;
  r.inputs.gamma = gamma;
  r.inputs.m0 = m0;
  r.inputs.m1 = m1;
  r.inputs.r1 = r1;
  Require(&r, alpha > 0.0, "alpha > 0");
  Require(&r, gamma > 0.0, "gamma > 0");
  Require(&r, m0 > 0.0 && m1 > 0.0, "M0, M1 > 0");
  Require(&r, r1 >= 0.0, "R1 >= 0");
  if (!(alpha > 0.0)) return r;
  const double lhs = gamma * m0 * r1;
  const double eta = 1.0 - lhs / (alpha * alpha);
  r.outputs.eta = eta;
  Require(&r, lhs < alpha * alpha, "gamma M0 R1 < alpha^2");
  if (!(lhs < alpha * alpha) || !(m0 > 0.0 && m1 > 0.0)) return r;
  r.outputs.tau = Tau(alpha, eta);
  r.outputs.C = 10.0 * m0 * m1 / (alpha * eta * eta * eta) * std::exp(gamma);
  r.outputs.h_star = alpha * std::pow(eta, 1.5) / (5.0 * m0 * m1);
  return r;
}

BoundReport OnestepLinfBound(double alpha, double alpha0, double beta, double h, int n, int usize) {
  BoundReport r;
  r.theorem = Theorem::kOnestepLinf;
  r.inputs.alpha = alpha;
  r.inputs.alpha0 = alpha0;
  r.inputs.beta = beta;
  r.inputs.h = h;
  r.inputs.n = n;
  r.inputs.usize = usize;
  Require(&r, beta > alpha && alpha > alpha0 && alpha0 > 0.0, "beta > alpha > alpha0 > 0");
  Require(&r, n >= 1, "n >= 1");
  Require(&r, usize >= 0 && usize <= n, "0 <= |u| <= n");
  Require(&r, h >= 0.0, "h >= 0");
  Require(&r, h <= 1.0 / beta, "h <= 1/beta");
  if (alpha > alpha0 && n >= 1 && h >= 0.0) {
    const double coeff = 4.0 * beta / (alpha - alpha0);
    const double full = h * std::log(2.0 * n) * coeff * coeff;
    r.outputs.h_star = 1.0 / beta;
    r.outputs.bound_value = usize > 0 ? usize * full : full;
  }
  return r;
}

BoundReport DynamicBound(const DynamicParams& prm, int k, double h, int usize, double c0) {
  BoundReport base;
  Theorem dyn;
  switch (prm.theorem) {
    case Theorem::kSparsePoly:
    case Theorem::kSparseDynPoly:
      base = SparsePolyConstants(prm.alpha, prm.beta, prm.gamma, prm.c, prm.p);
      dyn = Theorem::kSparseDynPoly;
      break;
    case Theorem::kSparseExp:
    case Theorem::kSparseDynExp:
      base = SparseExpConstants(prm.alpha, prm.beta, prm.gamma, prm.c, prm.r);
      dyn = Theorem::kSparseDynExp;
      break;
    case Theorem::kWeak:
    case Theorem::kWeakDyn:
      base = WeakConstants(prm.alpha, prm.gamma, prm.m0, prm.m1, prm.r1);
      dyn = Theorem::kWeakDyn;
      break;
    default:
      throw std::invalid_argument("DynamicBound: no dynamic form for " + ToString(prm.theorem));
  }
  BoundReport r = base;
  r.theorem = dyn;
  r.inputs.k = k;
  r.inputs.h = h;
  r.inputs.usize = usize;
  r.inputs.c0 = c0;
  Require(&r, k >= 0, "k >= 0");
  Require(&r, usize >= 0, "|u| >= 0");
  Require(&r, c0 >= 0.0, "C0 >= 0");
  Require(&r, h >= 0.0, "h >= 0");
  if (!r.outputs.C || !r.outputs.h_star) return r;
  Require(&r, h <= *r.outputs.h_star, "h <= h*");

  const double kh = static_cast<double>(k) * h;
  const double u = static_cast<double>(usize);
  double transient = 0.0;
  if (dyn == Theorem::kSparseDynPoly) {
    transient = 2.0 * prm.c * c0 * std::exp(-prm.alpha * kh / 2.0) *
                std::pow(2.0 * prm.gamma * prm.beta * prm.beta / prm.alpha * kh + 1.0, prm.p);
  } else {
    const double tau = *r.outputs.tau;
    transient = (dyn == Theorem::kSparseDynExp ? prm.c : 1.0) * c0 * std::exp(-tau * kh);
  }
  r.outputs.bound_value = transient * u + *r.outputs.C * h * u;
  return r;
}

BoundReport ContinuousTimeBound(const InteractionGraph& g, const Subset& u, double t, double eps,
                                double alpha, double beta, double gamma, const SubsetFunction& h0) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("ContinuousTimeBound: epsilon must lie in (0, 1)");
  BoundReport r;
  r.theorem = Theorem::kContinuousTime;
  r.inputs.alpha = alpha;
  r.inputs.beta = beta;
  r.inputs.gamma = gamma;
  r.inputs.epsilon = eps;
  r.inputs.t = t;
  r.inputs.usize = u.size();
  r.inputs.n = g.num_vertices();
  Require(&r, t >= 0.0, "t >= 0");
  Require(&r, alpha > 0.0 && beta > 0.0 && gamma > 0.0, "alpha, beta, gamma > 0");
  if (!r.valid) return r;

  const auto chain = g.NeighborhoodChain(u);
  for (std::size_t j = 1; j < chain.size(); ++j) {
    Require(&r, h0(chain[j - 1]) <= h0(chain[j]), "H0 nondecreasing along N_j(u)");
  }
  const double rate = gamma * beta * beta / (2.0 * alpha);
  const SparseGenerator gen(&g, rate);
  r.outputs.bound_value = std::exp(-2.0 * alpha * (1.0 - eps) * t) * SemigroupSparse(gen, t / eps, h0, u);
  return r;
}

double PoissonMomentBound(double lambda, double t, double p) {
  if (!(lambda >= 0.0 && t >= 0.0 && p >= 1.0)) {
    throw std::invalid_argument("PoissonMomentBound: need lambda, t >= 0 and p >= 1");
  }
  return std::pow(lambda * t + p, p);
}

double SubgaussianGradLinfBound(double beta, int n) {
  if (!(beta > 0.0) || n < 1) throw std::invalid_argument("SubgaussianGradLinfBound: need beta > 0, n >= 1");
  return 4.0 * beta * std::log(2.0 * n);
}

double DefaultEpsilonSparsePoly() { return 0.5; }

double DefaultEpsilonSparseExp(double alpha, double beta, double gamma, double r) {
  return 0.5 + gamma * beta * beta * (r - 1.0) / (2.0 * alpha * alpha);
}

double DefaultEpsilonWeak(double alpha, double gamma, double m0, double r1) {
  return 0.5 + gamma * m0 * r1 / (2.0 * alpha * alpha);
}

std::string BoundReportJson(const BoundReport& report) {
  using nlohmann::json;
  json in = json::object(), out = json::object();
  auto put = [](json& j, const char* key, const auto& v) {
    if (v) j[key] = *v;
  };
  const auto& i = report.inputs;
  put(in, "alpha", i.alpha);
  put(in, "beta", i.beta);
  put(in, "gamma", i.gamma);
  put(in, "c", i.c);
  put(in, "p", i.p);
  put(in, "r", i.r);
  put(in, "M0", i.m0);
  put(in, "M1", i.m1);
  put(in, "R1", i.r1);
  put(in, "alpha0", i.alpha0);
  put(in, "h", i.h);
  put(in, "C0", i.c0);
  put(in, "epsilon", i.epsilon);
  put(in, "t", i.t);
  put(in, "n", i.n);
  put(in, "k", i.k);
  put(in, "usize", i.usize);
  const auto& o = report.outputs;
  put(out, "C", o.C);
  put(out, "h_star", o.h_star);
  put(out, "eta", o.eta);
  put(out, "tau", o.tau);
  put(out, "bound_value", o.bound_value);
  json j = {{"theorem", ToString(report.theorem)},
            {"inputs", in},
            {"outputs", out},
            {"valid", report.valid}};
  if (!report.valid) j["reason"] = report.reason;
  return j.dump(2);
}

}  // namespace deloc
