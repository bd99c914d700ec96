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

#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>

#include "commands.h"
#include "deloc/bounds.h"
#include "deloc/potential.h"
#include "deloc/potential_io.h"

namespace deloc::cli {

namespace {

struct BoundsOptions {
  std::string theorem;
  std::optional<double> alpha, beta, gamma, c, p, r, m0, m1, r1, alpha0, h, c0, t, eps, h0_scale;
  std::optional<int> n, k, usize;
  std::string potential, graph, u;
};

double Need(const std::optional<double>& v, const char* flag) {
  if (!v) throw std::invalid_argument(std::string("missing --") + flag);
  return *v;
}

int NeedInt(const std::optional<int>& v, const char* flag) {
  if (!v) throw std::invalid_argument(std::string("missing --") + flag);
  return *v;
}

// Fills unset smoothness and interaction constants from a potential file.
void FromPotential(BoundsOptions& o) {
  if (o.potential.empty()) return;
  const StructuredPotential pot = LoadPotentialFile(o.potential);
  const InteractionConstants k = ComputeInteractionConstants(pot);
  if (!o.m0) o.m0 = k.m0;
  if (!o.m1) o.m1 = k.m1;
  if (!o.r1) o.r1 = k.r1;
  if (!o.n) o.n = pot.dimension();
  if (pot.smoothness()) {
    const SmoothnessParams s = pot.ResolvedSmoothness();
    if (!o.alpha) o.alpha = s.alpha;
    if (!o.beta) o.beta = s.beta;
    if (!o.gamma) o.gamma = s.gamma;
    if (!o.alpha0 && s.alpha0) o.alpha0 = s.alpha0;
  }
}

BoundReport Compute(BoundsOptions o) {
  const auto theorem = ParseTheorem(o.theorem);
  if (!theorem) throw std::invalid_argument("unknown theorem \"" + o.theorem + "\"");
  FromPotential(o);
  const double gamma = o.gamma.value_or(1.0);
  switch (*theorem) {
    case Theorem::kSparsePoly:
      return SparsePolyConstants(Need(o.alpha, "alpha"), Need(o.beta, "beta"), gamma, Need(o.c, "c"),
                                 Need(o.p, "p"));
    case Theorem::kSparseExp:
      return SparseExpConstants(Need(o.alpha, "alpha"), Need(o.beta, "beta"), gamma, Need(o.c, "c"),
                                Need(o.r, "r"));
    case Theorem::kWeak:
      return WeakConstants(Need(o.alpha, "alpha"), gamma, Need(o.m0, "m0"), Need(o.m1, "m1"),
                           Need(o.r1, "r1"));
    case Theorem::kOnestepLinf:
      return OnestepLinfBound(Need(o.alpha, "alpha"), Need(o.alpha0, "alpha0"), Need(o.beta, "beta"),
                              Need(o.h, "h"), NeedInt(o.n, "n"), o.usize.value_or(0));
    case Theorem::kSparseDynPoly:
    case Theorem::kSparseDynExp:
    case Theorem::kWeakDyn: {
      DynamicParams prm;
      prm.theorem = *theorem;
      prm.alpha = Need(o.alpha, "alpha");
      prm.gamma = gamma;
      if (*theorem == Theorem::kWeakDyn) {
        prm.m0 = Need(o.m0, "m0");
        prm.m1 = Need(o.m1, "m1");
        prm.r1 = Need(o.r1, "r1");
      } else {
        prm.beta = Need(o.beta, "beta");
        prm.c = Need(o.c, "c");
        if (*theorem == Theorem::kSparseDynPoly) prm.p = Need(o.p, "p");
        else prm.r = Need(o.r, "r");
      }
      return DynamicBound(prm, NeedInt(o.k, "k"), Need(o.h, "h"), NeedInt(o.usize, "usize"), Need(o.c0, "c0"));
    }
    case Theorem::kContinuousTime: {
      if (o.graph.empty()) throw std::invalid_argument("missing --graph");
      const InteractionGraph g = ParseGraphSpec(o.graph);
      const Subset u = ParseSubset(o.u);
      if (u.empty()) throw std::invalid_argument("missing --u");
      const SubsetFunction h0 = SubsetFunction::Linear(o.h0_scale.value_or(1.0));
      return ContinuousTimeBound(g, u, Need(o.t, "t"), o.eps.value_or(0.5), Need(o.alpha, "alpha"),
                                 Need(o.beta, "beta"), gamma, h0);
    }
  }
  throw std::logic_error("unhandled theorem");
}

}  // namespace

void RegisterBounds(CLI::App& app, Action* action) {
  auto o = std::make_shared<BoundsOptions>();
  CLI::App* sub = app.add_subcommand("bounds", "Evaluate explicit constants or a bound curve (JSON on stdout)");
  sub->add_option("theorem", o->theorem,
                  "sparse-poly | sparse-exp | weak | onestep-linf | sparse-dyn-poly | sparse-dyn-exp | "
                  "weak-dyn | continuous-time")
      ->required();
  sub->add_option("--alpha", o->alpha, "Log-Sobolev / convexity constant");
  sub->add_option("--beta", o->beta, "Gradient Lipschitz constant");
  sub->add_option("--gamma", o->gamma, "Conditional transport constant (default 1)");
  sub->add_option("--c", o->c, "Growth constant c");
  sub->add_option("--p", o->p, "Polynomial growth exponent");
  sub->add_option("--r", o->r, "Exponential growth rate");
  sub->add_option("--m0", o->m0, "M0");
  sub->add_option("--m1", o->m1, "M1");
  sub->add_option("--r1", o->r1, "R1");
  sub->add_option("--alpha0", o->alpha0, "Off-diagonal Hessian bound (infinity norm)");
  sub->add_option("--h", o->h, "Step size");
  sub->add_option("--n", o->n, "Dimension");
  sub->add_option("--k", o->k, "Iteration count");
  sub->add_option("--usize", o->usize, "Marginal size |u|");
  sub->add_option("--c0", o->c0, "Initial entropy per coordinate");
  sub->add_option("--t", o->t, "Time (continuous-time)");
  sub->add_option("--eps", o->eps, "epsilon in (0,1) (continuous-time, default 0.5)");
  sub->add_option("--graph", o->graph, "Interaction graph: path:N, grid:RxC, tree:D, complete:N, edges:N:file");
  sub->add_option("--u", o->u, "Marginal as comma-separated indices (continuous-time)");
  sub->add_option("--h0-scale", o->h0_scale, "Initial entropy H0(w) = scale*|w| (continuous-time, default 1)");
  sub->add_option("--potential", o->potential, "Read constants from a potential spec")->check(CLI::ExistingFile);
  sub->callback([o, action] {
    *action = [o] {
      const BoundReport rep = Compute(*o);
      std::cout << BoundReportJson(rep) << "\n";
      return kOk;
    };
  });
}

}  // namespace deloc::cli
