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
#include "deloc/hierarchy.h"
#include "deloc/potential_io.h"
#include "json.hpp"

namespace deloc::cli {

namespace {

struct HierarchyOptions {
  std::string op = "semigroup";
  std::string mode = "sparse";
  std::string graph, potential, u, f = "size";
  std::optional<double> rate, alpha, beta, gamma, h_max;
  double eps = 0.5, t = 1.0, h = 0.01, h0_scale = 1.0;
  int steps = 100;
};

SubsetFunction ParseFunction(const std::string& spec) {
  if (spec == "size") return SubsetFunction::Size();
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const std::string kind = spec.substr(0, colon);
    const double v = std::stod(spec.substr(colon + 1));
    if (kind == "const") return SubsetFunction::Constant(v);
    if (kind == "linear") return SubsetFunction::Linear(v);
  }
  throw std::invalid_argument("bad --f \"" + spec + "\" (size, const:V or linear:S)");
}

struct Loaded {
  std::optional<StructuredPotential> pot;
  double alpha = 1.0, beta = 1.0, gamma = 1.0;
};

Loaded Load(const HierarchyOptions& o) {
  Loaded l;
  if (!o.potential.empty()) {
    l.pot = LoadPotentialFile(o.potential);
    if (l.pot->smoothness()) {
      const SmoothnessParams s = l.pot->ResolvedSmoothness();
      l.alpha = s.alpha;
      l.beta = *s.beta;
      l.gamma = s.gamma;
    }
  }
  if (o.alpha) l.alpha = *o.alpha;
  if (o.beta) l.beta = *o.beta;
  if (o.gamma) l.gamma = *o.gamma;
  return l;
}

nlohmann::json Sparse(const HierarchyOptions& o, const Loaded& l) {
  if (o.graph.empty()) throw std::invalid_argument("sparse mode needs --graph");
  const InteractionGraph g = ParseGraphSpec(o.graph);
  const Subset u = ParseSubset(o.u);
  if (u.empty()) throw std::invalid_argument("missing --u");
  nlohmann::json j = {{"mode", "sparse"}, {"op", o.op}, {"u", u.ToString()}};
  if (o.op == "chain") {
    std::vector<std::string> chain;
    for (const auto& s : g.NeighborhoodChain(u)) chain.push_back(s.ToString());
    j["chain"] = chain;
    j["stabilization_index"] = g.StabilizationIndex(u);
    return j;
  }
  if (o.op == "certificate") {
    CertificateInput in{l.alpha, l.beta, l.gamma, o.eps, o.h, o.steps, o.h_max};
    j["trajectory"] = CertifiedTrajectorySparse(g, in, SubsetFunction::Linear(o.h0_scale), u);
    return j;
  }
  const SparseGenerator gen = o.rate ? SparseGenerator(&g, *o.rate)
                                     : SparseGenerator::FromParams(&g, l.alpha, l.beta, l.gamma, o.eps);
  const SubsetFunction f = ParseFunction(o.f);
  j["rate"] = gen.rate();
  if (o.op == "semigroup") {
    j["t"] = o.t;
    j["value"] = SemigroupSparse(gen, o.t, f, u);
  } else if (o.op == "commutation") {
    j["residual"] = CommutationResidual(gen, f, u);
  } else {
    throw std::invalid_argument("unknown --op \"" + o.op + "\"");
  }
  return j;
}

nlohmann::json Weak(const HierarchyOptions& o, const Loaded& l) {
  if (!l.pot) throw std::invalid_argument("weak mode needs --potential");
  const Subset u = ParseSubset(o.u);
  if (u.empty()) throw std::invalid_argument("missing --u");
  WeakGenerator gen = WeakGenerator::FromPotential(*l.pot, l.alpha, l.gamma, o.eps);
  if (o.rate) gen = WeakGenerator(gen.dimension(), gen.supports(), *o.rate);
  nlohmann::json j = {{"mode", "weak"}, {"op", o.op}, {"u", u.ToString()}, {"M0", gen.M0()}};
  if (o.op == "chain") {
    std::vector<std::string> states;
    for (const auto& s : gen.Reachable({u})) states.push_back(s.ToString());
    j["reachable"] = states;
    return j;
  }
  if (o.op == "certificate") {
    CertificateInput in{l.alpha, l.beta, l.gamma, o.eps, o.h, o.steps, o.h_max};
    j["trajectory"] = CertifiedTrajectoryWeak(gen, in, SubsetFunction::Linear(o.h0_scale), u);
    return j;
  }
  const SubsetFunction f = ParseFunction(o.f);
  j["rate_factor"] = gen.rate_factor();
  if (o.op == "semigroup") {
    j["t"] = o.t;
    j["value"] = SemigroupWeak(gen, o.t, f, u);
  } else if (o.op == "commutation") {
    j["residual"] = WeakCommutationResidual(gen, f, u);
  } else {
    throw std::invalid_argument("unknown --op \"" + o.op + "\"");
  }
  return j;
}

}  // namespace

void RegisterHierarchy(CLI::App& app, Action* action) {
  auto o = std::make_shared<HierarchyOptions>();
  CLI::App* sub = app.add_subcommand("hierarchy", "Evaluate set-indexed semigroups and certificates (JSON)");
  sub->add_option("--op", o->op, "semigroup | commutation | chain | certificate")
      ->check(CLI::IsMember({"semigroup", "commutation", "chain", "certificate"}));
  sub->add_option("--mode", o->mode, "sparse | weak")->check(CLI::IsMember({"sparse", "weak"}));
  sub->add_option("--graph", o->graph, "Interaction graph (sparse): path:N, grid:RxC, tree:D, complete:N, file");
  sub->add_option("--potential", o->potential, "Potential spec (weak mode, or smoothness defaults)")
      ->check(CLI::ExistingFile);
  sub->add_option("--u", o->u, "Start set, comma-separated")->required();
  sub->add_option("--f", o->f, "Function on subsets: size | const:V | linear:S");
  sub->add_option("--t", o->t, "Time");
  sub->add_option("--rate", o->rate, "Override the jump rate (rate factor in weak mode)");
  sub->add_option("--alpha", o->alpha, "alpha");
  sub->add_option("--beta", o->beta, "beta");
  sub->add_option("--gamma", o->gamma, "gamma");
  sub->add_option("--eps", o->eps, "epsilon in (0,1)");
  sub->add_option("--h", o->h, "Step size (certificate)");
  sub->add_option("--steps", o->steps, "Iterations (certificate)");
  sub->add_option("--h-max", o->h_max, "Step ceiling enforced by the certificate");
  sub->add_option("--h0-scale", o->h0_scale, "Initial entropy H0(w) = scale*|w| (certificate)");
  sub->callback([o, action] {
    *action = [o] {
      const Loaded l = Load(*o);
      const nlohmann::json j = o->mode == "weak" ? Weak(*o, l) : Sparse(*o, l);
      std::cout << j.dump(2) << "\n";
      return kOk;
    };
  });
}

}  // namespace deloc::cli
