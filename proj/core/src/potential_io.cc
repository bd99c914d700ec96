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

#include "deloc/potential_io.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "deloc/graph.h"
#include "json.hpp"

namespace deloc {

namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument("potential spec " + where + ": " + what);
}

double GetNumber(const json& j, const std::string& key, const std::string& where,
                 std::optional<double> fallback = std::nullopt) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    Fail(where, "missing \"" + key + "\"");
  }
  if (!j.at(key).is_number()) Fail(where + "." + key, "expected a number");
  return j.at(key).get<double>();
}

int GetInt(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) Fail(where, "missing \"" + key + "\"");
  if (!j.at(key).is_number_integer()) Fail(where + "." + key, "expected an integer");
  return j.at(key).get<int>();
}

Eigen::MatrixXd GetMatrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) Fail(where, "expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = j.front().is_array() ? static_cast<Eigen::Index>(j.front().size()) : 0;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j.at(static_cast<std::size_t>(r));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      Fail(where, "ragged matrix");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& v = row.at(static_cast<std::size_t>(c));
      if (!v.is_number()) Fail(where, "matrix entries must be numbers");
      m(r, c) = v.get<double>();
    }
  }
  return m;
}

PairShape GetShape(const json& params, const std::string& where) {
  if (!params.contains("shape")) return PairShape::kQuadratic;
  const auto& s = params.at("shape");
  if (s == "quadratic") return PairShape::kQuadratic;
  if (s == "logcosh") return PairShape::kLogCosh;
  Fail(where + ".shape", "expected \"quadratic\" or \"logcosh\"");
}

// Moves a spec written over local indices 0..|support|-1 onto the support.
PairwiseSpec Relabel(PairwiseSpec local, const std::vector<int>& support, int n) {
  for (auto& c : local.confining) c.index = support[static_cast<std::size_t>(c.index)];
  for (auto& p : local.pairs) {
    p.i = support[static_cast<std::size_t>(p.i)];
    p.j = support[static_cast<std::size_t>(p.j)];
  }
  local.n = n;
  return local;
}

void ExpandBuiltin(const std::string& name, const json& params, const std::vector<int>& support,
                   int n, const std::string& where, std::vector<FactorTerm>* out) {
  const int k = static_cast<int>(support.size());
  if (name == "gaussian") {
    if (!params.contains("precision")) Fail(where, "missing params.precision");
    const Eigen::MatrixXd a = GetMatrix(params.at("precision"), where + ".params.precision");
    if (a.rows() != k || a.cols() != k) Fail(where, "precision must be |support| x |support|");
    for (int i = 0; i < k; ++i) {
      Eigen::MatrixXd q(1, 1);
      q(0, 0) = a(i, i);
      out->push_back(FactorTerm::Quadratic({support[static_cast<std::size_t>(i)]}, q));
    }
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        if (std::abs(a(i, j) - a(j, i)) > 1e-12 * std::max(1.0, std::abs(a(i, j)))) {
          Fail(where, "precision is not symmetric");
        }
        if (a(i, j) == 0.0) continue;
        Eigen::MatrixXd q = Eigen::MatrixXd::Zero(2, 2);
        q(0, 1) = q(1, 0) = a(i, j);
        out->push_back(FactorTerm::Quadratic(
            {support[static_cast<std::size_t>(i)], support[static_cast<std::size_t>(j)]}, q));
      }
    }
    return;
  }
  const double confining = GetNumber(params, "confining", where + ".params", 1.0);
  const double coupling = GetNumber(params, "coupling", where + ".params");
  const PairShape shape = GetShape(params, where + ".params");
  PairwiseSpec local;
  if (name == "chain-pairwise") {
    local = ChainPairwise(k, confining, coupling, shape);
  } else if (name == "grid-pairwise") {
    const int rows = GetInt(params, "rows", where + ".params");
    const int cols = GetInt(params, "cols", where + ".params");
    if (rows < 1 || cols < 1 || rows * cols != k) Fail(where, "rows * cols must equal |support|");
    local = GridPairwise(rows, cols, confining, coupling, shape);
  } else if (name == "mean-field") {
    local = MeanFieldPairwise(k, confining, coupling, shape);
  } else {
    Fail(where + ".kind", "unknown builtin \"" + name + "\"");
  }
  for (auto& f : PairwiseFactors(Relabel(std::move(local), support, n))) out->push_back(std::move(f));
}

std::vector<int> GetSupport(const json& term, int n, const std::string& where, bool required) {
  if (!term.contains("support")) {
    if (required) Fail(where, "missing \"support\"");
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
    return all;
  }
  const auto& s = term.at("support");
  if (!s.is_array() || s.empty()) Fail(where + ".support", "expected a non-empty index array");
  std::vector<int> out;
  for (const auto& v : s) {
    if (!v.is_number_integer()) Fail(where + ".support", "indices must be integers");
    const int i = v.get<int>();
    if (i < 0 || i >= n) Fail(where + ".support", "index " + std::to_string(i) + " outside [0, n)");
    out.push_back(i);
  }
  return out;
}

std::optional<SmoothnessParams> GetSmoothness(const json& root) {
  if (!root.contains("smoothness")) return std::nullopt;
  const auto& s = root.at("smoothness");
  if (!s.is_object()) Fail("smoothness", "expected an object");
  SmoothnessParams p;
  p.alpha = GetNumber(s, "alpha", "smoothness", 1.0);
  p.gamma = GetNumber(s, "gamma", "smoothness", 1.0);
  if (s.contains("beta")) p.beta = GetNumber(s, "beta", "smoothness");
  if (s.contains("alpha0")) p.alpha0 = GetNumber(s, "alpha0", "smoothness");
  return p;
}

}  // namespace

StructuredPotential ParsePotentialJson(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("potential spec: malformed JSON: ") + e.what());
  }
  if (!root.is_object()) Fail("<root>", "expected an object");
  const int n = GetInt(root, "n", "<root>");
  if (n < 1) Fail("n", "must be >= 1");
  if (!root.contains("terms") || !root.at("terms").is_array()) Fail("<root>", "missing \"terms\" array");

  std::vector<FactorTerm> terms;
  const auto& list = root.at("terms");
  for (std::size_t t = 0; t < list.size(); ++t) {
    const std::string where = "terms[" + std::to_string(t) + "]";
    const auto& term = list[t];
    if (!term.is_object()) Fail(where, "expected an object");
    if (!term.contains("kind") || !term.at("kind").is_string()) Fail(where, "missing \"kind\"");
    const std::string kind = term.at("kind").get<std::string>();
    const json params = term.value("params", json::object());
    try {
      if (kind == "quadratic") {
        const auto support = GetSupport(term, n, where, /*required=*/true);
        if (!params.contains("matrix")) Fail(where, "missing params.matrix");
        std::optional<double> lipschitz;
        if (term.contains("lipschitz")) lipschitz = GetNumber(term, "lipschitz", where);
        terms.push_back(FactorTerm::Quadratic(
            support, GetMatrix(params.at("matrix"), where + ".params.matrix"), lipschitz));
      } else if (kind.rfind("builtin:", 0) == 0) {
        if (term.contains("lipschitz")) Fail(where, "builtins derive their own Lipschitz weights");
        const auto support = GetSupport(term, n, where, /*required=*/false);
        ExpandBuiltin(kind.substr(8), params, support, n, where, &terms);
      } else {
        Fail(where + ".kind", "unknown kind \"" + kind + "\"");
      }
    } catch (const std::invalid_argument& e) {
      const std::string msg = e.what();
      if (msg.rfind("potential spec", 0) == 0) throw;
      Fail(where, msg);
    }
  }
  return StructuredPotential(n, std::move(terms), GetSmoothness(root));
}

StructuredPotential LoadPotentialFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open potential file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParsePotentialJson(buf.str());
}

std::string DescribePotentialJson(const StructuredPotential& pot) {
  const auto k = ComputeInteractionConstants(pot);
  json out;
  out["n"] = pot.dimension();
  out["factors"] = pot.terms().size();
  out["hash"] = pot.Hash();
  out["constants"] = {{"M0", k.m0}, {"M1", k.m1}, {"R0", k.r0}, {"R1", k.r1}};
  const auto g = BuildGraph(pot);
  out["edges"] = g.num_edges();
  if (pot.smoothness()) {
    const auto s = pot.ResolvedSmoothness();
    out["smoothness"] = {{"alpha", s.alpha}, {"beta", *s.beta}, {"gamma", s.gamma}};
    if (s.alpha0) out["smoothness"]["alpha0"] = *s.alpha0;
    const auto w = CheckWeakCondition(pot);
    out["weak_condition"] = {{"holds", w.holds}, {"eta", w.eta}, {"gamma_M0_R1", w.lhs},
                             {"alpha_sq", w.rhs}};
  } else {
    out["smoothness"] = nullptr;
  }
  return out.dump(2);
}

}  // namespace deloc
