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

// Interaction graph of a structured potential and neighbourhood growth.
//
// Vertices are coordinates; i ~ j when some factor with positive Lipschitz
// weight contains both. This is a superset of the pairs whose mixed partial
// is not identically zero, and every bound in bounds.h is monotone in the
// edge set, so the superset is safe.

#ifndef DELOC_GRAPH_H_
#define DELOC_GRAPH_H_

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "deloc/potential.h"
#include "deloc/subset.h"

namespace deloc {

class InteractionGraph {
 public:
  // Adjacency lists are sorted, symmetrized and stripped of self loops.
  InteractionGraph(int n, std::vector<std::vector<int>> adjacency);

  static InteractionGraph FromEdges(int n, const std::vector<std::pair<int, int>>& edges);
  static InteractionGraph Path(int n);
  static InteractionGraph Grid(int rows, int cols);
  // Complete binary tree with `depth` levels below the root (2^(depth+1)-1
  // vertices), vertex k has children 2k+1, 2k+2.
  static InteractionGraph BinaryTree(int depth);

  int num_vertices() const { return n_; }
  int num_edges() const;
  const std::vector<int>& neighbors(int i) const { return adj_[static_cast<std::size_t>(i)]; }
  std::vector<std::pair<int, int>> Edges() const;

  // N_k(u): N_0(u) = u, N_{k+1}(u) = N_k(u) plus all neighbours of it.
  Subset Neighborhood(const Subset& u, int k) const;
  // Smallest J with N_J(u) = N_{J+1}(u).
  int StabilizationIndex(const Subset& u) const;
  // N_0(u), N_1(u), ..., N_J(u) with J the stabilization index.
  std::vector<Subset> NeighborhoodChain(const Subset& u) const;
  // Connected-component closure of u.
  Subset Closure(const Subset& u) const;

 private:
  struct Cache;

  int n_;
  std::vector<std::vector<int>> adj_;
  std::shared_ptr<Cache> cache_;
};

InteractionGraph BuildGraph(const StructuredPotential& pot);

// One "i j" pair per line, i < j, 0-indexed.
void WriteEdgeList(const InteractionGraph& g, std::ostream& os);

enum class GrowthMode { kPolynomial, kExponential };

// max_i |N_{k+1}(i)| <= c (1 + k^p)  (polynomial), or <= c r^k (exponential).
struct GrowthCertificate {
  GrowthMode mode = GrowthMode::kPolynomial;
  double c = 1.0;
  double exponent = 1.0;  // p or r
  int verified_up_to = -1;

  double VertexBound(int k) const;
};

struct GrowthReport {
  bool passed = true;
  int checked_up_to = 0;
  // First violation in (k, i) order, when !passed.
  std::optional<int> vertex;
  std::optional<int> k;
  int observed = 0;
  double bound = 0.0;
};

// Checks the certificate for every vertex and every k up to stabilization
// (beyond that |N_{k+1}(i)| is constant and the bound is nondecreasing).
// On success, cert->verified_up_to is set when `cert` is non-null.
GrowthReport VerifyGrowth(const InteractionGraph& g, const GrowthCertificate& cert);
GrowthReport VerifyGrowth(const InteractionGraph& g, GrowthCertificate* cert);

// |u| times the per-vertex certificate bound at k: an upper bound on
// |N_{k+1}(u)| by the union bound.
double UnionGrowthBound(const GrowthCertificate& cert, const Subset& u, int k);

}  // namespace deloc

#endif  // DELOC_GRAPH_H_
