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

#include "deloc/graph.h"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <ostream>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace deloc {

// Neighbourhood chains keyed by the starting set. Readers share the lock.
struct InteractionGraph::Cache {
  std::shared_mutex mu;
  std::unordered_map<Subset, std::vector<Subset>, SubsetHash> chains;
};

InteractionGraph::InteractionGraph(int n, std::vector<std::vector<int>> adjacency)
    : n_(n), adj_(static_cast<std::size_t>(n)), cache_(std::make_shared<Cache>()) {
  if (n < 0) throw std::invalid_argument("InteractionGraph: negative vertex count");
  if (adjacency.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("InteractionGraph: adjacency size must equal n");
  }
  for (int i = 0; i < n; ++i) {
    for (int j : adjacency[static_cast<std::size_t>(i)]) {
      if (j < 0 || j >= n) throw std::invalid_argument("InteractionGraph: vertex out of range");
      if (j == i) continue;
      adj_[static_cast<std::size_t>(i)].push_back(j);
      adj_[static_cast<std::size_t>(j)].push_back(i);
    }
  }
  for (auto& list : adj_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
}

InteractionGraph InteractionGraph::FromEdges(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (auto [i, j] : edges) {
    if (i < 0 || i >= n) throw std::invalid_argument("InteractionGraph: vertex out of range");
    adj[static_cast<std::size_t>(i)].push_back(j);
  }
  return InteractionGraph(n, std::move(adj));
}

InteractionGraph InteractionGraph::Path(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return FromEdges(n, edges);
}

InteractionGraph InteractionGraph::Grid(int rows, int cols) {
  std::vector<std::pair<int, int>> edges;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int i = r * cols + c;
      if (c + 1 < cols) edges.emplace_back(i, i + 1);
      if (r + 1 < rows) edges.emplace_back(i, i + cols);
    }
  }
  return FromEdges(rows * cols, edges);
}

InteractionGraph InteractionGraph::BinaryTree(int depth) {
  const int n = (1 << (depth + 1)) - 1;
  std::vector<std::pair<int, int>> edges;
  for (int k = 0; 2 * k + 2 < n; ++k) {
    edges.emplace_back(k, 2 * k + 1);
    edges.emplace_back(k, 2 * k + 2);
  }
  return FromEdges(n, edges);
}

int InteractionGraph::num_edges() const {
  std::size_t total = 0;
  for (const auto& list : adj_) total += list.size();
  return static_cast<int>(total / 2);
}

std::vector<std::pair<int, int>> InteractionGraph::Edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n_; ++i) {
    for (int j : adj_[static_cast<std::size_t>(i)]) {
      if (i < j) out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<Subset> InteractionGraph::NeighborhoodChain(const Subset& u) const {
  if (u.Bound() > n_) throw std::invalid_argument("Neighborhood: subset out of range");
  {
    std::shared_lock lock(cache_->mu);
    auto it = cache_->chains.find(u);
    if (it != cache_->chains.end()) return it->second;
  }
  // Breadth-first layers: each step adds the neighbours of the last frontier.
  std::vector<Subset> chain{u};
  Subset current = u;
  std::vector<int> frontier = u.Indices();
  while (true) {
    std::vector<int> next;
    for (int i : frontier) {
      for (int j : adj_[static_cast<std::size_t>(i)]) {
        if (!current.Contains(j)) {
          current.Insert(j);
          next.push_back(j);
        }
      }
    }
    if (next.empty()) break;
    chain.push_back(current);
    frontier = std::move(next);
  }
  std::unique_lock lock(cache_->mu);
  cache_->chains.emplace(u, chain);
  return chain;
}

Subset InteractionGraph::Neighborhood(const Subset& u, int k) const {
  if (k < 0) throw std::invalid_argument("Neighborhood: k must be >= 0");
  const auto chain = NeighborhoodChain(u);
  return chain[std::min(static_cast<std::size_t>(k), chain.size() - 1)];
}

int InteractionGraph::StabilizationIndex(const Subset& u) const {
  return static_cast<int>(NeighborhoodChain(u).size()) - 1;
}

Subset InteractionGraph::Closure(const Subset& u) const { return NeighborhoodChain(u).back(); }

InteractionGraph BuildGraph(const StructuredPotential& pot) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(pot.dimension()));
  for (const auto& t : pot.terms()) {
    if (t.lipschitz() == 0.0) continue;
    const auto& s = t.support();
    for (std::size_t a = 0; a < s.size(); ++a) {
      for (std::size_t b = a + 1; b < s.size(); ++b) {
        adj[static_cast<std::size_t>(s[a])].push_back(s[b]);
      }
    }
  }
  return InteractionGraph(pot.dimension(), std::move(adj));
}

void WriteEdgeList(const InteractionGraph& g, std::ostream& os) {
  for (auto [i, j] : g.Edges()) os << i << ' ' << j << '\n';
}

double GrowthCertificate::VertexBound(int k) const {
  const double kk = static_cast<double>(k);
  if (mode == GrowthMode::kPolynomial) return c * (1.0 + std::pow(kk, exponent));
  return c * std::pow(exponent, kk);
}

GrowthReport VerifyGrowth(const InteractionGraph& g, const GrowthCertificate& cert) {
  if (!(cert.c >= 1.0) || !(cert.exponent >= 1.0)) {
    throw std::invalid_argument("VerifyGrowth: need c >= 1 and exponent >= 1");
  }
  GrowthReport report;
  // Chains per vertex; the check runs k-major so the reported violation is
  // the smallest k.
  std::vector<std::vector<Subset>> chains;
  int horizon = 0;
  for (int i = 0; i < g.num_vertices(); ++i) {
    chains.push_back(g.NeighborhoodChain(Subset::Singleton(i)));
    horizon = std::max(horizon, static_cast<int>(chains.back().size()) - 1);
  }
  for (int k = 0; k <= horizon; ++k) {
    for (int i = 0; i < g.num_vertices(); ++i) {
      const auto& chain = chains[static_cast<std::size_t>(i)];
      const int observed =
          chain[std::min(static_cast<std::size_t>(k + 1), chain.size() - 1)].size();
      const double bound = cert.VertexBound(k);
      if (static_cast<double>(observed) > bound) {
        report.passed = false;
        report.vertex = i;
        report.k = k;
        report.observed = observed;
        report.bound = bound;
        report.checked_up_to = k;
        return report;
      }
    }
  }
  report.checked_up_to = horizon;
  return report;
}

GrowthReport VerifyGrowth(const InteractionGraph& g, GrowthCertificate* cert) {
  GrowthReport r = VerifyGrowth(g, *cert);
  if (r.passed) cert->verified_up_to = r.checked_up_to;
  return r;
}

double UnionGrowthBound(const GrowthCertificate& cert, const Subset& u, int k) {
  return static_cast<double>(u.size()) * cert.VertexBound(k);
}

}  // namespace deloc
