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

// Reference computations for tests. Each one is written independently of
// the library routine it checks (different algorithm or brute force).

#ifndef DELOC_TESTS_ORACLES_H_
#define DELOC_TESTS_ORACLES_H_

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <vector>

namespace deloc::oracle {

// Random SPD matrix with spectrum in [lo, hi].
inline Eigen::MatrixXd RandomSpd(int n, double lo, double hi, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = g(rng);
  }
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  const Eigen::MatrixXd q = qr.householderQ();
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) d(i) = u(rng);
  d(0) = lo;
  if (n > 1) d(1) = hi;
  Eigen::MatrixXd a = q * d.asDiagonal() * q.transpose();
  return 0.5 * (a + a.transpose());
}

// S <- (I - hA) S (I - hA) + 2h I from S = 0 until the update is below tol.
inline Eigen::MatrixXd LyapunovFixedPoint(const Eigen::MatrixXd& a, double h, double tol = 1e-15,
                                          int max_iter = 2000000) {
  const int n = static_cast<int>(a.rows());
  const Eigen::MatrixXd b = Eigen::MatrixXd::Identity(n, n) - h * a;
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (int it = 0; it < max_iter; ++it) {
    Eigen::MatrixXd next = b * s * b.transpose();
    next.diagonal().array() += 2.0 * h;
    const double change = (next - s).norm();
    s = next;
    if (change <= tol * std::max(1.0, s.norm())) break;
  }
  return s;
}

// Scalar recursion sigma <- (1 - h a)^2 sigma + 2h.
inline double ScalarLmcVariance(double a, double h) {
  double s = 0.0;
  for (int it = 0; it < 100000; ++it) s = (1.0 - h * a) * (1.0 - h * a) * s + 2.0 * h;
  return s;
}

// Textbook KL between Gaussians via log-determinants.
inline double KlTextbook(const Eigen::VectorXd& m1, const Eigen::MatrixXd& s1, const Eigen::VectorXd& m2,
                         const Eigen::MatrixXd& s2) {
  const double k = static_cast<double>(s1.rows());
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu2(s2);
  const Eigen::MatrixXd s2inv = lu2.inverse();
  const Eigen::VectorXd d = m2 - m1;
  const double logdet2 = std::log(s2.determinant());
  const double logdet1 = std::log(s1.determinant());
  return 0.5 * ((s2inv * s1).trace() - k + d.dot(s2inv * d) + logdet2 - logdet1);
}

// Bures distance for commuting covariances (shared eigenbasis).
inline double W2Commuting(const Eigen::VectorXd& l1, const Eigen::VectorXd& l2) {
  return (l1.array().sqrt() - l2.array().sqrt()).square().sum();
}

// Minimum over all permutations (m <= 9).
inline double BruteForceAssignment(const Eigen::MatrixXd& cost, std::vector<int>* best_perm = nullptr) {
  const int m = static_cast<int>(cost.rows());
  std::vector<int> p(static_cast<std::size_t>(m));
  std::iota(p.begin(), p.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double c = 0.0;
    for (int i = 0; i < m; ++i) c += cost(i, p[static_cast<std::size_t>(i)]);
    if (c < best) {
      best = c;
      if (best_perm) *best_perm = p;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

// k-step BFS ball around a vertex set.
inline std::set<int> BfsBall(const std::vector<std::vector<int>>& adj, const std::set<int>& start, int k) {
  std::vector<int> dist(adj.size(), -1);
  std::queue<int> q;
  for (int s : start) {
    dist[static_cast<std::size_t>(s)] = 0;
    q.push(s);
  }
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    if (dist[static_cast<std::size_t>(v)] == k) continue;
    for (int w : adj[static_cast<std::size_t>(v)]) {
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
        q.push(w);
      }
    }
  }
  std::set<int> out;
  for (std::size_t v = 0; v < adj.size(); ++v) {
    if (dist[v] >= 0) out.insert(static_cast<int>(v));
  }
  return out;
}

// exp(M) by scaling and squaring with a degree-24 Taylor polynomial.
inline Eigen::MatrixXd ExpmTaylor(const Eigen::MatrixXd& m) {
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  double scale = 1.0;
  while (norm * scale > 0.25) {
    scale *= 0.5;
    ++squarings;
  }
  const Eigen::MatrixXd x = m * scale;
  const Eigen::Index n = m.rows();
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
  for (int k = 1; k <= 24; ++k) {
    term = term * x / static_cast<double>(k);
    result += term;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

// Mean and standard error of a sample.
struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

inline MeanSe Summarize(const std::vector<double>& v) {
  MeanSe r;
  const double m = static_cast<double>(v.size());
  r.mean = std::accumulate(v.begin(), v.end(), 0.0) / m;
  double ss = 0.0;
  for (double x : v) ss += (x - r.mean) * (x - r.mean);
  r.se = std::sqrt(ss / (m - 1.0) / m);
  return r;
}

}  // namespace deloc::oracle

#endif  // DELOC_TESTS_ORACLES_H_
