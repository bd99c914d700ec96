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

#include "deloc/assignment.h"

#include <limits>
#include <stdexcept>

namespace deloc {

// Column reduction, reduction transfer, two rounds of augmenting row
// reduction, then one Dijkstra-like augmentation per remaining free row.
// Invariant throughout: every assigned row sits at a minimum of its reduced
// row c(i, .) - v(.).
Assignment SolveAssignment(const CostMatrix& c) {
  const int n = static_cast<int>(c.rows());
  if (c.cols() != n) throw std::invalid_argument("SolveAssignment: cost matrix must be square");
  if (!c.allFinite()) throw std::invalid_argument("SolveAssignment: costs must be finite");
  Assignment out;
  if (n == 0) return out;
  constexpr double kInf = std::numeric_limits<double>::infinity();

  std::vector<int> x(n, -1), y(n, -1), matches(n, 0), free_rows;
  std::vector<double> v(n);

  for (int j = n - 1; j >= 0; --j) {
    int imin = 0;
    double best = c(0, j);
    for (int i = 1; i < n; ++i) {
      if (c(i, j) < best) {
        best = c(i, j);
        imin = i;
      }
    }
    v[j] = best;
    if (++matches[imin] == 1) {
      x[imin] = j;
      y[j] = imin;
    }
  }

  for (int i = n - 1; i >= 0; --i) {
    if (matches[i] == 0) {
      free_rows.push_back(i);
    } else if (matches[i] == 1) {
      const int j1 = x[i];
      double best = kInf;
      for (int j = 0; j < n; ++j) {
        if (j != j1) best = std::min(best, c(i, j) - v[j]);
      }
      if (best < kInf) v[j1] -= best;
    }
  }

  // Augmenting row reduction. Ties can make it spin, so each pass is capped;
  // the augmentation below is exact from any state satisfying the invariant.
  for (int pass = 0; pass < 2; ++pass) {
    const std::size_t previous = free_rows.size();
    std::size_t k = 0;
    std::size_t budget = 8 * static_cast<std::size_t>(n) + 64;
    std::vector<int> next_free;
    while (k < previous) {
      const int i = free_rows[k++];
      double u1 = kInf, u2 = kInf;
      int j1 = -1, j2 = -1;
      for (int j = 0; j < n; ++j) {
        const double h = c(i, j) - v[j];
        if (h < u2) {
          if (h >= u1) {
            u2 = h;
            j2 = j;
          } else {
            u2 = u1;
            j2 = j1;
            u1 = h;
            j1 = j;
          }
        }
      }
      int i0 = y[j1];
      const bool strict = j2 >= 0 && u1 < u2;
      if (strict) {
        v[j1] -= u2 - u1;
      } else if (i0 >= 0 && j2 >= 0) {
        j1 = j2;
        i0 = y[j1];
      }
      if (i0 >= 0) x[i0] = -1;
      x[i] = j1;
      y[j1] = i;
      if (i0 >= 0) {
        if (strict && budget > 0) {
          --budget;
          free_rows[--k] = i0;
        } else {
          next_free.push_back(i0);
        }
      }
    }
    free_rows = std::move(next_free);
  }

  std::vector<double> d(n);
  std::vector<int> pred(n), cols(n);
  for (const int f : free_rows) {
    for (int j = 0; j < n; ++j) {
      d[j] = c(f, j) - v[j];
      pred[j] = f;
      cols[j] = j;
    }
    // cols[0, low) scanned, [low, up) at the current minimum, [up, n) todo.
    int low = 0, up = 0, last = 0, end = -1;
    double dmin = 0.0;
    while (end < 0) {
      if (up == low) {
        last = low - 1;
        dmin = d[cols[up++]];
        for (int k = up; k < n; ++k) {
          const int j = cols[k];
          const double h = d[j];
          if (h <= dmin) {
            if (h < dmin) {
              up = low;
              dmin = h;
            }
            cols[k] = cols[up];
            cols[up++] = j;
          }
        }
        for (int k = low; k < up; ++k) {
          if (y[cols[k]] < 0) {
            end = cols[k];
            break;
          }
        }
      }
      if (end >= 0) break;
      const int j1 = cols[low++];
      const int i = y[j1];
      const double h = c(i, j1) - v[j1] - dmin;
      for (int k = up; k < n; ++k) {
        const int j = cols[k];
        const double v2 = c(i, j) - v[j] - h;
        if (v2 < d[j]) {
          pred[j] = i;
          if (v2 == dmin) {
            if (y[j] < 0) {
              end = j;
              break;
            }
            cols[k] = cols[up];
            cols[up++] = j;
          }
          d[j] = v2;
        }
      }
    }
    for (int k = 0; k <= last; ++k) {
      const int j = cols[k];
      v[j] += d[j] - dmin;
    }
    int i;
    do {
      i = pred[end];
      y[end] = i;
      std::swap(end, x[i]);
    } while (i != f);
  }

  out.row_to_col = std::move(x);
  for (int i = 0; i < n; ++i) out.cost += c(i, out.row_to_col[i]);
  return out;
}

}  // namespace deloc
