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

// Dense linear assignment (Jonker-Volgenant shortest augmenting paths).

#ifndef DELOC_ASSIGNMENT_H_
#define DELOC_ASSIGNMENT_H_

#include <vector>

#include <Eigen/Dense>

namespace deloc {

using CostMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Assignment {
  std::vector<int> row_to_col;
  double cost = 0.0;
};

// Minimum-cost perfect matching of a square matrix with finite entries.
Assignment SolveAssignment(const CostMatrix& cost);

}  // namespace deloc

#endif  // DELOC_ASSIGNMENT_H_
