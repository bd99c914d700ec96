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

#ifndef DELOC_SCALING_H_
#define DELOC_SCALING_H_

#include <span>

namespace deloc {

// log y = intercept + slope * log x.
struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  int points = 0;
};

// Least squares in log-log coordinates. Throws std::invalid_argument on fewer
// than 3 points, non-positive values, or a constant predictor.
ScalingFit FitLogLog(std::span<const double> x, std::span<const double> y);

}  // namespace deloc

#endif  // DELOC_SCALING_H_
