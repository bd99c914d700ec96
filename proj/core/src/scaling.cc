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

#include "deloc/scaling.h"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace deloc {

ScalingFit FitLogLog(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("FitLogLog: size mismatch");
  if (x.size() < 3) throw std::invalid_argument("FitLogLog: need at least 3 points");
  const std::size_t m = x.size();
  std::vector<double> lx(m), ly(m);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::invalid_argument("FitLogLog: values must be positive");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx <= 1e-300) throw std::invalid_argument("FitLogLog: predictor is constant");
  ScalingFit fit;
  fit.points = static_cast<int>(m);
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  // A flat response is fitted perfectly.
  fit.r2 = syy <= 1e-300 ? 1.0 : sxy * sxy / (sxx * syy);
  return fit;
}

}  // namespace deloc
