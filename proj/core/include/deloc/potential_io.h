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

// Potential description files (JSON).
//
//   { "n": 4,
//     "terms": [ {"support": [0, 1], "kind": "quadratic",
//                 "params": {"matrix": [[1, 0], [0, 1]]}, "lipschitz": 1.0},
//                {"support": [0, 1, 2, 3], "kind": "builtin:chain-pairwise",
//                 "params": {"confining": 1.0, "coupling": 0.25}} ],
//     "smoothness": {"alpha": 0.5, "beta": 2.0, "gamma": 1.0, "alpha0": 0.5} }
//
// Builtins expand into several factors over the listed support (all of [n]
// when "support" is omitted):
//   builtin:gaussian        params.precision (|support| x |support|)
//   builtin:chain-pairwise  params.confining, params.coupling, params.shape
//   builtin:grid-pairwise   params.rows, params.cols, plus the chain params
//   builtin:mean-field      params.confining, params.coupling, params.shape
// where shape is "quadratic" (default) or "logcosh".

#ifndef DELOC_POTENTIAL_IO_H_
#define DELOC_POTENTIAL_IO_H_

#include <filesystem>
#include <string>

#include "deloc/potential.h"

namespace deloc {

// Throws std::invalid_argument with a path-like location on schema errors.
StructuredPotential ParsePotentialJson(const std::string& text);
StructuredPotential LoadPotentialFile(const std::filesystem::path& path);

// Human-oriented summary used by `deloc validate`: dimension, factor count,
// interaction constants, weak-interaction check, edge count, hash (JSON).
std::string DescribePotentialJson(const StructuredPotential& pot);

}  // namespace deloc

#endif  // DELOC_POTENTIAL_IO_H_
