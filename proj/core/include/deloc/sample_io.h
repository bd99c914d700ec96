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

// Sample store files.
//
// Binary layout: one line of JSON (n, chains, steps, rows, seed, h,
// thinning, burn_in, potential_hash) terminated by '\n', followed by
// rows * n little-endian float64 values in column-major order.

#ifndef DELOC_SAMPLE_IO_H_
#define DELOC_SAMPLE_IO_H_

#include <filesystem>
#include <iosfwd>

#include "deloc/sampler.h"

namespace deloc {

void WriteSampleStore(const SampleStore& store, const std::filesystem::path& path);
SampleStore ReadSampleStore(const std::filesystem::path& path);

// Header "chain,row,x0,...,x{n-1}", one line per retained state.
void WriteSampleStoreCsv(const SampleStore& store, std::ostream& os);

}  // namespace deloc

#endif  // DELOC_SAMPLE_IO_H_
