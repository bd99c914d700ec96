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

#include "deloc/sample_io.h"

#include <bit>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <string>

#include "json.hpp"

namespace deloc {

static_assert(std::endian::native == std::endian::little, "sample files are little-endian");

void WriteSampleStore(const SampleStore& store, const std::filesystem::path& path) {
  nlohmann::json header = {
      {"n", store.n},
      {"chains", store.num_chains},
      {"steps", store.config.iterations},
      {"rows", store.data.rows()},
      {"seed", store.config.seed},
      {"h", store.config.h},
      {"thinning", store.config.thinning},
      {"burn_in", store.config.BurnIn()},
      {"potential_hash", store.potential_hash},
  };
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << header.dump() << '\n';
  out.write(reinterpret_cast<const char*>(store.data.data()),
            static_cast<std::streamsize>(store.data.size() * sizeof(double)));
  if (!out) throw std::runtime_error("short write to " + path.string());
}

SampleStore ReadSampleStore(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  const auto header = nlohmann::json::parse(line);
  SampleStore store;
  store.n = header.at("n").get<int>();
  store.num_chains = header.at("chains").get<int>();
  store.config.iterations = header.at("steps").get<std::int64_t>();
  store.config.seed = header.at("seed").get<std::uint64_t>();
  store.config.h = header.at("h").get<double>();
  store.config.thinning = header.at("thinning").get<int>();
  store.config.burn_in = header.at("burn_in").get<std::int64_t>();
  store.config.num_chains = store.num_chains;
  store.potential_hash = header.at("potential_hash").get<std::string>();
  const auto rows = header.at("rows").get<Eigen::Index>();
  store.rows_per_chain = store.num_chains > 0 ? rows / store.num_chains : 0;
  store.data.resize(rows, store.n);
  in.read(reinterpret_cast<char*>(store.data.data()),
          static_cast<std::streamsize>(store.data.size() * sizeof(double)));
  if (!in) throw std::runtime_error("truncated sample file " + path.string());
  return store;
}

void WriteSampleStoreCsv(const SampleStore& store, std::ostream& os) {
  os << "chain,row";
  for (int i = 0; i < store.n; ++i) os << ",x" << i;
  os << '\n' << std::setprecision(17);
  for (Eigen::Index r = 0; r < store.data.rows(); ++r) {
    os << r / store.rows_per_chain << ',' << r % store.rows_per_chain;
    for (int i = 0; i < store.n; ++i) os << ',' << store.data(r, i);
    os << '\n';
  }
}

}  // namespace deloc
