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

#include <fstream>
#include <iostream>
#include <memory>

#include "commands.h"
#include "deloc/graph.h"
#include "deloc/potential_io.h"

namespace deloc::cli {

namespace {

struct ValidateOptions {
  std::string path;
  std::string edges;
};

int Validate(const ValidateOptions& o) {
  StructuredPotential pot = [&] {
    try {
      return LoadPotentialFile(o.path);
    } catch (const std::exception& e) {
      std::cerr << "deloc validate: " << e.what() << "\n";
      throw;
    }
  }();
  std::cout << DescribePotentialJson(pot) << "\n";
  if (!o.edges.empty()) {
    std::ofstream out(o.edges);
    if (!out) throw std::runtime_error("cannot write " + o.edges);
    WriteEdgeList(BuildGraph(pot), out);
  }
  return kOk;
}

}  // namespace

void RegisterValidate(CLI::App& app, Action* action) {
  auto o = std::make_shared<ValidateOptions>();
  CLI::App* sub = app.add_subcommand("validate", "Check a potential spec and print its constants (JSON)");
  sub->add_option("potential", o->path, "Potential spec (JSON)")->required()->check(CLI::ExistingFile);
  sub->add_option("--edges", o->edges, "Also write the interaction graph as an edge list");
  sub->callback([o, action] {
    *action = [o] {
      try {
        return Validate(*o);
      } catch (const std::invalid_argument&) {
        return kUsage;
      }
    };
  });
}

}  // namespace deloc::cli
