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

#include <exception>
#include <iostream>

#include "commands.h"

int main(int argc, char** argv) {
  CLI::App app{"deloc: marginal bias of Langevin Monte Carlo on structured potentials"};
  // "-h" is the step size in several subcommands.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  deloc::cli::Action action;
  deloc::cli::RegisterRun(app, &action);
  deloc::cli::RegisterBounds(app, &action);
  deloc::cli::RegisterHierarchy(app, &action);
  deloc::cli::RegisterValidate(app, &action);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? deloc::cli::kOk : deloc::cli::kUsage;
  }
  try {
    return action();
  } catch (const std::exception& e) {
    std::cerr << "deloc: " << e.what() << "\n";
    return deloc::cli::kUsage;
  }
}
