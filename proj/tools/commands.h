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

#ifndef DELOC_TOOLS_COMMANDS_H_
#define DELOC_TOOLS_COMMANDS_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "deloc/graph.h"
#include "deloc/subset.h"

namespace deloc::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kAcceptanceFailure = 2;

// Each Register* adds a subcommand and stores the action to run when it was
// selected; the action returns the exit status.
using Action = std::function<int()>;

void RegisterRun(CLI::App& app, Action* action);
void RegisterBounds(CLI::App& app, Action* action);
void RegisterHierarchy(CLI::App& app, Action* action);
void RegisterValidate(CLI::App& app, Action* action);

// "path:6", "grid:3x4", "tree:3", "complete:5", or a file of "i j" lines
// (then n is one past the largest index unless given as "edges:N:file").
InteractionGraph ParseGraphSpec(const std::string& spec);

// "0,1,5" -> {0, 1, 5}; "" -> empty.
Subset ParseSubset(const std::string& text);

}  // namespace deloc::cli

#endif  // DELOC_TOOLS_COMMANDS_H_
