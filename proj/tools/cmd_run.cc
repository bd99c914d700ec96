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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

#include "commands.h"
#include "deloc/experiment.h"

namespace deloc::cli {

namespace {

struct RunOptions {
  std::string config;
  std::string output;
  bool gnuplot = false;
  int threads = -1;
  bool quiet = false;
};

int Run(const RunOptions& opt) {
  ExperimentConfig cfg;
  try {
    cfg = LoadExperimentConfig(opt.config);
  } catch (const std::exception& e) {
    std::cerr << "deloc run: " << e.what() << "\n";
    return kUsage;
  }
  if (opt.threads >= 0) cfg.threads = opt.threads;
  if (!opt.output.empty()) cfg.output = opt.output;

  const ExperimentReport report = RunExperiment(cfg);

  if (cfg.output) {
    const std::filesystem::path prefix = *cfg.output;
    if (prefix.has_parent_path()) std::filesystem::create_directories(prefix.parent_path());
    std::filesystem::path csv = prefix, sidecar = prefix;
    csv += ".csv";
    sidecar += ".json";
    {
      std::ofstream out(csv);
      WriteReportCsv(report, out);
    }
    std::ofstream(sidecar) << ReportSidecarJson(report) << "\n";
    if (!opt.quiet) std::cerr << "wrote " << csv.string() << " and " << sidecar.string() << "\n";
    if (opt.gnuplot) {
      for (const auto& p : WriteGnuplotFiles(report, prefix)) {
        if (!opt.quiet) std::cerr << "wrote " << p.string() << "\n";
      }
    }
  } else {
    WriteReportCsv(report, std::cout);
    if (opt.gnuplot) std::cerr << "deloc run: --gnuplot needs --output (or \"output\" in the config)\n";
  }

  int errors = 0;
  for (const auto& r : report.rows) {
    if (!r.error.empty()) {
      ++errors;
      std::cerr << "error (n=" << r.n << ", h=" << r.h << "): " << r.error << "\n";
    }
  }
  const int failures = report.AcceptanceFailures();
  if (!opt.quiet) {
    std::cerr << report.experiment << ": " << report.rows.size() << " rows, " << failures
              << " acceptance failures, " << errors << " errors, config " << report.config_hash.substr(0, 12)
              << "\n";
  }
  return failures > 0 ? kAcceptanceFailure : kOk;
}

}  // namespace

void RegisterRun(CLI::App& app, Action* action) {
  auto opt = std::make_shared<RunOptions>();
  CLI::App* sub = app.add_subcommand("run", "Run an experiment config; CSV on stdout unless --output");
  sub->add_option("config", opt->config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  sub->add_option("-o,--output", opt->output, "Output prefix: writes PREFIX.csv and PREFIX.json");
  sub->add_flag("--gnuplot", opt->gnuplot, "Also write PREFIX.<metric>.dat column files");
  sub->add_option("-j,--threads", opt->threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  sub->add_flag("-q,--quiet", opt->quiet, "No progress summary on stderr");
  sub->callback([opt, action] { *action = [opt] { return Run(*opt); }; });
}

}  // namespace deloc::cli
