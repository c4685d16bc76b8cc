/*
 * Copyright 2026 The SIAN Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line front end for the SIAN pipeline:
//
//   sian train-dnn     --config exp.json
//   sian fis           --config exp.json [--model dnn.json] [--data val.csv]
//   sian train-sian    --config exp.json [--family family.json]
//   sian evaluate      --config exp.json [--model sian.json] [--data test.csv]
//   sian export-shapes --config exp.json [--model sian.json]
//   sian oracle        [lemma|recovery|anova|theory|all] [--out dir]
//
// Exit codes: 0 success, 1 internal error or failed oracle check, 2 user or
// configuration error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sian/errors.h"
#include "sian/pipeline.h"

namespace {

struct Flags {
  std::string config;
  std::optional<uint64_t> seed;
  std::string out;
  std::string model;
  std::string family;
  std::string data;
  std::string suite = "all";
};

void AddCommon(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--config", flags.config, "Experiment config (JSON)");
  cmd->add_option("--seed", flags.seed, "Overrides the config seed");
  cmd->add_option("--out", flags.out, "Output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse interaction additive networks"};
  app.require_subcommand(1);
  Flags flags;

  CLI::App* train_dnn =
      app.add_subcommand("train-dnn", "Train the reference network per fold");
  AddCommon(train_dnn, flags);

  CLI::App* fis = app.add_subcommand("fis", "Select interaction sets");
  AddCommon(fis, flags);
  fis->add_option("--model", flags.model, "Reference model file");
  fis->add_option("--data", flags.data, "Validation CSV");

  CLI::App* train_sian =
      app.add_subcommand("train-sian", "Train SIAN models per fold");
  AddCommon(train_sian, flags);
  train_sian->add_option("--family", flags.family,
                         "Family file used for every fold");

  CLI::App* evaluate = app.add_subcommand("evaluate", "Compute test metrics");
  AddCommon(evaluate, flags);
  evaluate->add_option("--model", flags.model, "Model file");
  evaluate->add_option("--data", flags.data, "CSV to evaluate on");

  CLI::App* export_shapes =
      app.add_subcommand("export-shapes", "Write shape functions on grids");
  AddCommon(export_shapes, flags);
  export_shapes->add_option("--model", flags.model, "SIAN model file");

  CLI::App* oracle = app.add_subcommand("oracle", "Run verification suites");
  AddCommon(oracle, flags);
  oracle->add_option("suite", flags.suite, "lemma, recovery, anova, theory or all")
      ->check(CLI::IsMember({"lemma", "recovery", "anova", "theory", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    sian::ExperimentConfig config;
    if (!flags.config.empty()) config = sian::ExperimentConfig::Load(flags.config);
    sian::CommandOptions options;
    options.seed = flags.seed;
    if (!flags.out.empty()) options.out = flags.out;
    if (!flags.model.empty()) options.model = flags.model;
    if (!flags.family.empty()) options.family = flags.family;
    if (!flags.data.empty()) options.data = flags.data;
    options.suite = flags.suite;
    return sian::RunCommand(command, config, options, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "sian " << command << ": " << e.what() << '\n';
    return sian::ExitCodeFor(e);
  }
}
