// Copyright 2026 The lotsim Authors
//
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

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::string format;
  std::optional<int> cutoff;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "Experiment config (JSON)")->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out_dir, "Output directory");
  cmd->add_option("--seed", o.seed, "Random seed");
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json", "both"}));
  cmd->add_option("--cutoff", o.cutoff, "Fock cutoff override");
}

lotsim::app::RunConfig resolve(const Overrides& o) {
  using namespace lotsim::app;
  RunConfig c = o.config_path.empty() ? RunConfig{} : parse_config(o.config_path);
  if (!o.out_dir.empty()) c.out_dir = o.out_dir;
  if (o.seed) c.seed = *o.seed;
  if (!o.format.empty()) c.format = parse_format(o.format);
  if (o.cutoff) {
    c.setup.cutoff = *o.cutoff;
    try {
      c.setup.validate();
    } catch (const lotsim::InvalidArgument& e) {
      throw ConfigError(std::string("--cutoff: ") + e.what());
    }
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace lotsim::app;
  CLI::App app{"Truncated-Fock-space simulator of two-source photonic teleportation"};
  app.require_subcommand(1);
  Overrides o;
  bool perturb = false;

  auto* run = app.add_subcommand("run", "Evaluate the configured scenarios and write a report");
  auto* sweep = app.add_subcommand("sweep", "Sweep one parameter and write a table");
  auto* validate = app.add_subcommand("validate", "Run the structural invariant suite");
  auto* tomo = app.add_subcommand("tomo", "Reconstruct the conditional state of beam 3 by tomography");
  for (auto* cmd : {run, sweep, validate, tomo}) add_common(cmd, o);
  validate->add_flag("--perturb-bs-convention", perturb)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  RunConfig config;
  try {
    config = resolve(o);
  } catch (const lotsim::Error& e) {
    std::cerr << "lotsim: " << e.what() << "\n";
    return kExitUsage;
  }

  if (run->parsed()) return cmd_run(config, std::cout, std::cerr);
  if (sweep->parsed()) return cmd_sweep(config, std::cout, std::cerr);
  if (validate->parsed()) return cmd_validate(config, ValidateOptions{perturb}, std::cout, std::cerr);
  return cmd_tomo(config, std::cout, std::cerr);
}
