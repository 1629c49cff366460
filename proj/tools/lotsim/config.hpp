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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lotsim/error.hpp"
#include "lotsim/experiment/scenario.hpp"
#include "lotsim/experiment/setup.hpp"

namespace lotsim::app {

/// A config document violates the schema. The message starts with the file
/// and the JSON path of the offending key.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

enum class OutputFormat { csv, json, both };
OutputFormat parse_format(const std::string& text);

struct LeadingOrderSpec {
  bool enabled = true;
  std::vector<double> couplings = kDefaultLeadingOrderCouplings;
};

/// Parameters: ratio, coupling, input_angle_deg, bs_phase_deg, efficiency_p.
struct SweepSpec {
  std::string parameter;
  std::vector<double> values;
  Scenario scenario = Threefold{};
};

struct BaselineSpec {
  std::int64_t trials = 100000;
};

struct TomographySpec {
  Scenario source = Threefold{};
  std::int64_t shots = 100000;       ///< 0: exact probabilities only
};

struct InputIndependenceSpec {
  std::vector<double> angles_deg = {0.0, 22.5, 45.0, 67.5, 90.0};
  std::vector<Scenario> scenarios = {Threefold{}, Fourfold{}};
};

struct RunConfig {
  SetupConfig setup;
  std::vector<Scenario> scenarios = {Threefold{}, Fourfold{}};
  LeadingOrderSpec leading_order;
  std::optional<SweepSpec> sweep;
  std::optional<BaselineSpec> baseline = BaselineSpec{};
  TomographySpec tomography;
  std::optional<InputIndependenceSpec> input_independence;
  std::filesystem::path out_dir = "lotsim-out";
  OutputFormat format = OutputFormat::both;
  std::uint64_t seed = 1;
};

/// Strict parse: unknown keys, wrong types and out-of-range physics parameters
/// are rejected with the key path. Angles in the document are in degrees.
RunConfig parse_config_text(const std::string& text, const std::string& origin = "<config>");
/// Throws ConfigError when the file cannot be read.
RunConfig parse_config(const std::filesystem::path& path);

/// Scenario from its identifier ("threefold") or object form
/// ({"kind": "threefold_cascade_p", "stages": 4}), as JSON text.
Scenario parse_scenario_text(const std::string& json_text);

}  // namespace lotsim::app
