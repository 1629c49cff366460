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
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lotsim/analysis/baseline.hpp"
#include "lotsim/analysis/tomography.hpp"
#include "lotsim/experiment/scenario.hpp"

namespace lotsim {

/// Version of the JSON and CSV layouts written by report_json / report_csv /
/// sweep_csv. Bumped on any incompatible change.
inline constexpr int kReportSchemaVersion = 1;
/// A fidelity exceeds the classical baseline when it is larger by this margin.
inline constexpr double kBaselineMargin = 1e-3;

struct TomographySummary {
  std::string source;  ///< scenario the state came from
  double true_vacuum_weight = 0.0;
  double true_leakage = 0.0;  ///< multiphoton weight of the measured state
  std::vector<std::string> settings;
  ReconstructionResult result;
};

using MetadataValue = std::variant<std::string, double, std::int64_t, bool>;

struct Report {
  std::vector<std::pair<std::string, MetadataValue>> metadata;
  std::vector<ScenarioResult> scenarios;
  std::optional<BaselineResult> baseline;
  std::vector<SweepRow> coupling_ratio_sweep;
  std::vector<std::pair<std::string, InputIndependence>> input_independence;  ///< per scenario id
  std::optional<TomographySummary> tomography;
};

/// Leading-order fidelity when present, otherwise the fidelity at the run's couplings.
double reported_fidelity(const ScenarioResult& result);
bool exceeds_classical_baseline(const ScenarioResult& result, double baseline = 0.5);

/// Deterministic "%.17g" rendering used by every CSV writer.
std::string format_number(double value);

/// JSON document. Empty sections are omitted. Throws InvalidArgument for an
/// empty report.
std::string report_json(const Report& report);
/// Flat table, one row per scenario, sweep point and baseline.
std::string report_csv(const Report& report);
/// schema_version,ratio,fidelity,fidelity_error,residuals_monotone,probability,vacuum_weight
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace lotsim
