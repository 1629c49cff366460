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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "lotsim/analysis/report.hpp"

namespace lotsim::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidationFailed = 1,
  kExitUsage = 2,
  kExitZeroProbability = 3,
  kExitIo = 4,
  kExitError = 5,
};

class IoError : public Error {
 public:
  using Error::Error;
};

struct Artifact {
  std::string name;
  std::string content;
};

/// Writes every artifact under `dir` or none of them. Contents go to hidden
/// temporary files first; they are renamed into place only after all writes
/// succeeded.
void write_artifacts(const std::filesystem::path& dir, const std::vector<Artifact>& artifacts);

Report build_run_report(const RunConfig& config);
std::vector<Artifact> run_artifacts(const RunConfig& config);

struct SweepPoint {
  double value = 0.0;
  double fidelity = 0.0;  ///< at the configured couplings
  std::optional<double> fidelity_leading_order;
  std::optional<double> leading_order_error;
  double probability = 0.0;
  double vacuum_weight = 0.0;  ///< leading order when available
};

/// Sorted by value. The coupling sweep never extrapolates.
std::vector<SweepPoint> run_sweep(const RunConfig& config);
std::string sweep_points_csv(const std::string& parameter, const std::vector<SweepPoint>& points);
std::string sweep_points_json(const std::string& parameter, const std::string& scenario,
                              const std::vector<SweepPoint>& points);

/// Leading-order state when extrapolation is enabled, clipped to the PSD cone.
DensityOperator tomography_truth(const ScenarioResult& result);
TomographySummary run_tomography(const RunConfig& config);

struct ValidationCheck {
  std::string name;
  bool passed = false;
  double value = 0.0;  ///< measured defect or deviation
  double tolerance = 0.0;
  std::string detail;
};

struct ValidateOptions {
  bool perturb_bs_convention = false;  ///< test hook: flips the beamsplitter phase to pi
};

std::vector<ValidationCheck> run_validation(const RunConfig& config, const ValidateOptions& options = {});

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_validate(const RunConfig& config, const ValidateOptions& options, std::ostream& out, std::ostream& err);
int cmd_tomo(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace lotsim::app
