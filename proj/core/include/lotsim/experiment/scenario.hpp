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

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lotsim/detection/conditioning.hpp"
#include "lotsim/experiment/extrapolation.hpp"
#include "lotsim/experiment/setup.hpp"
#include "lotsim/fock/density_operator.hpp"

namespace lotsim {

/// p, f1 and f2 all click.
struct Threefold {};
/// Threefold plus exactly one click among d1, d2 behind Bob's PBS.
struct Fourfold {};
/// Threefold with a number-resolving p that must report exactly `n` photons.
struct ThreefoldNumberResolvedP {
  int n = 1;
};
/// Threefold with a cascade of `stages` threshold detectors at p, exactly one firing.
struct ThreefoldCascadeP {
  int stages = 2;
};
/// Threefold followed by a non-demolition projection of beam 3 onto `n` photons.
struct ThreefoldQndBob {
  int n = 1;
};
/// Leading-order fidelity versus r = coupling_II / coupling_I.
struct CouplingRatioSweep {
  std::vector<double> ratios;
};

using Scenario = std::variant<Threefold, Fourfold, ThreefoldNumberResolvedP, ThreefoldCascadeP, ThreefoldQndBob,
                              CouplingRatioSweep>;

/// Stable identifier, e.g. "threefold", "threefold_cascade_p(stages=4)".
std::string scenario_id(const Scenario& scenario);

/// Diagonal weights of a beam-3 state by photon number.
struct SectorWeights {
  double vacuum = 0.0;
  double single_photon = 0.0;
  double multiphoton = 0.0;
};
SectorWeights sector_weights(const DensityOperator& rho3);

struct LeadingOrder {
  std::vector<double> couplings;  ///< larger of the two couplings at each sample
  std::vector<double> fidelities;
  std::vector<double> probabilities;
  Extrapolation fidelity;
  double vacuum_weight = 0.0;  ///< from the extrapolated state
  Eigen::MatrixXcd rho3;       ///< elementwise extrapolation, beam-3 basis order
};

struct ScenarioResult {
  std::string scenario;
  double coupling_I = 0.0;
  double coupling_II = 0.0;
  DensityOperator rho3;  ///< conditional state of beam 3, normalized
  double probability = 0.0;
  double fidelity = 0.0;
  SectorWeights weights;
  std::optional<LeadingOrder> leading_order;
};

inline const std::vector<double> kDefaultLeadingOrderCouplings = {0.04, 0.02, 0.01};

/// Exactly-one-click instrument of Bob's station acting on the beam-3 state:
/// rho -> sqrt(E) rho sqrt(E) / tr(E rho). Throws ZeroProbability.
ConditionalState apply_bob_station(const DensityOperator& rho3, const BobStation& bob);

/// Conditional beam-3 state of one scenario at the config's couplings. Throws
/// InvalidArgument for a sweep scenario and ZeroProbability for a forbidden pattern.
ScenarioResult run_scenario(const SetupConfig& config, const Scenario& scenario);

/// Config with the larger coupling set to `larger` and the coupling ratio kept.
SetupConfig with_scale(const SetupConfig& config, double larger);
/// Config with coupling_II / coupling_I = ratio and the larger coupling unchanged.
SetupConfig with_ratio(const SetupConfig& config, double ratio);

/// Evaluates the scenario at each coupling (strictly decreasing, at least three)
/// and extrapolates in g^2 to g -> 0.
LeadingOrder leading_order(const SetupConfig& config, const Scenario& scenario,
                           std::span<const double> couplings = kDefaultLeadingOrderCouplings);

/// run_scenario at the config's couplings with the leading order attached.
ScenarioResult run_with_leading_order(const SetupConfig& config, const Scenario& scenario,
                                      std::span<const double> couplings = kDefaultLeadingOrderCouplings);

struct SweepRow {
  double ratio = 0.0;
  double fidelity = 0.0;  ///< leading order
  double fidelity_error = 0.0;
  bool residuals_monotone = true;
  double probability = 0.0;  ///< at the largest coupling sample
  double vacuum_weight = 0.0;  ///< leading order
};

/// Threefold leading-order fidelity per ratio, sorted by ratio. Throws
/// InvalidArgument for an empty list or a non-positive ratio.
std::vector<SweepRow> coupling_ratio_sweep(const SetupConfig& config, std::span<const double> ratios,
                                           std::span<const double> couplings = kDefaultLeadingOrderCouplings);

struct InputIndependence {
  std::vector<double> angles;
  std::vector<double> fidelities;  ///< leading order
  double spread = 0.0;             ///< max |F(a) - F(b)|
};

/// Needs at least four input angles that are distinct modulo pi.
InputIndependence input_independence_check(const SetupConfig& config, std::span<const double> angles,
                                           const Scenario& scenario = Threefold{},
                                           std::span<const double> couplings = kDefaultLeadingOrderCouplings);

}  // namespace lotsim
