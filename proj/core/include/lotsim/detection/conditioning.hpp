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

#include <map>
#include <span>
#include <string>

#include "lotsim/detection/detector.hpp"

namespace lotsim {

struct NamedDetector {
  std::string id;
  DetectorModel model;
};

/// Required outcome per detector id. Detectors missing from the map are summed
/// over (their watched modes are still traced out).
using OutcomePattern = std::map<std::string, std::string>;

struct ConditionalState {
  DensityOperator state;  ///< normalized
  double probability;
};

/// Applies the pattern's POVM elements, traces out every watched mode and every
/// loss/ancilla mode, and returns the normalized state of the remaining modes
/// with the pattern probability.
///
/// Throws InvalidArgument when detectors overlap or the pattern names an unknown
/// detector or label, and ZeroProbability when the probability is below
/// kZeroProbability.
ConditionalState condition(const StateVector& state, const OutcomePattern& pattern,
                           std::span<const NamedDetector> detectors);
ConditionalState condition(const DensityOperator& rho, const OutcomePattern& pattern,
                           std::span<const NamedDetector> detectors);

/// Pattern probability without the zero-probability error.
double outcome_probability(const StateVector& state, const OutcomePattern& pattern,
                           std::span<const NamedDetector> detectors);
double outcome_probability(const DensityOperator& rho, const OutcomePattern& pattern,
                           std::span<const NamedDetector> detectors);

/// Non-demolition projection onto total photon number `n` in `beam` (both
/// polarizations). The beam's modes are retained. Throws ZeroProbability.
ConditionalState qnd_total_number(const DensityOperator& rho, Beam beam, int n);

}  // namespace lotsim
