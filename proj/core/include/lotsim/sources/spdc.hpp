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

#include <vector>

#include "lotsim/fock/operator.hpp"

namespace lotsim {

/// Type-II down-converter emitting polarization-singlet pairs into beams (i, j).
struct SpdcParams {
  double coupling = 0.0;  ///< dimensionless strength g, 0 <= g < 1
  int max_pairs = 3;
  Beam beam_i = kBeam1;
  Beam beam_j = kBeam4;
  /// Largest squared norm that truncation at max_pairs may discard.
  double max_discarded_weight = 1e-6;

  /// Throws InvalidArgument when a field is out of range.
  void validate() const;
};

struct SpdcCoefficients {
  /// A_0 ... A_max_pairs: norm of the n-pair component after truncation and
  /// renormalization. A_0 > 0 and every A_n >= 0.
  std::vector<double> amplitudes;
  /// Weight of the components above max_pairs removed before renormalizing.
  double discarded_weight = 0.0;
};

/// Generator of singlet pair creation, a^dag_{iH} a^dag_{jV} - a^dag_{iV} a^dag_{jH}, on `space`.
Operator pair_creation_generator(SpacePtr space, Beam i, Beam j);

/// exp(g (G - G^dagger)) |0> on the modes (iH, iV, jH, jV).
///
/// The exponential is evaluated on a space holding one pair more than
/// max_pairs, then truncated to max_pairs and renormalized. Throws
/// TruncationError when the discarded weight exceeds max_discarded_weight.
/// The global phase makes the vacuum amplitude positive.
StateVector spdc_local_state(const SpdcParams& params, SpdcCoefficients* coefficients = nullptr);

SpdcCoefficients spdc_coefficients(const SpdcParams& params);

/// The source state placed on `space` (other modes in vacuum). Throws
/// SpaceMismatch when a source mode is missing and InvalidArgument when the
/// space cannot hold max_pairs pairs.
StateVector spdc_state(const SpdcParams& params, SpacePtr space);

/// Normalized component of `state` with exactly `pairs` photons in beam `i`.
StateVector pair_component(const StateVector& state, Beam i, int pairs);

}  // namespace lotsim
