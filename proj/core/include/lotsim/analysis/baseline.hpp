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

#include "lotsim/fock/state_vector.hpp"

namespace lotsim {

/// Mean fidelity of uniformly random polarization states with a target.
struct BaselineResult {
  double analytic = 0.5;
  double monte_carlo = 0.0;
  double standard_error = 0.0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Draws Haar-random polarization states cos(t/2)|H> + e^{ip} sin(t/2)|V>
/// (cos t uniform on [-1, 1], p uniform on [0, 2pi)) and averages their fidelity
/// with `phi`. Throws InvalidArgument unless `phi` is a normalized single photon
/// in the H and V modes of one beam, or when trials < 1.
BaselineResult classical_baseline(const StateVector& phi, std::int64_t trials, std::uint64_t seed);

}  // namespace lotsim
