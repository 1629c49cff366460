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
#include <string>
#include <vector>

#include "lotsim/detection/conditioning.hpp"
#include "lotsim/detection/detector.hpp"
#include "lotsim/fock/state_vector.hpp"
#include "lotsim/optics/elements.hpp"

namespace lotsim {

/// How the input photon of beam 1 is prepared.
///   polarizer_on_beam_1: a polarizer at the input angle on beam 1, p heralds beam 4.
///   analyzer_before_p:   a polarizer at the orthogonal angle in front of p, so a
///                        click projects beam 1 through the pair correlation.
enum class Preparation { polarizer_on_beam_1, analyzer_before_p };

std::string preparation_name(Preparation p);
/// Throws InvalidArgument for an unknown name.
Preparation parse_preparation(const std::string& name);

struct DetectorSpec {
  DetectorKind kind = Threshold{};
  double efficiency = 1.0;
};

/// Parameters of the two-source teleportation apparatus. Angles are in radians.
struct SetupConfig {
  double coupling_I = 0.02;   ///< source on beams 1 and 4
  double coupling_II = 0.02;  ///< source on beams 2 and 3
  double input_angle = 0.7853981633974483;
  Preparation preparation = Preparation::polarizer_on_beam_1;
  DetectorSpec p;
  DetectorSpec f1;
  DetectorSpec f2;
  DetectorSpec d1;
  DetectorSpec d2;
  /// Polarization rotation of beam 3 in front of Bob's PBS.
  std::optional<double> bob_analyzer_angle;
  /// Phase of the beamsplitter that mixes beams 1 and 2.
  double bs_phase = 0.0;
  int cutoff = 6;
  /// Truncation guard for each source and for the joint state.
  double max_discarded_weight = 1e-6;

  /// Throws InvalidArgument. Couplings must lie in (0, 1), or in [0, 1) when
  /// `allow_zero_coupling` is set.
  void validate(bool allow_zero_coupling = false) const;
};

inline constexpr Beam kPolarizerLoss = Beam::loss_for(kBeam1);
inline constexpr Beam kAnalyzerLoss = Beam::loss_for(kBeam4);
/// Output port of Bob's PBS that carries the reflected (V) light to d2.
inline constexpr Beam kBobReflected = Beam::ancilla(0);

/// Bob's destructive station: optional analyzer rotation, PBS, d1 on the
/// transmitted port (beam 3) and d2 on the reflected port.
struct BobStation {
  std::vector<ElementSpec> elements;
  NamedDetector d1;
  NamedDetector d2;
  /// Product of the element transforms on beam 3 and the reflected port.
  ModeTransform network() const;
};

struct Circuit {
  SpacePtr space;                       ///< 8 principal modes plus the preparation loss modes
  std::vector<ElementSpec> elements;    ///< applied after the sources, in order
  std::vector<NamedDetector> detectors; ///< p, f1, f2
  BobStation bob;
};

/// Assembles the apparatus. Throws InvalidArgument for an invalid config.
Circuit build_circuit(const SetupConfig& config);

/// Source states of both down-converters on the circuit space, before the
/// optical elements. Throws TruncationError when the joint truncation at the
/// cutoff discards more than config.max_discarded_weight.
StateVector source_state(const SetupConfig& config, const Circuit& circuit);

/// Sources followed by the optical elements.
StateVector prepare_global_state(const SetupConfig& config, const Circuit& circuit);

/// The intended input state cos(t)|H> + sin(t)|V> as a single photon in beam 3.
StateVector target_state(const SetupConfig& config, SpacePtr beam3_space);

}  // namespace lotsim
