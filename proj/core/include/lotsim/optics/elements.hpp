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

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lotsim/optics/mode_transform.hpp"

namespace lotsim {

/// A linear-optical element of an apparatus.
///
/// Elements are built through the factory functions below, which validate their
/// parameters. Every element is a passive unitary on its modes; a polarizer is a
/// unitary that routes the blocked polarization into dedicated loss modes.
class ElementSpec {
 public:
  enum class Kind { beamsplitter, pbs, waveplate, phase_shift, polarizer };

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const ModeTransform& transform() const { return transform_; }
  /// Every mode the element touches, loss modes included.
  const std::vector<ModeLabel>& modes() const { return transform_.modes(); }
  const std::vector<ModeLabel>& loss_modes() const { return loss_modes_; }

 private:
  ElementSpec(Kind kind, std::string name, ModeTransform t, std::vector<ModeLabel> loss = {})
      : kind_(kind), name_(std::move(name)), transform_(std::move(t)), loss_modes_(std::move(loss)) {}

  friend ElementSpec beamsplitter(double, double, std::span<const std::pair<ModeLabel, ModeLabel>>);
  friend ElementSpec pbs(const std::array<ModeLabel, 4>&);
  friend ElementSpec waveplate(double, double, Beam);
  friend ElementSpec phase_shift(double, std::vector<ModeLabel>);
  friend ElementSpec polarizer(double, std::pair<ModeLabel, ModeLabel>, std::pair<ModeLabel, ModeLabel>);

  Kind kind_;
  std::string name_;
  ModeTransform transform_;
  std::vector<ModeLabel> loss_modes_;
};

/// Creation-operator map of a beamsplitter on modes (a, b):
///   a^dagger -> sqrt(T) a^dagger + e^{i phi} sqrt(1-T) b^dagger
///   b^dagger -> -e^{-i phi} sqrt(1-T) a^dagger + sqrt(T) b^dagger
/// i.e. the rows of [[sqrt(T), e^{i phi} sqrt(1-T)], [-e^{-i phi} sqrt(1-T), sqrt(T)]].
Eigen::Matrix2cd beamsplitter_creation_map(double transmissivity, double phase);

/// Beamsplitter acting identically on each (a, b) mode pair. Throws
/// InvalidArgument when T is outside [0, 1].
ElementSpec beamsplitter(double transmissivity, double phase, std::span<const std::pair<ModeLabel, ModeLabel>> pairs);
ElementSpec beamsplitter(double transmissivity, double phase, ModeLabel a, ModeLabel b);
/// Polarization-independent beamsplitter between two beams.
ElementSpec beamsplitter(double transmissivity, double phase, Beam a, Beam b);

/// Polarizing beamsplitter on {aH, aV, bH, bV}: H is transmitted (stays in its
/// beam), V is reflected into the other beam.
ElementSpec pbs(const std::array<ModeLabel, 4>& modes);
ElementSpec pbs(Beam a, Beam b);

/// Retarder with fast axis at `axis` (radians from H) and the given retardance:
/// Jones matrix R(axis) diag(e^{-i d/2}, e^{i d/2}) R(-axis).
ElementSpec waveplate(double axis, double retardance, Beam beam);
ElementSpec half_wave_plate(double axis, Beam beam);
ElementSpec quarter_wave_plate(double axis, Beam beam);

/// Multiplies each listed mode by e^{i angle}.
ElementSpec phase_shift(double angle, std::vector<ModeLabel> modes);

/// Linear polarizer passing cos(a)|H> + sin(a)|V> on `beam`; the orthogonal
/// component is swapped into `loss`. Throws InvalidArgument when the loss modes
/// collide with the beam modes.
ElementSpec polarizer(double angle, std::pair<ModeLabel, ModeLabel> beam, std::pair<ModeLabel, ModeLabel> loss);
ElementSpec polarizer(double angle, Beam beam, Beam loss);

/// Throws InvalidArgument when an element's loss modes are touched by any other
/// element of the circuit.
void check_loss_modes(std::span<const ElementSpec> circuit);

/// Product of the lifted elements, first element applied first.
Operator compose(std::span<const ElementSpec> circuit, SpacePtr space);

/// compose(circuit, state.space()) applied to `state`, element by element.
StateVector apply_circuit(std::span<const ElementSpec> circuit, const StateVector& state);

}  // namespace lotsim
