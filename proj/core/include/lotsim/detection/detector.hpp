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

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "lotsim/fock/density_operator.hpp"
#include "lotsim/optics/mode_transform.hpp"

namespace lotsim {

struct Threshold {};
struct NumberResolving {};
/// Watched light split evenly over `stages` threshold detectors; the outcome is
/// the number of detectors that fire.
struct Cascade {
  int stages = 2;
};

using DetectorKind = std::variant<Threshold, NumberResolving, Cascade>;

std::string kind_name(const DetectorKind& kind);

/// Detector semantics on a set of watched modes.
///
/// Efficiency is modeled as a beamsplitter of transmissivity `efficiency` into a
/// loss port in front of an ideal detector. Outcome labels:
///   threshold        no_click, click
///   number_resolving n=0, n=1, ..., n=<cutoff>
///   cascade(k)       clicks=0, ..., clicks=k
/// Conditioning additionally accepts "click" (any non-zero outcome) and
/// "no_click" for every kind.
struct DetectorModel {
  DetectorKind kind = Threshold{};
  double efficiency = 1.0;
  bool polarization_sensitive = false;
  std::vector<ModeLabel> watched;

  /// Polarization-insensitive detector on both modes of `beam`.
  static DetectorModel on_beam(Beam beam, DetectorKind kind = Threshold{}, double efficiency = 1.0);
  /// Polarization-sensitive detector on a single mode.
  static DetectorModel on_mode(ModeLabel mode, DetectorKind kind = Threshold{}, double efficiency = 1.0);

  /// Throws InvalidArgument for an inconsistent model.
  void validate() const;
  std::vector<std::string> outcome_labels(int cutoff) const;
};

struct PovmElement {
  std::string label;
  Operator op;  ///< on the watched modes, truncated at the requested cutoff
};

/// Outcome family of `detector` for up to `cutoff` photons on its watched modes.
/// The elements are positive and sum to the identity.
std::vector<PovmElement> povm(const DetectorModel& detector, int cutoff);

/// POVM elements stored as their diagonals. Every supported detector model is
/// diagonal in the Fock basis of its watched modes.
struct DiagonalPovm {
  SpacePtr watched_space;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> weights;  ///< [outcome][watched basis index]

  /// Diagonal of the element for `label`, including the "click" / "no_click"
  /// aliases. Throws InvalidArgument for an unknown label.
  std::vector<double> element(const std::string& label) const;
};

/// Throws NumericalError when an element has off-diagonal entries above 1e-12.
DiagonalPovm diagonal_povm(const DetectorModel& detector, int cutoff);

/// Effect on `input_space` obtained by feeding it, with every other mode of
/// `network` in vacuum, through the network and weighting each output Fock
/// state by `weight` (given the output space and occupation):
///   E[s, s'] = sum_out weight(out) conj(<out|U|s>) <out|U|s'>
Eigen::MatrixXcd pull_back_effect(const ModeTransform& network, const SpacePtr& input_space,
                                  const std::function<double(const FockSpace&, const Occupation&)>& weight);

}  // namespace lotsim
