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
#include <vector>

#include <Eigen/Dense>

#include "lotsim/fock/density_operator.hpp"

namespace lotsim {

/// Measurement settings on one beam.
///
/// The three polarization bases rotate the analysis basis onto H with a
/// waveplate, split H and V at a PBS and watch both ports with ideal threshold
/// detectors. Outcomes: plus, minus, no_click, both.
///   hv        plus = H,              minus = V
///   diagonal  plus = (H + V)/sqrt2,  minus = (H - V)/sqrt2
///   circular  plus = (H + iV)/sqrt2, minus = (H - iV)/sqrt2
/// Photon counting alone cannot see coherences between the vacuum and the
/// single-photon sector, so vacuum-coherence settings project onto
/// (|0> +- e^{i phase}|pol>)/sqrt2 with outcomes plus, minus, other.
enum class TomographyBasis { hv, diagonal, circular, vacuum_coherence };

struct TomographySetting {
  std::string name;
  TomographyBasis basis = TomographyBasis::hv;
  Polarization pol = Polarization::H;  ///< vacuum_coherence only
  double phase = 0.0;                  ///< vacuum_coherence only

  std::vector<std::string> outcomes() const;
};

/// hv, diagonal, circular.
std::vector<TomographySetting> polarization_settings();
/// polarization_settings() plus vacuum coherence with H and V at phases 0 and pi/2.
std::vector<TomographySetting> default_tomography_settings();

/// True when the settings determine every state of the vacuum + single-photon sector.
bool informationally_complete(const std::vector<TomographySetting>& settings);

/// Effect operators of a setting on `space`, which must hold exactly the H and V
/// modes of one beam. Ordered as setting.outcomes().
std::vector<Eigen::MatrixXcd> setting_effects(const TomographySetting& setting, const SpacePtr& space);

/// Outcome probabilities (or frequencies) per setting.
struct OutcomeTable {
  std::vector<TomographySetting> settings;
  std::vector<std::vector<double>> values;  ///< [setting][outcome]
  bool informationally_complete = false;
  Beam beam = kBeam3;  ///< measured beam
};

/// Exact Born probabilities.
OutcomeTable tomography_probabilities(const DensityOperator& rho, const std::vector<TomographySetting>& settings);

struct CountTable {
  std::vector<TomographySetting> settings;
  std::vector<std::vector<std::int64_t>> counts;
  std::int64_t shots = 0;  ///< per setting
  std::uint64_t seed = 0;
  Beam beam = kBeam3;
};

/// Multinomial draws of `shots` per setting; identical seeds give identical counts.
CountTable sample_counts(const OutcomeTable& probabilities, std::int64_t shots, std::uint64_t seed);
OutcomeTable frequencies(const CountTable& counts);

/// Least-squares linear inversion on the vacuum + single-photon sector, in the
/// basis order of the sector space (that beam's modes at cutoff 1). Throws
/// NumericalError when the settings are not informationally complete.
Eigen::MatrixXcd linear_inversion(const OutcomeTable& data);

/// Sector space of `beam`: its H and V modes at cutoff 1.
SpacePtr sector_space(Beam beam);
/// Vacuum + single-photon block of `rho`, normalized, on sector_space().
DensityOperator sector_state(const DensityOperator& rho);

struct ReconstructionResult {
  DensityOperator rho_hat;  ///< on the measured beam's sector space, PSD and unit trace
  double vacuum_weight_estimate = 0.0;
  /// 1 - trace of the unconstrained inversion: weight the sector does not explain.
  /// Zero for sector states; threshold data only partly reveals multiphoton weight.
  double leakage_estimate = 0.0;
  std::optional<double> fidelity_to_truth;  ///< Uhlmann fidelity to sector_state(truth)
  std::optional<double> trace_distance_to_truth;
  std::int64_t shots_used = 0;  ///< 0 for exact probabilities
};

/// Linear inversion, eigenvalue clipping and trace renormalization.
ReconstructionResult reconstruct(const OutcomeTable& data, const DensityOperator* truth = nullptr,
                                 std::int64_t shots_used = 0);
ReconstructionResult reconstruct(const CountTable& counts, const DensityOperator* truth = nullptr);

/// (tr sqrt(sqrt(a) b sqrt(a)))^2 for unit-trace PSD matrices.
double uhlmann_fidelity(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);
double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace lotsim
