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

#include "lotsim/optics/elements.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "lotsim/error.hpp"

namespace lotsim {

Eigen::Matrix2cd beamsplitter_creation_map(double transmissivity, double phase) {
  const double t = std::sqrt(transmissivity);
  const double r = std::sqrt(1.0 - transmissivity);
  Eigen::Matrix2cd m;
  m << t, std::polar(r, phase), -std::polar(r, -phase), t;
  return m;
}

ElementSpec beamsplitter(double transmissivity, double phase, std::span<const std::pair<ModeLabel, ModeLabel>> pairs) {
  if (!(transmissivity >= 0.0 && transmissivity <= 1.0)) {
    throw InvalidArgument("beamsplitter transmissivity " + std::to_string(transmissivity) + " is outside [0, 1]");
  }
  if (pairs.empty()) throw InvalidArgument("beamsplitter needs at least one mode pair");
  // The amplitude matrix is the transpose of the creation-operator map.
  const Eigen::Matrix2cd w = beamsplitter_creation_map(transmissivity, phase).transpose();
  std::vector<ModeLabel> modes;
  for (const auto& [a, b] : pairs) {
    modes.push_back(a);
    modes.push_back(b);
  }
  const auto n = static_cast<Eigen::Index>(modes.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; k += 2) m.block(k, k, 2, 2) = w;
  return ElementSpec(ElementSpec::Kind::beamsplitter, "beamsplitter", ModeTransform(std::move(modes), std::move(m)));
}

ElementSpec beamsplitter(double transmissivity, double phase, ModeLabel a, ModeLabel b) {
  const std::pair<ModeLabel, ModeLabel> p[] = {{a, b}};
  return beamsplitter(transmissivity, phase, p);
}

ElementSpec beamsplitter(double transmissivity, double phase, Beam a, Beam b) {
  const std::pair<ModeLabel, ModeLabel> p[] = {{H(a), H(b)}, {V(a), V(b)}};
  return beamsplitter(transmissivity, phase, p);
}

ElementSpec pbs(const std::array<ModeLabel, 4>& modes) {
  const auto& [ah, av, bh, bv] = modes;
  const bool well_formed = ah.beam == av.beam && bh.beam == bv.beam && ah.beam != bh.beam &&
                           ah.pol == Polarization::H && av.pol == Polarization::V && bh.pol == Polarization::H &&
                           bv.pol == Polarization::V;
  if (!well_formed) throw InvalidArgument("pbs expects {aH, aV, bH, bV} for two distinct beams");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(0, 0) = 1.0;  // aH -> aH
  m(2, 2) = 1.0;  // bH -> bH
  m(3, 1) = 1.0;  // aV -> bV
  m(1, 3) = 1.0;  // bV -> aV
  return ElementSpec(ElementSpec::Kind::pbs, "pbs", ModeTransform({ah, av, bh, bv}, std::move(m)));
}

ElementSpec pbs(Beam a, Beam b) { return pbs({H(a), V(a), H(b), V(b)}); }

ElementSpec waveplate(double axis, double retardance, Beam beam) {
  const double c = std::cos(axis);
  const double s = std::sin(axis);
  Eigen::Matrix2cd r;
  r << c, -s, s, c;
  Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
  d(0, 0) = std::polar(1.0, -retardance / 2);
  d(1, 1) = std::polar(1.0, retardance / 2);
  Eigen::MatrixXcd m = r * d * r.transpose();
  return ElementSpec(ElementSpec::Kind::waveplate, "waveplate", ModeTransform(beam_modes(beam), std::move(m)));
}

ElementSpec half_wave_plate(double axis, Beam beam) { return waveplate(axis, std::numbers::pi, beam); }
ElementSpec quarter_wave_plate(double axis, Beam beam) { return waveplate(axis, std::numbers::pi / 2, beam); }

ElementSpec phase_shift(double angle, std::vector<ModeLabel> modes) {
  if (modes.empty()) throw InvalidArgument("phase_shift needs at least one mode");
  const auto n = static_cast<Eigen::Index>(modes.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n) * std::polar(1.0, angle);
  return ElementSpec(ElementSpec::Kind::phase_shift, "phase_shift", ModeTransform(std::move(modes), std::move(m)));
}

ElementSpec polarizer(double angle, std::pair<ModeLabel, ModeLabel> beam, std::pair<ModeLabel, ModeLabel> loss) {
  const std::set<ModeLabel> distinct{beam.first, beam.second, loss.first, loss.second};
  if (distinct.size() != 4) throw InvalidArgument("polarizer loss modes collide with its beam modes");
  Eigen::Vector2cd pass(std::cos(angle), std::sin(angle));
  Eigen::Vector2cd block(-std::sin(angle), std::cos(angle));
  const Eigen::Matrix2cd p_pass = pass * pass.adjoint();
  const Eigen::Matrix2cd p_block = block * block.adjoint();
  // Passed component stays in the beam; the blocked one swaps with the loss port.
  Eigen::MatrixXcd m(4, 4);
  m << p_pass, p_block, p_block, p_pass;
  return ElementSpec(ElementSpec::Kind::polarizer, "polarizer",
                     ModeTransform({beam.first, beam.second, loss.first, loss.second}, std::move(m)),
                     {loss.first, loss.second});
}

ElementSpec polarizer(double angle, Beam beam, Beam loss) {
  return polarizer(angle, {H(beam), V(beam)}, {H(loss), V(loss)});
}

void check_loss_modes(std::span<const ElementSpec> circuit) {
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    for (const auto& lm : circuit[i].loss_modes()) {
      for (std::size_t j = 0; j < circuit.size(); ++j) {
        if (i == j) continue;
        const auto& mj = circuit[j].modes();
        if (std::find(mj.begin(), mj.end(), lm) != mj.end()) {
          throw InvalidArgument("loss mode " + lm.name() + " of element " + std::to_string(i) +
                                " is also used by element " + std::to_string(j));
        }
      }
    }
  }
}

Operator compose(std::span<const ElementSpec> circuit, SpacePtr space) {
  check_loss_modes(circuit);
  Operator total = Operator::identity(space);
  for (const auto& e : circuit) total = lift(e.transform(), space) * total;
  return total;
}

StateVector apply_circuit(std::span<const ElementSpec> circuit, const StateVector& state) {
  check_loss_modes(circuit);
  StateVector s = state;
  for (const auto& e : circuit) s = apply(e.transform(), s);
  return s;
}

}  // namespace lotsim
