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

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace lotsim {

enum class Polarization : std::uint8_t { H = 0, V = 1 };

/// Spatial beam identifier.
///
/// Ids 1..99 are principal beams of an apparatus. Loss beams (where absorbed or
/// blocked light is routed) and ancilla beams (detector-internal ports, auxiliary
/// outputs) live above that range and are traced out by conditioning.
class Beam {
 public:
  constexpr explicit Beam(std::uint16_t id) : id_(id) {}

  static constexpr Beam loss_for(Beam b) { return Beam(static_cast<std::uint16_t>(kLossBase + b.id_)); }
  static constexpr Beam ancilla(std::uint16_t k) { return Beam(static_cast<std::uint16_t>(kAncillaBase + k)); }

  constexpr std::uint16_t id() const { return id_; }
  constexpr bool is_principal() const { return id_ < kLossBase; }
  constexpr bool is_loss() const { return id_ >= kLossBase && id_ < kAncillaBase; }
  constexpr bool is_ancilla() const { return id_ >= kAncillaBase; }
  /// True for any beam that conditioning discards (loss or ancilla).
  constexpr bool is_discarded() const { return !is_principal(); }

  std::string name() const;

  constexpr auto operator<=>(const Beam&) const = default;

 private:
  static constexpr std::uint16_t kLossBase = 100;
  static constexpr std::uint16_t kAncillaBase = 200;
  std::uint16_t id_;
};

inline constexpr Beam kBeam1{1};
inline constexpr Beam kBeam2{2};
inline constexpr Beam kBeam3{3};
inline constexpr Beam kBeam4{4};

struct ModeLabel {
  Beam beam;
  Polarization pol;

  std::string name() const;
  constexpr auto operator<=>(const ModeLabel&) const = default;
};

constexpr ModeLabel H(Beam b) { return {b, Polarization::H}; }
constexpr ModeLabel V(Beam b) { return {b, Polarization::V}; }

/// The (H, V) mode pair of a beam, in that order.
inline std::vector<ModeLabel> beam_modes(Beam b) { return {H(b), V(b)}; }

/// Parses names produced by ModeLabel::name(), e.g. "3H", "L1V", "A2H".
ModeLabel parse_mode_label(const std::string& text);

}  // namespace lotsim
