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

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lotsim/fock/mode.hpp"

namespace lotsim {

using Index = std::size_t;
using Occupation = std::vector<int>;

/// Truncated multimode bosonic Fock space.
///
/// The basis is every occupation vector over `modes()` whose total photon number
/// is at most `cutoff()`, ordered lexicographically with the first declared mode
/// most significant. Index 0 is the vacuum. Ranking and unranking are closed-form
/// (combinatorial number system), so no lookup tables are kept per basis state.
class FockSpace {
 public:
  FockSpace(std::vector<ModeLabel> modes, int cutoff);

  Index dimension() const { return dimension_; }
  std::size_t num_modes() const { return modes_.size(); }
  int cutoff() const { return cutoff_; }
  const std::vector<ModeLabel>& modes() const { return modes_; }

  bool contains(const ModeLabel& mode) const { return position(mode).has_value(); }
  std::optional<std::size_t> position(const ModeLabel& mode) const;
  /// Position of `mode`; throws SpaceMismatch if absent.
  std::size_t mode_index(const ModeLabel& mode) const;

  Occupation occupation(Index i) const;
  void occupation(Index i, std::span<int> out) const;
  /// Throws InvalidArgument on a length mismatch or when the total exceeds the cutoff.
  Index index_of(std::span<const int> occupation) const;

  /// Number of basis states with exactly `n` photons in total.
  Index sector_dimension(int n) const;

  bool operator==(const FockSpace& other) const {
    return cutoff_ == other.cutoff_ && modes_ == other.modes_;
  }

  std::string describe() const;

 private:
  // Number of occupation vectors over `m` modes with total <= n.
  Index count(std::size_t m, int n) const;

  std::vector<ModeLabel> modes_;
  int cutoff_;
  Index dimension_;
  std::vector<std::vector<Index>> counts_;  // counts_[m][n]
};

using SpacePtr = std::shared_ptr<const FockSpace>;

inline SpacePtr make_space(std::vector<ModeLabel> modes, int cutoff) {
  return std::make_shared<const FockSpace>(std::move(modes), cutoff);
}

/// True when both pointers refer to equal spaces.
inline bool same_space(const SpacePtr& a, const SpacePtr& b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace lotsim
