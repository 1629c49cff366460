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

#include "lotsim/fock/fock_space.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "lotsim/error.hpp"

namespace lotsim {

FockSpace::FockSpace(std::vector<ModeLabel> modes, int cutoff) : modes_(std::move(modes)), cutoff_(cutoff) {
  if (cutoff_ < 0) throw InvalidArgument("Fock space cutoff must be non-negative");
  std::set<ModeLabel> seen;
  for (const auto& m : modes_) {
    if (!seen.insert(m).second) throw InvalidArgument("duplicate mode " + m.name() + " in Fock space");
  }

  // counts_[m][n] = C(n + m, m), built by the recurrence count(m, n) = sum_{k<=n} count(m-1, k).
  counts_.assign(modes_.size() + 1, std::vector<Index>(static_cast<std::size_t>(cutoff_) + 1, 1));
  for (std::size_t m = 1; m <= modes_.size(); ++m) {
    Index running = 0;
    for (int n = 0; n <= cutoff_; ++n) {
      running += counts_[m - 1][static_cast<std::size_t>(n)];
      counts_[m][static_cast<std::size_t>(n)] = running;
    }
  }
  dimension_ = count(modes_.size(), cutoff_);
}

Index FockSpace::count(std::size_t m, int n) const {
  return n < 0 ? 0 : counts_[m][static_cast<std::size_t>(n)];
}

std::optional<std::size_t> FockSpace::position(const ModeLabel& mode) const {
  const auto it = std::find(modes_.begin(), modes_.end(), mode);
  if (it == modes_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - modes_.begin());
}

std::size_t FockSpace::mode_index(const ModeLabel& mode) const {
  if (auto p = position(mode)) return *p;
  throw SpaceMismatch("mode " + mode.name() + " is not part of " + describe());
}

Index FockSpace::index_of(std::span<const int> occ) const {
  if (occ.size() != modes_.size()) {
    throw InvalidArgument("occupation has " + std::to_string(occ.size()) + " entries, space has " +
                          std::to_string(modes_.size()) + " modes");
  }
  int remaining = cutoff_;
  Index index = 0;
  const std::size_t m = modes_.size();
  for (std::size_t k = 0; k < m; ++k) {
    const int n = occ[k];
    if (n < 0) throw InvalidArgument("negative occupation");
    if (n > remaining) {
      throw InvalidArgument("occupation total exceeds cutoff " + std::to_string(cutoff_));
    }
    // Every vector whose k-th entry is smaller than n precedes this one.
    for (int v = 0; v < n; ++v) index += count(m - k - 1, remaining - v);
    remaining -= n;
  }
  return index;
}

void FockSpace::occupation(Index i, std::span<int> out) const {
  if (i >= dimension_) throw InvalidArgument("basis index out of range");
  const std::size_t m = modes_.size();
  int remaining = cutoff_;
  for (std::size_t k = 0; k < m; ++k) {
    int v = 0;
    while (true) {
      const Index block = count(m - k - 1, remaining - v);
      if (i < block) break;
      i -= block;
      ++v;
    }
    out[k] = v;
    remaining -= v;
  }
}

Occupation FockSpace::occupation(Index i) const {
  Occupation occ(modes_.size());
  occupation(i, occ);
  return occ;
}

Index FockSpace::sector_dimension(int n) const {
  if (n < 0 || n > cutoff_) return 0;
  if (modes_.empty()) return n == 0 ? 1 : 0;
  // Vectors of length m summing to exactly n: C(n + m - 1, m - 1) = count(m - 1, n).
  return count(modes_.size() - 1, n);
}

std::string FockSpace::describe() const {
  std::string s = "FockSpace{";
  for (std::size_t k = 0; k < modes_.size(); ++k) {
    if (k) s += ' ';
    s += modes_[k].name();
  }
  return s + "; cutoff " + std::to_string(cutoff_) + "}";
}

}  // namespace lotsim
