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

#include "lotsim/fock/state_vector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "lotsim/error.hpp"

namespace lotsim {

namespace {

std::vector<StateVector::Entry> canonicalize(std::vector<StateVector::Entry> entries, double prune) {
  std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<StateVector::Entry> out;
  out.reserve(entries.size());
  for (const auto& e : entries) {
    if (!out.empty() && out.back().first == e.first) {
      out.back().second += e.second;
    } else {
      out.push_back(e);
    }
  }
  std::erase_if(out, [prune](const auto& e) { return std::abs(e.second) < prune; });
  return out;
}

}  // namespace

StateVector::StateVector(SpacePtr space, std::vector<Entry> entries, NormFlag flag, double prune_threshold)
    : space_(std::move(space)), flag_(flag) {
  if (!space_) throw InvalidArgument("state vector requires a space");
  for (const auto& e : entries) {
    if (e.first >= space_->dimension()) throw InvalidArgument("basis index out of range for " + space_->describe());
  }
  entries_ = canonicalize(std::move(entries), prune_threshold);
  if (flag_ == NormFlag::normalized && std::abs(norm() - 1.0) > kNormTolerance) {
    throw InvalidArgument("state flagged normalized has norm " + std::to_string(norm()));
  }
}

Complex StateVector::amplitude(Index i) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                                   [](const Entry& e, Index key) { return e.first < key; });
  return (it != entries_.end() && it->first == i) ? it->second : Complex{};
}

Complex StateVector::amplitude(std::span<const int> occupation) const {
  return amplitude(space_->index_of(occupation));
}

double StateVector::squared_norm() const {
  double s = 0.0;
  for (const auto& e : entries_) s += std::norm(e.second);
  return s;
}

double StateVector::norm() const { return std::sqrt(squared_norm()); }

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n < kPruneThreshold) throw ZeroProbability("cannot normalize the zero vector", n * n);
  std::vector<Entry> e(entries_.begin(), entries_.end());
  for (auto& x : e) x.second /= n;
  return StateVector(space_, std::move(e), NormFlag::normalized, 0.0);
}

StateVector StateVector::scaled(Complex factor) const {
  std::vector<Entry> e(entries_.begin(), entries_.end());
  for (auto& x : e) x.second *= factor;
  const bool keeps_norm = is_normalized() && std::abs(std::abs(factor) - 1.0) <= kNormTolerance;
  return StateVector(space_, std::move(e), keeps_norm ? NormFlag::normalized : NormFlag::unnormalized);
}

Complex StateVector::inner(const StateVector& other) const {
  if (!same_space(space_, other.space_)) throw SpaceMismatch("inner product across different spaces");
  Complex s{};
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() && b != other.entries_.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      s += std::conj(a->second) * b->second;
      ++a;
      ++b;
    }
  }
  return s;
}

StateVector vacuum(SpacePtr space) {
  return StateVector(std::move(space), {{0, Complex{1.0}}}, NormFlag::normalized);
}

StateVector make_basis_state(SpacePtr space, std::span<const int> occupations) {
  const Index i = space->index_of(occupations);
  return StateVector(std::move(space), {{i, Complex{1.0}}}, NormFlag::normalized);
}

StateVector make_basis_state(SpacePtr space, std::initializer_list<int> occupations) {
  return make_basis_state(std::move(space), std::span<const int>(occupations.begin(), occupations.size()));
}

StateVector single_photon(SpacePtr space, std::span<const ModeLabel> modes, std::span<const Complex> coeffs) {
  if (modes.size() != coeffs.size()) throw InvalidArgument("single_photon: modes and coefficients differ in length");
  if (space->cutoff() < 1) throw InvalidArgument("single_photon: space cutoff is zero");
  std::vector<StateVector::Entry> entries;
  Occupation occ(space->num_modes(), 0);
  for (std::size_t k = 0; k < modes.size(); ++k) {
    const auto pos = space->mode_index(modes[k]);
    occ[pos] = 1;
    entries.emplace_back(space->index_of(occ), coeffs[k]);
    occ[pos] = 0;
  }
  return StateVector(std::move(space), std::move(entries));
}

StateVector polarized_photon(SpacePtr space, Beam beam, double theta, double phase) {
  const ModeLabel modes[] = {H(beam), V(beam)};
  const Complex coeffs[] = {std::cos(theta), std::polar(std::sin(theta), phase)};
  return single_photon(std::move(space), modes, coeffs).normalized();
}

StateVector add(const StateVector& a, const StateVector& b) {
  if (!same_space(a.space(), b.space())) throw SpaceMismatch("cannot add states on different spaces");
  std::vector<StateVector::Entry> e(a.entries().begin(), a.entries().end());
  e.insert(e.end(), b.entries().begin(), b.entries().end());
  return StateVector(a.space(), std::move(e));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  const auto& ma = a.space()->modes();
  const auto& mb = b.space()->modes();
  std::set<ModeLabel> seen(ma.begin(), ma.end());
  for (const auto& m : mb) {
    if (seen.count(m)) throw SpaceMismatch("tensor: mode " + m.name() + " appears in both factors");
  }
  std::vector<ModeLabel> modes(ma);
  modes.insert(modes.end(), mb.begin(), mb.end());
  auto space = make_space(std::move(modes), a.space()->cutoff() + b.space()->cutoff());

  Occupation occ(space->num_modes());
  std::vector<StateVector::Entry> entries;
  entries.reserve(a.size() * b.size());
  for (const auto& [ia, xa] : a.entries()) {
    a.space()->occupation(ia, std::span<int>(occ.data(), ma.size()));
    for (const auto& [ib, xb] : b.entries()) {
      b.space()->occupation(ib, std::span<int>(occ.data() + ma.size(), mb.size()));
      entries.emplace_back(space->index_of(occ), xa * xb);
    }
  }
  const bool unit = a.is_normalized() && b.is_normalized();
  StateVector out(std::move(space), std::move(entries));
  if (unit && std::abs(out.norm() - 1.0) <= kNormTolerance) return out.normalized();
  return out;
}

Truncation embed(const StateVector& state, SpacePtr target) {
  const auto& src_modes = state.space()->modes();
  std::vector<std::size_t> where(src_modes.size());
  for (std::size_t k = 0; k < src_modes.size(); ++k) where[k] = target->mode_index(src_modes[k]);

  Occupation src(src_modes.size());
  Occupation dst(target->num_modes());
  std::vector<StateVector::Entry> entries;
  entries.reserve(state.size());
  double discarded = 0.0;
  for (const auto& [i, x] : state.entries()) {
    state.space()->occupation(i, src);
    const int total = std::accumulate(src.begin(), src.end(), 0);
    if (total > target->cutoff()) {
      discarded += std::norm(x);
      continue;
    }
    std::fill(dst.begin(), dst.end(), 0);
    for (std::size_t k = 0; k < src.size(); ++k) dst[where[k]] = src[k];
    entries.emplace_back(target->index_of(dst), x);
  }
  return {StateVector(std::move(target), std::move(entries)), discarded};
}

StateVector project_number(const StateVector& state, std::span<const ModeLabel> modes, int n) {
  std::vector<std::size_t> pos;
  for (const auto& m : modes) pos.push_back(state.space()->mode_index(m));
  Occupation occ(state.space()->num_modes());
  std::vector<StateVector::Entry> entries;
  for (const auto& [i, x] : state.entries()) {
    state.space()->occupation(i, occ);
    int total = 0;
    for (auto p : pos) total += occ[p];
    if (total == n) entries.emplace_back(i, x);
  }
  return StateVector(state.space(), std::move(entries));
}

}  // namespace lotsim
