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

#include "lotsim/detection/conditioning.hpp"

#include <set>
#include <unordered_map>

#include "lotsim/error.hpp"

namespace lotsim {

namespace {

// Splits basis states of the input space into (kept index, traced index) and
// evaluates the product of the pattern's POVM diagonals on the traced part.
class ConditioningPlan {
 public:
  ConditioningPlan(const SpacePtr& space, const OutcomePattern& pattern, std::span<const NamedDetector> detectors)
      : space_(space) {
    std::set<std::string> ids;
    std::set<ModeLabel> watched;
    for (const auto& d : detectors) {
      if (!ids.insert(d.id).second) throw InvalidArgument("duplicate detector id '" + d.id + "'");
      d.model.validate();
      for (const auto& m : d.model.watched) {
        if (!watched.insert(m).second) throw InvalidArgument("detectors overlap on mode " + m.name());
        space->mode_index(m);
      }
    }
    for (const auto& [id, label] : pattern) {
      if (!ids.count(id)) throw InvalidArgument("outcome pattern names unknown detector '" + id + "'");
    }

    std::vector<bool> traced(space->num_modes(), false);
    std::vector<ModeLabel> kept_modes;
    std::vector<ModeLabel> traced_modes;
    for (std::size_t k = 0; k < space->num_modes(); ++k) {
      const auto& m = space->modes()[k];
      traced[k] = watched.count(m) || m.beam.is_discarded();
      (traced[k] ? traced_modes : kept_modes).push_back(m);
      (traced[k] ? traced_pos_ : kept_pos_).push_back(k);
    }
    kept_space_ = make_space(kept_modes, space->cutoff());
    traced_space_ = make_space(traced_modes, space->cutoff());

    for (const auto& d : detectors) {
      const auto it = pattern.find(d.id);
      if (it == pattern.end()) continue;  // summed over: identity weight
      Factor f;
      const auto povm = diagonal_povm(d.model, space->cutoff());
      f.local = povm.watched_space;
      f.weights = povm.element(it->second);
      for (const auto& m : d.model.watched) f.positions.push_back(space->mode_index(m));
      factors_.push_back(std::move(f));
    }
    occ_.resize(space->num_modes());
    kept_occ_.resize(kept_pos_.size());
    traced_occ_.resize(traced_pos_.size());
  }

  const SpacePtr& kept_space() const { return kept_space_; }

  struct Split {
    Index kept;
    Index traced;
    double weight;
  };

  const Split& split(Index i) {
    auto it = cache_.find(i);
    if (it != cache_.end()) return it->second;
    space_->occupation(i, occ_);
    for (std::size_t k = 0; k < kept_pos_.size(); ++k) kept_occ_[k] = occ_[kept_pos_[k]];
    for (std::size_t k = 0; k < traced_pos_.size(); ++k) traced_occ_[k] = occ_[traced_pos_[k]];
    double w = 1.0;
    for (const auto& f : factors_) {
      Occupation local(f.positions.size());
      for (std::size_t k = 0; k < local.size(); ++k) local[k] = occ_[f.positions[k]];
      w *= f.weights[f.local->index_of(local)];
    }
    return cache_.emplace(i, Split{kept_space_->index_of(kept_occ_), traced_space_->index_of(traced_occ_), w})
        .first->second;
  }

 private:
  struct Factor {
    SpacePtr local;
    std::vector<std::size_t> positions;
    std::vector<double> weights;
  };

  SpacePtr space_;
  SpacePtr kept_space_;
  SpacePtr traced_space_;
  std::vector<std::size_t> kept_pos_;
  std::vector<std::size_t> traced_pos_;
  std::vector<Factor> factors_;
  std::unordered_map<Index, Split> cache_;
  Occupation occ_;
  Occupation kept_occ_;
  Occupation traced_occ_;
};

SparseMatrix conditioned_matrix(const StateVector& state, ConditioningPlan& plan) {
  struct Group {
    double weight;
    std::vector<std::pair<Index, Complex>> members;
  };
  std::unordered_map<Index, Group> groups;
  for (const auto& [i, x] : state.entries()) {
    const auto& s = plan.split(i);
    if (s.weight == 0.0) continue;
    auto& g = groups[s.traced];
    g.weight = s.weight;
    g.members.emplace_back(s.kept, x);
  }
  std::vector<Eigen::Triplet<Complex>> t;
  for (const auto& [r, g] : groups) {
    for (const auto& [a, x] : g.members) {
      for (const auto& [b, y] : g.members) {
        t.emplace_back(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b), g.weight * x * std::conj(y));
      }
    }
  }
  const auto d = static_cast<Eigen::Index>(plan.kept_space()->dimension());
  SparseMatrix m(d, d);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

SparseMatrix conditioned_matrix(const DensityOperator& rho, ConditioningPlan& plan) {
  std::vector<Eigen::Triplet<Complex>> t;
  const auto& m = rho.matrix();
  for (Eigen::Index col = 0; col < m.outerSize(); ++col) {
    const auto cs = plan.split(static_cast<Index>(col));
    if (cs.weight == 0.0) continue;
    for (SparseMatrix::InnerIterator it(m, col); it; ++it) {
      const auto& rs = plan.split(static_cast<Index>(it.row()));
      if (rs.traced != cs.traced) continue;
      t.emplace_back(static_cast<Eigen::Index>(rs.kept), static_cast<Eigen::Index>(cs.kept), cs.weight * it.value());
    }
  }
  const auto d = static_cast<Eigen::Index>(plan.kept_space()->dimension());
  SparseMatrix out(d, d);
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

double real_trace(const SparseMatrix& m) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < m.rows(); ++k) s += m.coeff(k, k).real();
  return s;
}

ConditionalState finish(const SpacePtr& space, const SparseMatrix& m, double scale) {
  const double p = real_trace(m) * scale;
  if (p < kZeroProbability) throw ZeroProbability("outcome pattern has structurally zero probability", p);
  return {DensityOperator(space, m * Complex{1.0 / real_trace(m)}), p};
}

}  // namespace

ConditionalState condition(const StateVector& state, const OutcomePattern& pattern,
                           std::span<const NamedDetector> detectors) {
  ConditioningPlan plan(state.space(), pattern, detectors);
  return finish(plan.kept_space(), conditioned_matrix(state, plan), 1.0);
}

ConditionalState condition(const DensityOperator& rho, const OutcomePattern& pattern,
                           std::span<const NamedDetector> detectors) {
  ConditioningPlan plan(rho.space(), pattern, detectors);
  return finish(plan.kept_space(), conditioned_matrix(rho, plan), 1.0);
}

double outcome_probability(const StateVector& state, const OutcomePattern& pattern,
                           std::span<const NamedDetector> detectors) {
  ConditioningPlan plan(state.space(), pattern, detectors);
  return real_trace(conditioned_matrix(state, plan));
}

double outcome_probability(const DensityOperator& rho, const OutcomePattern& pattern,
                           std::span<const NamedDetector> detectors) {
  ConditioningPlan plan(rho.space(), pattern, detectors);
  return real_trace(conditioned_matrix(rho, plan));
}

ConditionalState qnd_total_number(const DensityOperator& rho, Beam beam, int n) {
  const auto& space = *rho.space();
  const auto h = space.mode_index(H(beam));
  const auto v = space.mode_index(V(beam));
  std::vector<Eigen::Triplet<Complex>> t;
  Occupation occ(space.num_modes());
  for (Index i = 0; i < space.dimension(); ++i) {
    space.occupation(i, occ);
    if (occ[h] + occ[v] == n) t.emplace_back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i), 1.0);
  }
  const auto d = static_cast<Eigen::Index>(space.dimension());
  SparseMatrix proj(d, d);
  proj.setFromTriplets(t.begin(), t.end());
  const SparseMatrix m = proj * rho.matrix() * proj;
  const double p = real_trace(m);
  if (p < kZeroProbability) {
    throw ZeroProbability("photon-number projection onto n=" + std::to_string(n) + " has zero probability", p);
  }
  return {DensityOperator(rho.space(), m * Complex{1.0 / p}), p / rho.trace()};
}

}  // namespace lotsim
