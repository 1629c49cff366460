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

#include "lotsim/optics/mode_transform.hpp"

#include <cmath>
#include <set>
#include <unordered_map>

#include "lotsim/error.hpp"

namespace lotsim {

ModeTransform::ModeTransform(std::vector<ModeLabel> modes, Eigen::MatrixXcd matrix)
    : modes_(std::move(modes)), matrix_(std::move(matrix)) {
  const auto n = static_cast<Eigen::Index>(modes_.size());
  if (matrix_.rows() != n || matrix_.cols() != n) throw InvalidArgument("mode transform: matrix shape does not match modes");
  std::set<ModeLabel> seen(modes_.begin(), modes_.end());
  if (seen.size() != modes_.size()) throw InvalidArgument("mode transform: duplicate modes");
  const double defect = (matrix_.adjoint() * matrix_ - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (n && defect > kModeUnitarityTolerance) {
    throw InvalidArgument("mode transform is not unitary (defect " + std::to_string(defect) + ")");
  }
}

ModeTransform ModeTransform::identity(std::vector<ModeLabel> modes) {
  const auto n = static_cast<Eigen::Index>(modes.size());
  return ModeTransform(std::move(modes), Eigen::MatrixXcd::Identity(n, n));
}

ModeTransform ModeTransform::embedded(const std::vector<ModeLabel>& superset) const {
  const auto n = static_cast<Eigen::Index>(superset.size());
  std::vector<Eigen::Index> where;
  for (const auto& m : modes_) {
    const auto it = std::find(superset.begin(), superset.end(), m);
    if (it == superset.end()) throw SpaceMismatch("mode transform: " + m.name() + " missing from superset");
    where.push_back(it - superset.begin());
  }
  Eigen::MatrixXcd big = Eigen::MatrixXcd::Identity(n, n);
  for (std::size_t i = 0; i < where.size(); ++i) {
    for (std::size_t j = 0; j < where.size(); ++j) {
      big(where[j], where[i]) = matrix_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
    }
  }
  return ModeTransform(superset, std::move(big));
}

ModeTransform ModeTransform::inverse() const { return ModeTransform(modes_, matrix_.adjoint()); }

ModeTransform operator*(const ModeTransform& lhs, const ModeTransform& rhs) {
  std::vector<ModeLabel> modes = lhs.modes();
  for (const auto& m : rhs.modes()) {
    if (std::find(modes.begin(), modes.end(), m) == modes.end()) modes.push_back(m);
  }
  const auto a = lhs.embedded(modes);
  const auto b = rhs.embedded(modes);
  return ModeTransform(modes, a.matrix() * b.matrix());
}

ModeTransform polarization_rotation(Beam beam, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Eigen::MatrixXcd m(2, 2);
  m << c, -s, s, c;
  return ModeTransform(beam_modes(beam), std::move(m));
}

namespace {

// Image of a local Fock basis state under the transform, expressed on the local
// space spanned by the transform's modes.
class LocalImages {
 public:
  LocalImages(const ModeTransform& t, int cutoff) : t_(t), local_(t.modes(), cutoff) {}

  const FockSpace& space() const { return local_; }

  const std::vector<std::pair<Index, Complex>>& image(Index in) {
    auto it = cache_.find(in);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(in, compute(in)).first->second;
  }

 private:
  std::vector<std::pair<Index, Complex>> compute(Index in) const {
    const auto occ_in = local_.occupation(in);
    const auto& w = t_.matrix();
    const std::size_t m = occ_in.size();

    double norm = 1.0;
    for (int n : occ_in) {
      for (int k = 2; k <= n; ++k) norm *= k;
    }
    std::unordered_map<Index, Complex> cur{{0, Complex{1.0 / std::sqrt(norm)}}};
    Occupation occ(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (int rep = 0; rep < occ_in[i]; ++rep) {
        std::unordered_map<Index, Complex> next;
        for (const auto& [idx, amp] : cur) {
          local_.occupation(idx, occ);
          for (std::size_t j = 0; j < m; ++j) {
            const Complex wji = w(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
            if (wji == Complex{}) continue;
            const int nj = occ[j];
            occ[j] = nj + 1;
            next[local_.index_of(occ)] += wji * amp * std::sqrt(static_cast<double>(nj + 1));
            occ[j] = nj;
          }
        }
        cur = std::move(next);
      }
    }
    std::vector<std::pair<Index, Complex>> out;
    out.reserve(cur.size());
    for (const auto& [idx, amp] : cur) {
      if (std::abs(amp) >= kPruneThreshold) out.emplace_back(idx, amp);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

  const ModeTransform& t_;
  FockSpace local_;
  std::unordered_map<Index, std::vector<std::pair<Index, Complex>>> cache_;
};

// Visits (output index, amplitude) of lift(t)|in> for a basis index of `space`.
template <typename Visit>
void for_each_image(const FockSpace& space, const std::vector<std::size_t>& where, LocalImages& images, Index in,
                    Occupation& occ, Occupation& local, Visit&& visit) {
  space.occupation(in, occ);
  for (std::size_t k = 0; k < where.size(); ++k) local[k] = occ[where[k]];
  const auto& img = images.image(images.space().index_of(local));
  for (const auto& [out_local, amp] : img) {
    images.space().occupation(out_local, local);
    for (std::size_t k = 0; k < where.size(); ++k) occ[where[k]] = local[k];
    visit(space.index_of(occ), amp);
  }
}

std::vector<std::size_t> positions(const ModeTransform& t, const FockSpace& space) {
  std::vector<std::size_t> where;
  for (const auto& m : t.modes()) where.push_back(space.mode_index(m));
  return where;
}

}  // namespace

Operator lift(const ModeTransform& t, SpacePtr space) {
  const auto where = positions(t, *space);
  LocalImages images(t, space->cutoff());
  std::vector<Eigen::Triplet<Complex>> triplets;
  Occupation occ(space->num_modes());
  Occupation local(where.size());
  for (Index i = 0; i < space->dimension(); ++i) {
    for_each_image(*space, where, images, i, occ, local, [&](Index out, Complex amp) {
      triplets.emplace_back(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(i), amp);
    });
  }
  const auto d = static_cast<Eigen::Index>(space->dimension());
  SparseMatrix m(d, d);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return Operator(std::move(space), std::move(m));
}

StateVector apply(const ModeTransform& t, const StateVector& state) {
  const auto& space = *state.space();
  const auto where = positions(t, space);
  LocalImages images(t, space.cutoff());
  std::vector<StateVector::Entry> out;
  Occupation occ(space.num_modes());
  Occupation local(where.size());
  for (const auto& [i, x] : state.entries()) {
    for_each_image(space, where, images, i, occ, local, [&](Index o, Complex amp) { out.emplace_back(o, amp * x); });
  }
  StateVector result(state.space(), std::move(out));
  if (state.is_normalized() && std::abs(result.norm() - 1.0) <= kNormTolerance) return result.normalized();
  return result;
}

}  // namespace lotsim
