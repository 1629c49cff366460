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

#include "lotsim/analysis/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/SVD>

#include "lotsim/detection/detector.hpp"
#include "lotsim/error.hpp"
#include "lotsim/optics/elements.hpp"

namespace lotsim {

namespace {

constexpr double kRankTolerance = 1e-10;

Beam beam_of(const FockSpace& space) {
  const auto& m = space.modes();
  if (m.size() != 2 || m[0] != H(m[0].beam) || m[1] != V(m[0].beam)) {
    throw InvalidArgument("tomography needs a space holding exactly the H and V modes of one beam, got " +
                          space.describe());
  }
  return m[0].beam;
}

std::string basis_name(TomographyBasis b) {
  switch (b) {
    case TomographyBasis::hv: return "hv";
    case TomographyBasis::diagonal: return "diagonal";
    case TomographyBasis::circular: return "circular";
    case TomographyBasis::vacuum_coherence: break;
  }
  return "vacuum_coherence";
}

std::vector<Eigen::MatrixXcd> counting_effects(const TomographySetting& s, const SpacePtr& space) {
  const Beam beam = beam_of(*space);
  const Beam port = beam == Beam::ancilla(0) ? Beam::ancilla(1) : Beam::ancilla(0);
  ModeTransform net = ModeTransform::identity({H(beam), V(beam), H(port), V(port)});
  if (s.basis == TomographyBasis::diagonal) net = half_wave_plate(std::numbers::pi / 8, beam).transform() * net;
  if (s.basis == TomographyBasis::circular) net = quarter_wave_plate(std::numbers::pi / 4, beam).transform() * net;
  net = pbs(beam, port).transform() * net;

  std::vector<Eigen::MatrixXcd> effects;
  for (int outcome = 0; outcome < 4; ++outcome) {
    effects.push_back(pull_back_effect(net, space, [&](const FockSpace& s2, const Occupation& occ) {
      const bool t = occ[s2.mode_index(H(beam))] + occ[s2.mode_index(V(beam))] > 0;
      const bool r = occ[s2.mode_index(H(port))] + occ[s2.mode_index(V(port))] > 0;
      const bool hit[] = {t && !r, !t && r, !t && !r, t && r};
      return hit[outcome] ? 1.0 : 0.0;
    }));
  }
  return effects;
}

std::vector<Eigen::MatrixXcd> coherence_effects(const TomographySetting& s, const SpacePtr& space) {
  beam_of(*space);  // validates the space
  const auto d = static_cast<Eigen::Index>(space->dimension());
  const int one[] = {s.pol == Polarization::H ? 1 : 0, s.pol == Polarization::V ? 1 : 0};
  const int zero[] = {0, 0};
  if (space->cutoff() < 1) throw InvalidArgument("vacuum-coherence setting needs cutoff >= 1");
  const auto vac = static_cast<Eigen::Index>(space->index_of(zero));
  const auto pol = static_cast<Eigen::Index>(space->index_of(one));
  std::vector<Eigen::MatrixXcd> effects;
  Eigen::MatrixXcd rest = Eigen::MatrixXcd::Identity(d, d);
  for (const double sign : {1.0, -1.0}) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(d);
    e(vac) = 1.0 / std::numbers::sqrt2;
    e(pol) = sign * std::polar(1.0, s.phase) / std::numbers::sqrt2;
    effects.push_back(e * e.adjoint());
    rest -= effects.back();
  }
  effects.push_back(rest);
  return effects;
}

// Hermitian basis of 3x3 matrices: diagonal units, then real and imaginary
// off-diagonal pairs.
std::vector<Eigen::Matrix3cd> hermitian_basis() {
  std::vector<Eigen::Matrix3cd> b;
  for (int k = 0; k < 3; ++k) {
    Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
    m(k, k) = 1.0;
    b.push_back(m);
  }
  for (int r = 0; r < 3; ++r) {
    for (int c = r + 1; c < 3; ++c) {
      Eigen::Matrix3cd re = Eigen::Matrix3cd::Zero();
      re(r, c) = re(c, r) = 1.0;
      Eigen::Matrix3cd im = Eigen::Matrix3cd::Zero();
      im(r, c) = Complex{0.0, -1.0};
      im(c, r) = Complex{0.0, 1.0};
      b.push_back(re);
      b.push_back(im);
    }
  }
  return b;
}

// Rows: every (setting, outcome); columns: the Hermitian basis.
Eigen::MatrixXd design_matrix(const std::vector<TomographySetting>& settings) {
  const auto space = sector_space(kBeam3);
  const auto basis = hermitian_basis();
  std::vector<Eigen::VectorXd> rows;
  for (const auto& s : settings) {
    for (const auto& e : setting_effects(s, space)) {
      Eigen::VectorXd row(9);
      for (int k = 0; k < 9; ++k) row(k) = (e * basis[static_cast<std::size_t>(k)]).trace().real();
      rows.push_back(row);
    }
  }
  Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), 9);
  for (std::size_t i = 0; i < rows.size(); ++i) a.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  return a;
}

bool full_rank(const Eigen::MatrixXd& a) {
  if (a.rows() < 9) return false;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& sv = svd.singularValues();
  return sv(sv.size() - 1) > kRankTolerance * sv(0);
}

Eigen::MatrixXcd sector_block(const Eigen::MatrixXcd& m, const FockSpace& space, const FockSpace& sector) {
  const auto d = static_cast<Eigen::Index>(sector.dimension());
  Eigen::MatrixXcd out(d, d);
  std::vector<Eigen::Index> where;
  for (Index i = 0; i < sector.dimension(); ++i) where.push_back(static_cast<Eigen::Index>(space.index_of(sector.occupation(i))));
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) out(r, c) = m(where[static_cast<std::size_t>(r)], where[static_cast<std::size_t>(c)]);
  }
  return out;
}

}  // namespace

std::vector<std::string> TomographySetting::outcomes() const {
  if (basis == TomographyBasis::vacuum_coherence) return {"plus", "minus", "other"};
  return {"plus", "minus", "no_click", "both"};
}

std::vector<TomographySetting> polarization_settings() {
  std::vector<TomographySetting> out;
  for (const auto b : {TomographyBasis::hv, TomographyBasis::diagonal, TomographyBasis::circular}) {
    out.push_back({basis_name(b), b});
  }
  return out;
}

std::vector<TomographySetting> default_tomography_settings() {
  auto out = polarization_settings();
  for (const auto pol : {Polarization::H, Polarization::V}) {
    for (const int deg : {0, 90}) {
      const std::string name = std::string("vac_") + (pol == Polarization::H ? "H" : "V") + "_" + std::to_string(deg);
      out.push_back({name, TomographyBasis::vacuum_coherence, pol, deg * std::numbers::pi / 180.0});
    }
  }
  return out;
}

bool informationally_complete(const std::vector<TomographySetting>& settings) {
  return full_rank(design_matrix(settings));
}

std::vector<Eigen::MatrixXcd> setting_effects(const TomographySetting& setting, const SpacePtr& space) {
  return setting.basis == TomographyBasis::vacuum_coherence ? coherence_effects(setting, space)
                                                           : counting_effects(setting, space);
}

OutcomeTable tomography_probabilities(const DensityOperator& rho, const std::vector<TomographySetting>& settings) {
  const Eigen::MatrixXcd m = rho.normalized().dense();
  OutcomeTable out{settings, {}, informationally_complete(settings), beam_of(*rho.space())};
  for (const auto& s : settings) {
    std::vector<double> p;
    for (const auto& e : setting_effects(s, rho.space())) p.push_back((e * m).trace().real());
    out.values.push_back(std::move(p));
  }
  return out;
}

CountTable sample_counts(const OutcomeTable& probabilities, std::int64_t shots, std::uint64_t seed) {
  if (shots < 1) throw InvalidArgument("tomography needs at least one shot per setting");
  CountTable out{probabilities.settings, {}, shots, seed, probabilities.beam};
  for (std::size_t k = 0; k < probabilities.values.size(); ++k) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(k)};
    std::mt19937_64 gen(seq);
    const auto& p = probabilities.values[k];
    std::vector<std::int64_t> counts(p.size(), 0);
    std::int64_t left = shots;
    double mass = 0.0;
    for (double q : p) mass += std::max(q, 0.0);
    for (std::size_t o = 0; o + 1 < p.size() && left > 0; ++o) {
      const double q = std::max(p[o], 0.0);
      const double cond = mass > 0.0 ? std::clamp(q / mass, 0.0, 1.0) : 0.0;
      std::binomial_distribution<std::int64_t> draw(left, cond);
      counts[o] = draw(gen);
      left -= counts[o];
      mass -= q;
    }
    if (!p.empty()) counts.back() += left;
    out.counts.push_back(std::move(counts));
  }
  return out;
}

OutcomeTable frequencies(const CountTable& counts) {
  OutcomeTable out{counts.settings, {}, informationally_complete(counts.settings), counts.beam};
  for (const auto& row : counts.counts) {
    std::vector<double> f;
    for (auto c : row) f.push_back(static_cast<double>(c) / static_cast<double>(counts.shots));
    out.values.push_back(std::move(f));
  }
  return out;
}

Eigen::MatrixXcd linear_inversion(const OutcomeTable& data) {
  const Eigen::MatrixXd a = design_matrix(data.settings);
  if (!full_rank(a)) {
    throw NumericalError("tomography settings are not informationally complete for the vacuum + single-photon sector");
  }
  Eigen::VectorXd p(a.rows());
  Eigen::Index row = 0;
  for (std::size_t s = 0; s < data.settings.size(); ++s) {
    if (data.values[s].size() != data.settings[s].outcomes().size()) {
      throw InvalidArgument("outcome table row for setting '" + data.settings[s].name + "' has the wrong length");
    }
    for (double v : data.values[s]) p(row++) = v;
  }
  const Eigen::VectorXd theta = a.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(p);
  const auto basis = hermitian_basis();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(3, 3);
  for (int k = 0; k < 9; ++k) rho += theta(k) * basis[static_cast<std::size_t>(k)];
  return rho;
}

SpacePtr sector_space(Beam beam) { return make_space(beam_modes(beam), 1); }

DensityOperator sector_state(const DensityOperator& rho) {
  const Beam beam = beam_of(*rho.space());
  const auto sector = sector_space(beam);
  Eigen::MatrixXcd block = sector_block(rho.dense(), *rho.space(), *sector);
  const double t = block.trace().real();
  if (t < kZeroProbability) throw ZeroProbability("state has no weight in the vacuum + single-photon sector", t);
  return DensityOperator::from_dense(sector, block / t);
}

double uhlmann_fidelity(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const Eigen::MatrixXcd ra = psd_sqrt(a);
  const Eigen::MatrixXcd inner = ra * b * ra;
  const auto eig = eigendecompose_hermitian(0.5 * (inner + inner.adjoint()), 1e-9);
  double s = 0.0;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) s += std::sqrt(std::max(eig.values(k), 0.0));
  return std::clamp(s * s, 0.0, 1.0);
}

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const Eigen::MatrixXcd diff = a - b;
  const auto eig = eigendecompose_hermitian(0.5 * (diff + diff.adjoint()), 1e-9);
  return 0.5 * eig.values.cwiseAbs().sum();
}

ReconstructionResult reconstruct(const OutcomeTable& data, const DensityOperator* truth, std::int64_t shots_used) {
  const Eigen::MatrixXcd lin = linear_inversion(data);
  const double lin_trace = lin.trace().real();
  const auto eig = eigendecompose_hermitian(0.5 * (lin + lin.adjoint()), 1e-9);
  Eigen::VectorXd clipped = eig.values.cwiseMax(0.0);
  const double total = clipped.sum();
  if (!(total > 0.0)) throw NumericalError("reconstructed state has no positive eigenvalue");
  clipped /= total;
  const Eigen::MatrixXcd hat = eig.vectors * clipped.cast<Complex>().asDiagonal() * eig.vectors.adjoint();

  const auto space = sector_space(data.beam);
  ReconstructionResult out{DensityOperator::from_dense(space, hat), hat(0, 0).real(), 1.0 - lin_trace,
                           std::nullopt, std::nullopt, shots_used};
  if (truth) {
    const auto t = sector_state(*truth).dense();
    out.fidelity_to_truth = uhlmann_fidelity(t, hat);
    out.trace_distance_to_truth = trace_distance(t, hat);
  }
  return out;
}

ReconstructionResult reconstruct(const CountTable& counts, const DensityOperator* truth) {
  return reconstruct(frequencies(counts), truth, counts.shots);
}

}  // namespace lotsim
