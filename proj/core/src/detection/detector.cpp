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

#include "lotsim/detection/detector.hpp"

#include <cmath>
#include <numbers>
#include <unordered_map>

#include "lotsim/error.hpp"

namespace lotsim {

std::string kind_name(const DetectorKind& kind) {
  if (std::holds_alternative<Threshold>(kind)) return "threshold";
  if (std::holds_alternative<NumberResolving>(kind)) return "number_resolving";
  return "cascade(" + std::to_string(std::get<Cascade>(kind).stages) + ")";
}

DetectorModel DetectorModel::on_beam(Beam beam, DetectorKind kind, double efficiency) {
  return {kind, efficiency, false, beam_modes(beam)};
}

DetectorModel DetectorModel::on_mode(ModeLabel mode, DetectorKind kind, double efficiency) {
  return {kind, efficiency, true, {mode}};
}

void DetectorModel::validate() const {
  if (!(efficiency >= 0.0 && efficiency <= 1.0)) {
    throw InvalidArgument("detector efficiency " + std::to_string(efficiency) + " is outside [0, 1]");
  }
  if (const auto* c = std::get_if<Cascade>(&kind); c && c->stages < 1) {
    throw InvalidArgument("cascade detector needs at least one stage");
  }
  if (polarization_sensitive) {
    if (watched.size() != 1) throw InvalidArgument("polarization-sensitive detector must watch exactly one mode");
  } else {
    const bool one_beam = watched.size() == 2 && watched[0] == H(watched[0].beam) && watched[1] == V(watched[0].beam);
    if (!one_beam) throw InvalidArgument("polarization-insensitive detector must watch the H and V modes of one beam");
  }
}

std::vector<std::string> DetectorModel::outcome_labels(int cutoff) const {
  std::vector<std::string> labels;
  if (std::holds_alternative<Threshold>(kind)) {
    labels = {"no_click", "click"};
  } else if (std::holds_alternative<NumberResolving>(kind)) {
    for (int n = 0; n <= cutoff; ++n) labels.push_back("n=" + std::to_string(n));
  } else {
    for (int c = 0; c <= std::get<Cascade>(kind).stages; ++c) labels.push_back("clicks=" + std::to_string(c));
  }
  return labels;
}

namespace {

// Pull-back of several diagonal effects at once: classify(out) picks the
// outcome an output Fock state belongs to (or -1 for none).
std::vector<Eigen::MatrixXcd> pull_back_partition(
    const ModeTransform& network, const SpacePtr& input_space, std::size_t outcomes,
    const std::function<void(const FockSpace&, const Occupation&, std::vector<double>&)>& weights) {
  const auto& in_modes = input_space->modes();
  auto net_space = make_space(network.modes(), input_space->cutoff());
  std::vector<std::size_t> where;
  for (const auto& m : in_modes) where.push_back(net_space->mode_index(m));

  // out index -> list of (input index, amplitude)
  std::unordered_map<Index, std::vector<std::pair<Index, Complex>>> columns;
  Occupation in_occ(in_modes.size());
  Occupation net_occ(net_space->num_modes());
  for (Index s = 0; s < input_space->dimension(); ++s) {
    input_space->occupation(s, in_occ);
    std::fill(net_occ.begin(), net_occ.end(), 0);
    for (std::size_t k = 0; k < where.size(); ++k) net_occ[where[k]] = in_occ[k];
    const auto image = apply(network, make_basis_state(net_space, net_occ));
    for (const auto& [o, a] : image.entries()) columns[o].emplace_back(s, a);
  }

  const auto d = static_cast<Eigen::Index>(input_space->dimension());
  std::vector<Eigen::MatrixXcd> effects(outcomes, Eigen::MatrixXcd::Zero(d, d));
  std::vector<double> w(outcomes);
  Occupation out_occ(net_space->num_modes());
  for (const auto& [o, list] : columns) {
    net_space->occupation(o, out_occ);
    std::fill(w.begin(), w.end(), 0.0);
    weights(*net_space, out_occ, w);
    for (std::size_t k = 0; k < outcomes; ++k) {
      if (w[k] == 0.0) continue;
      for (const auto& [s, a] : list) {
        for (const auto& [t, b] : list) {
          effects[k](static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t)) += w[k] * std::conj(a) * b;
        }
      }
    }
  }
  return effects;
}

}  // namespace

Eigen::MatrixXcd pull_back_effect(const ModeTransform& network, const SpacePtr& input_space,
                                  const std::function<double(const FockSpace&, const Occupation&)>& weight) {
  return pull_back_partition(network, input_space, 1,
                             [&](const FockSpace& s, const Occupation& o, std::vector<double>& w) {
                               w[0] = weight(s, o);
                             })
      .front();
}

std::vector<PovmElement> povm(const DetectorModel& detector, int cutoff) {
  detector.validate();
  if (cutoff < 0) throw InvalidArgument("povm cutoff must be non-negative");
  auto watched_space = make_space(detector.watched, cutoff);
  const std::size_t m = detector.watched.size();
  const int stages = std::holds_alternative<Cascade>(detector.kind) ? std::get<Cascade>(detector.kind).stages : 1;
  const bool lossy = detector.efficiency < 1.0;

  // Network modes: watched modes, then one loss port per watched mode, then the
  // extra cascade ports (stage-major).
  std::vector<ModeLabel> modes = detector.watched;
  std::uint16_t next_ancilla = 0;
  auto fresh = [&] { return ModeLabel{Beam::ancilla(next_ancilla++), Polarization::H}; };
  std::vector<std::size_t> loss_at(m);
  if (lossy) {
    for (std::size_t w = 0; w < m; ++w) {
      loss_at[w] = modes.size();
      modes.push_back(fresh());
    }
  }
  // port_at[p][w]: network position of stage p's copy of watched mode w.
  std::vector<std::vector<std::size_t>> port_at(static_cast<std::size_t>(stages), std::vector<std::size_t>(m));
  for (std::size_t w = 0; w < m; ++w) port_at[0][w] = w;
  for (int p = 1; p < stages; ++p) {
    for (std::size_t w = 0; w < m; ++w) {
      port_at[static_cast<std::size_t>(p)][w] = modes.size();
      modes.push_back(fresh());
    }
  }

  const auto n = static_cast<Eigen::Index>(modes.size());
  Eigen::MatrixXcd loss = Eigen::MatrixXcd::Identity(n, n);
  if (lossy) {
    const double t = std::sqrt(detector.efficiency);
    const double r = std::sqrt(1.0 - detector.efficiency);
    for (std::size_t w = 0; w < m; ++w) {
      const auto a = static_cast<Eigen::Index>(w);
      const auto b = static_cast<Eigen::Index>(loss_at[w]);
      loss(a, a) = t;
      loss(b, a) = r;
      loss(a, b) = -r;
      loss(b, b) = t;
    }
  }
  // Balanced k-port splitter (discrete Fourier matrix) per watched mode.
  Eigen::MatrixXcd split = Eigen::MatrixXcd::Identity(n, n);
  if (stages > 1) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(stages));
    for (std::size_t w = 0; w < m; ++w) {
      for (int p = 0; p < stages; ++p) {
        for (int q = 0; q < stages; ++q) {
          const double phase = 2.0 * std::numbers::pi * p * q / stages;
          split(static_cast<Eigen::Index>(port_at[static_cast<std::size_t>(p)][w]),
                static_cast<Eigen::Index>(port_at[static_cast<std::size_t>(q)][w])) = std::polar(scale, phase);
        }
      }
    }
  }
  const ModeTransform network(modes, split * loss);

  const auto labels = detector.outcome_labels(cutoff);
  const bool is_threshold = std::holds_alternative<Threshold>(detector.kind);
  const bool is_number = std::holds_alternative<NumberResolving>(detector.kind);
  auto classify = [&](const FockSpace&, const Occupation& occ, std::vector<double>& w) {
    if (is_number || is_threshold) {
      int count = 0;
      for (std::size_t k = 0; k < m; ++k) count += occ[port_at[0][k]];
      w[is_number ? static_cast<std::size_t>(count) : (count > 0 ? 1u : 0u)] = 1.0;
      return;
    }
    std::size_t clicks = 0;
    for (int p = 0; p < stages; ++p) {
      int count = 0;
      for (std::size_t k = 0; k < m; ++k) count += occ[port_at[static_cast<std::size_t>(p)][k]];
      if (count > 0) ++clicks;
    }
    w[clicks] = 1.0;
  };
  const auto effects = pull_back_partition(network, watched_space, labels.size(), classify);

  std::vector<PovmElement> out;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    out.push_back({labels[k], Operator(watched_space, effects[k].sparseView(Complex{0.0}, 1e-15))});
  }
  return out;
}

std::vector<double> DiagonalPovm::element(const std::string& label) const {
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (labels[k] == label) return weights[k];
  }
  if (label == "no_click") return weights.front();
  if (label == "click") {
    std::vector<double> w(weights.front().size(), 0.0);
    for (std::size_t k = 1; k < weights.size(); ++k) {
      for (std::size_t i = 0; i < w.size(); ++i) w[i] += weights[k][i];
    }
    return w;
  }
  throw InvalidArgument("unknown detector outcome '" + label + "'");
}

DiagonalPovm diagonal_povm(const DetectorModel& detector, int cutoff) {
  DiagonalPovm out;
  for (auto& e : povm(detector, cutoff)) {
    const auto& m = e.op.matrix();
    std::vector<double> diag(static_cast<std::size_t>(m.rows()), 0.0);
    for (Eigen::Index k = 0; k < m.outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
        if (it.row() == it.col()) {
          diag[static_cast<std::size_t>(k)] = it.value().real();
        } else if (std::abs(it.value()) > 1e-12) {
          throw NumericalError("POVM element '" + e.label + "' is not diagonal in the Fock basis");
        }
      }
    }
    out.watched_space = e.op.space();
    out.labels.push_back(e.label);
    out.weights.push_back(std::move(diag));
  }
  return out;
}

}  // namespace lotsim
