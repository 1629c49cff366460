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

#include "lotsim/experiment/setup.hpp"

#include <cmath>
#include <numbers>

#include "lotsim/error.hpp"
#include "lotsim/sources/spdc.hpp"

namespace lotsim {

std::string preparation_name(Preparation p) {
  return p == Preparation::polarizer_on_beam_1 ? "polarizer_on_beam_1" : "analyzer_before_p";
}

Preparation parse_preparation(const std::string& name) {
  if (name == "polarizer_on_beam_1") return Preparation::polarizer_on_beam_1;
  if (name == "analyzer_before_p") return Preparation::analyzer_before_p;
  throw InvalidArgument("unknown preparation '" + name + "' (expected polarizer_on_beam_1 or analyzer_before_p)");
}

namespace {

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be finite");
}

void check_coupling(double g, const char* what, bool allow_zero) {
  const bool ok = allow_zero ? (g >= 0.0 && g < 1.0) : (g > 0.0 && g < 1.0);
  if (!ok) {
    throw InvalidArgument(std::string(what) + " = " + std::to_string(g) + " is outside " +
                          (allow_zero ? "[0, 1)" : "(0, 1)"));
  }
}

DetectorModel model_on(Beam beam, const DetectorSpec& spec) {
  return DetectorModel::on_beam(beam, spec.kind, spec.efficiency);
}

}  // namespace

void SetupConfig::validate(bool allow_zero_coupling) const {
  check_coupling(coupling_I, "coupling_I", allow_zero_coupling);
  check_coupling(coupling_II, "coupling_II", allow_zero_coupling);
  check_finite(input_angle, "input angle");
  check_finite(bs_phase, "beamsplitter phase");
  if (bob_analyzer_angle) check_finite(*bob_analyzer_angle, "Bob analyzer angle");
  if (cutoff < 4) throw InvalidArgument("cutoff " + std::to_string(cutoff) + " is below 4 (two pairs)");
  if (!(max_discarded_weight >= 0.0 && max_discarded_weight < 1.0)) {
    throw InvalidArgument("max_discarded_weight must lie in [0, 1)");
  }
  const std::pair<const char*, const DetectorSpec*> dets[] = {{"p", &p}, {"f1", &f1}, {"f2", &f2}, {"d1", &d1}, {"d2", &d2}};
  for (const auto& [id, spec] : dets) {
    try {
      model_on(kBeam1, *spec).validate();
    } catch (const InvalidArgument& e) {
      throw InvalidArgument(std::string("detector ") + id + ": " + e.what());
    }
  }
}

ModeTransform BobStation::network() const {
  ModeTransform t = ModeTransform::identity({H(kBeam3), V(kBeam3), H(kBobReflected), V(kBobReflected)});
  for (const auto& e : elements) t = e.transform() * t;
  return t;
}

Circuit build_circuit(const SetupConfig& config) {
  config.validate(/*allow_zero_coupling=*/true);
  Circuit c;
  std::vector<ModeLabel> modes;
  for (const auto b : {kBeam1, kBeam2, kBeam3, kBeam4}) {
    modes.push_back(H(b));
    modes.push_back(V(b));
  }
  if (config.preparation == Preparation::polarizer_on_beam_1) {
    c.elements.push_back(polarizer(config.input_angle, kBeam1, kPolarizerLoss));
    modes.push_back(H(kPolarizerLoss));
    modes.push_back(V(kPolarizerLoss));
  } else {
    c.elements.push_back(polarizer(config.input_angle + std::numbers::pi / 2, kBeam4, kAnalyzerLoss));
    modes.push_back(H(kAnalyzerLoss));
    modes.push_back(V(kAnalyzerLoss));
  }
  c.elements.push_back(beamsplitter(0.5, config.bs_phase, kBeam1, kBeam2));
  check_loss_modes(c.elements);
  c.space = make_space(std::move(modes), config.cutoff);

  c.detectors = {{"p", model_on(kBeam4, config.p)},
                 {"f1", model_on(kBeam1, config.f1)},
                 {"f2", model_on(kBeam2, config.f2)}};

  // A half-wave plate at a/2 turns the analysis basis by a.
  if (config.bob_analyzer_angle) c.bob.elements.push_back(half_wave_plate(*config.bob_analyzer_angle / 2, kBeam3));
  c.bob.elements.push_back(pbs(kBeam3, kBobReflected));
  c.bob.d1 = {"d1", model_on(kBeam3, config.d1)};
  c.bob.d2 = {"d2", model_on(kBobReflected, config.d2)};
  return c;
}

StateVector source_state(const SetupConfig& config, const Circuit& circuit) {
  const int pairs = config.cutoff / 2;
  SpdcParams s1{config.coupling_I, pairs, kBeam1, kBeam4, config.max_discarded_weight};
  SpdcParams s2{config.coupling_II, pairs, kBeam2, kBeam3, config.max_discarded_weight};
  const auto joint = tensor(spdc_local_state(s1), spdc_local_state(s2));
  auto [state, discarded] = embed(joint, circuit.space);
  if (discarded > config.max_discarded_weight) {
    throw TruncationError("cutoff " + std::to_string(config.cutoff) + " discards weight " + std::to_string(discarded) +
                          " of the joint source state (limit " + std::to_string(config.max_discarded_weight) + ")");
  }
  return state.normalized();
}

StateVector prepare_global_state(const SetupConfig& config, const Circuit& circuit) {
  return apply_circuit(circuit.elements, source_state(config, circuit));
}

StateVector target_state(const SetupConfig& config, SpacePtr beam3_space) {
  return polarized_photon(std::move(beam3_space), kBeam3, config.input_angle);
}

}  // namespace lotsim
