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

#include "lotsim/analysis/baseline.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <random>

#include "lotsim/error.hpp"

namespace lotsim {

BaselineResult classical_baseline(const StateVector& phi, std::int64_t trials, std::uint64_t seed) {
  if (trials < 1) throw InvalidArgument("classical baseline needs at least one trial");
  const auto& space = *phi.space();
  std::optional<Beam> beam;
  Complex a_h{0.0};
  Complex a_v{0.0};
  for (const auto& [i, x] : phi.entries()) {
    const auto occ = space.occupation(i);
    std::optional<std::size_t> mode;
    int total = 0;
    for (std::size_t k = 0; k < occ.size(); ++k) {
      total += occ[k];
      if (occ[k] == 1) mode = k;
    }
    if (total != 1 || !mode) throw InvalidArgument("classical baseline target must be a single photon");
    const auto& label = space.modes()[*mode];
    if (beam && *beam != label.beam) throw InvalidArgument("classical baseline target spans several beams");
    beam = label.beam;
    (label.pol == Polarization::H ? a_h : a_v) = x;
  }
  const double n = std::norm(a_h) + std::norm(a_v);
  if (!beam || std::abs(n - 1.0) > kNormTolerance) throw InvalidArgument("classical baseline target must be normalized");

  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> cos_theta(-1.0, 1.0);
  std::uniform_real_distribution<double> azimuth(0.0, 2.0 * std::numbers::pi);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::int64_t t = 0; t < trials; ++t) {
    const double c = cos_theta(gen);
    const double p = azimuth(gen);
    const double ch = std::sqrt(0.5 * (1.0 + c));
    const double sh = std::sqrt(std::max(0.0, 0.5 * (1.0 - c)));
    const Complex overlap = std::conj(a_h) * ch + std::conj(a_v) * std::polar(sh, p);
    const double f = std::norm(overlap);
    sum += f;
    sum_sq += f * f;
  }
  const double m = static_cast<double>(trials);
  const double mean = sum / m;
  const double var = trials > 1 ? std::max(0.0, (sum_sq - m * mean * mean) / (m - 1.0)) : 0.0;
  return {0.5, mean, std::sqrt(var / m), trials, seed};
}

}  // namespace lotsim
