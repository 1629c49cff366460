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

#include <iosfwd>
#include <string>

#include "lotsim/fock/density_operator.hpp"

namespace lotsim {

// Plain-text debug listings.
//
// State:
//   # lotsim state v1
//   modes 1H 1V 4H 4V
//   cutoff 6
//   <n_1> ... <n_M> <re> <im>        one line per stored amplitude, basis order
//
// Density operator:
//   # lotsim density v1
//   modes 3H 3V
//   cutoff 6
//   <row occupations> | <col occupations> <re> <im>
//
// Numbers use 17 significant digits, so a written state reads back bit-exactly.

void write_text(std::ostream& os, const StateVector& state);
void write_text(std::ostream& os, const DensityOperator& rho);
std::string to_text(const StateVector& state);
std::string to_text(const DensityOperator& rho);

/// Parses the state listing. Throws InvalidArgument on malformed input.
StateVector read_state_text(std::istream& is);

}  // namespace lotsim
