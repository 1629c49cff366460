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

#include "lotsim/fock/text_io.hpp"

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "lotsim/error.hpp"

namespace lotsim {

namespace {

void write_header(std::ostream& os, const char* kind, const FockSpace& space) {
  os << "# lotsim " << kind << " v1\nmodes";
  for (const auto& m : space.modes()) os << ' ' << m.name();
  os << "\ncutoff " << space.cutoff() << '\n';
}

void write_occupation(std::ostream& os, const Occupation& occ) {
  for (std::size_t k = 0; k < occ.size(); ++k) os << (k ? " " : "") << occ[k];
}

void write_complex(std::ostream& os, Complex z) {
  os << std::scientific << std::setprecision(16) << z.real() << ' ' << z.imag() << std::defaultfloat;
}

}  // namespace

void write_text(std::ostream& os, const StateVector& state) {
  const auto& space = *state.space();
  write_header(os, "state", space);
  for (const auto& [i, x] : state.entries()) {
    write_occupation(os, space.occupation(i));
    os << ' ';
    write_complex(os, x);
    os << '\n';
  }
}

void write_text(std::ostream& os, const DensityOperator& rho) {
  const auto& space = *rho.space();
  write_header(os, "density", space);
  const auto& m = rho.matrix();
  for (Eigen::Index col = 0; col < m.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(m, col); it; ++it) {
      write_occupation(os, space.occupation(static_cast<Index>(it.row())));
      os << " | ";
      write_occupation(os, space.occupation(static_cast<Index>(col)));
      os << ' ';
      write_complex(os, it.value());
      os << '\n';
    }
  }
}

std::string to_text(const StateVector& state) {
  std::ostringstream os;
  write_text(os, state);
  return os.str();
}

std::string to_text(const DensityOperator& rho) {
  std::ostringstream os;
  write_text(os, rho);
  return os.str();
}

StateVector read_state_text(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "# lotsim state v1") throw InvalidArgument("state listing: bad header");

  std::vector<ModeLabel> modes;
  if (!std::getline(is, line)) throw InvalidArgument("state listing: missing modes line");
  {
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word != "modes") throw InvalidArgument("state listing: expected 'modes'");
    while (ls >> word) modes.push_back(parse_mode_label(word));
  }
  int cutoff = -1;
  if (!std::getline(is, line)) throw InvalidArgument("state listing: missing cutoff line");
  {
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word >> cutoff) || word != "cutoff") throw InvalidArgument("state listing: expected 'cutoff N'");
  }
  auto space = make_space(std::move(modes), cutoff);

  std::vector<StateVector::Entry> entries;
  Occupation occ(space->num_modes());
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    for (auto& n : occ) {
      if (!(ls >> n)) throw InvalidArgument("state listing: short occupation line");
    }
    double re = 0.0;
    double im = 0.0;
    if (!(ls >> re >> im)) throw InvalidArgument("state listing: missing amplitude");
    entries.emplace_back(space->index_of(occ), Complex{re, im});
  }
  return StateVector(std::move(space), std::move(entries), NormFlag::unnormalized, 0.0);
}

}  // namespace lotsim
