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

#include "lotsim/fock/mode.hpp"

#include <charconv>

#include "lotsim/error.hpp"

namespace lotsim {

std::string Beam::name() const {
  if (is_principal()) return std::to_string(id_);
  if (is_loss()) return "L" + std::to_string(id_ - kLossBase);
  return "A" + std::to_string(id_ - kAncillaBase);
}

std::string ModeLabel::name() const {
  return beam.name() + (pol == Polarization::H ? "H" : "V");
}

ModeLabel parse_mode_label(const std::string& text) {
  if (text.size() < 2) throw InvalidArgument("malformed mode label '" + text + "'");
  const char last = text.back();
  if (last != 'H' && last != 'V') throw InvalidArgument("mode label '" + text + "' must end in H or V");
  const Polarization pol = last == 'H' ? Polarization::H : Polarization::V;

  std::string_view body(text.data(), text.size() - 1);
  int offset = 0;
  if (body.front() == 'L') {
    offset = 100;
    body.remove_prefix(1);
  } else if (body.front() == 'A') {
    offset = 200;
    body.remove_prefix(1);
  }
  int id = 0;
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), id);
  if (ec != std::errc() || ptr != body.data() + body.size() || id < 0 || id + offset > 0xffff ||
      (offset == 0 && (id == 0 || id >= 100)) || (offset == 100 && id >= 100)) {
    throw InvalidArgument("malformed mode label '" + text + "'");
  }
  return {Beam(static_cast<std::uint16_t>(id + offset)), pol};
}

}  // namespace lotsim
