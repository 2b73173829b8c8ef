// Copyright 2026 The hbsa Authors
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

#include "hbsa/bell.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace hbsa {

namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  out.erase(std::remove_if(out.begin(), out.end(), [](unsigned char c) { return std::isspace(c); }),
            out.end());
  return out;
}

}  // namespace

int BellId::index() const {
  return (kind == BellKind::psi ? 2 : 0) + (sign == BellSign::minus ? 1 : 0);
}

BellId BellId::from_index(Dof dof, int index) {
  if (index < 0 || index > 3) throw std::out_of_range("Bell index must be in [0, 4)");
  return BellId{dof, index >= 2 ? BellKind::psi : BellKind::phi,
                index % 2 == 1 ? BellSign::minus : BellSign::plus};
}

std::string BellId::name() const {
  return std::string(kind == BellKind::phi ? "phi" : "psi") + (sign == BellSign::plus ? "+" : "-");
}

BellId parse_bell(std::string_view text, Dof dof) {
  const std::string t = lower(text);
  static constexpr std::array<std::string_view, 4> names{"phi+", "phi-", "psi+", "psi-"};
  for (int i = 0; i < 4; ++i) {
    if (t == names[static_cast<std::size_t>(i)]) return BellId::from_index(dof, i);
  }
  throw std::invalid_argument("unknown Bell state name '" + std::string(text) +
                              "' (expected phi+, phi-, psi+ or psi-)");
}

HyperBellId HyperBellId::from_index(int index) {
  if (index < 0 || index > 15) throw std::out_of_range("hyper-Bell index must be in [0, 16)");
  return HyperBellId{BellId::from_index(Dof::polarization, index / 4),
                     BellId::from_index(Dof::spatial, index % 4)};
}

HyperBellId HyperBellId::of(BellKind pk, BellSign ps, BellKind sk, BellSign ss) {
  return HyperBellId{BellId{Dof::polarization, pk, ps}, BellId{Dof::spatial, sk, ss}};
}

std::string HyperBellId::name() const { return pol.name() + "," + spat.name(); }

HyperBellId parse_hyper_bell(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) {
    throw std::invalid_argument("state must be '<pol>,<spat>', got '" + std::string(text) + "'");
  }
  return HyperBellId{parse_bell(text.substr(0, comma), Dof::polarization),
                     parse_bell(text.substr(comma + 1), Dof::spatial)};
}

std::array<HyperBellId, 16> all_hyper_bell_ids() {
  std::array<HyperBellId, 16> out;
  for (int i = 0; i < 16; ++i) out[static_cast<std::size_t>(i)] = HyperBellId::from_index(i);
  return out;
}

Photon Photon::make(const std::string& name, const std::string& mode_prefix) {
  return Photon{name, "pol_" + name, "spat_" + name, {mode_prefix + "1", mode_prefix + "2"}};
}

Subsystem Photon::polarization_subsystem() const {
  return Subsystem(polarization, Role::polarization, {"R", "L"});
}

Subsystem Photon::spatial_subsystem() const {
  return Subsystem(spatial, Role::spatial_mode, {modes[0], modes[1]});
}

PureState bell_state(const BellId& id, const Photon& first, const Photon& second) {
  // Level 0 is R (mode 1), level 1 is L (mode 2); index = 2 * first + second.
  Vector amps = Vector::Zero(4);
  const double s = id.sign == BellSign::plus ? 1.0 : -1.0;
  if (id.kind == BellKind::phi) {
    amps(0) = M_SQRT1_2;
    amps(3) = s * M_SQRT1_2;
  } else {
    amps(1) = M_SQRT1_2;
    amps(2) = s * M_SQRT1_2;
  }
  if (id.dof == Dof::polarization) {
    return PureState({first.polarization_subsystem(), second.polarization_subsystem()}, amps);
  }
  return PureState({first.spatial_subsystem(), second.spatial_subsystem()}, amps);
}

}  // namespace hbsa
