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

// Bell-state identifiers for the polarization and spatial-mode degrees of
// freedom, and the photon bookkeeping used to build two-photon states.

#pragma once

#include <array>
#include <string>
#include <string_view>

#include "hbsa/hilbert.hpp"

namespace hbsa {

enum class Dof { polarization, spatial };
enum class BellKind { phi, psi };  // phi: even parity, psi: odd parity
enum class BellSign { plus, minus };

struct BellId {
  Dof dof = Dof::polarization;
  BellKind kind = BellKind::phi;
  BellSign sign = BellSign::plus;

  /// phi+ = 0, phi- = 1, psi+ = 2, psi- = 3.
  int index() const;
  static BellId from_index(Dof dof, int index);
  /// "phi+", "psi-", ...
  std::string name() const;
  bool even_parity() const { return kind == BellKind::phi; }

  friend bool operator==(const BellId&, const BellId&) = default;
};

/// Case-insensitive "phi+", "PSI-", ... Throws std::invalid_argument.
BellId parse_bell(std::string_view text, Dof dof);

struct HyperBellId {
  BellId pol{Dof::polarization};
  BellId spat{Dof::spatial};

  /// 4 * pol.index() + spat.index().
  int index() const { return 4 * pol.index() + spat.index(); }
  static HyperBellId from_index(int index);
  static HyperBellId of(BellKind pk, BellSign ps, BellKind sk, BellSign ss);
  /// "<pol>,<spat>", e.g. "psi-,phi+".
  std::string name() const;

  friend bool operator==(const HyperBellId&, const HyperBellId&) = default;
};

/// Parses "<pol>,<spat>" (case-insensitive). Throws std::invalid_argument.
HyperBellId parse_hyper_bell(std::string_view text);

std::array<HyperBellId, 16> all_hyper_bell_ids();

/// Subsystem labels and mode names of one photon.
struct Photon {
  std::string name;
  std::string polarization;
  std::string spatial;
  std::array<std::string, 2> modes;

  /// Photon "A" with mode prefix "a" gets labels pol_A / spat_A and modes a1, a2.
  static Photon make(const std::string& name, const std::string& mode_prefix);

  Subsystem polarization_subsystem() const;
  Subsystem spatial_subsystem() const;
};

/// The Bell state of `dof` shared by two photons, ordered (first, second).
PureState bell_state(const BellId& id, const Photon& first, const Photon& second);

}  // namespace hbsa
