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

// Complete hyperentangled Bell-state analysis of a photon pair.
//
// Three stages, each built around one or two QD-cavity QNDs whose spins are
// created in |+> at stage entry and discarded after a single readout:
//
//   1. Spatial parity.  QD1 sits on modes a1 (first photon) and b2 (second
//      photon). Each photon in one of those modes double-passes the cavity,
//      flipping the spin, and a Z plate on the same arm restores its
//      polarization. Even parity (phi) flips QD1 once: "changed".
//   2. Spatial phase.  A beam splitter per photon (a -> c, b -> d) turns the
//      relative phase into parity. QD2 sits on c1 and QD3 on d2, again with
//      double pass and Z correction. Exactly one flip marks the "+" class.
//      Both photons are then detected at their output ports.
//   3. Polarization.  Both photons single-pass QD4. Even polarization parity
//      flips it. Each photon is finally measured in the H/V basis.
//
// No bit-flip plate is placed on any arm: with this stage ordering the decode
// tables absorb it.

#pragma once

#include <array>
#include <string>

#include "hbsa/bell.hpp"
#include "hbsa/hilbert.hpp"
#include "hbsa/optics.hpp"
#include "hbsa/qd_cavity.hpp"

namespace hbsa::protocol {

using cavity::SpinFlag;
using optics::Click;

/// Labels for one analyzer instance. The defaults analyze photons A and B.
struct AnalyzerSetup {
  Photon first = Photon::make("A", "a");
  Photon second = Photon::make("B", "b");
  std::array<std::string, 2> first_out{"c1", "c2"};
  std::array<std::string, 2> second_out{"d1", "d2"};
  std::string qd1 = "qd1";
  std::string qd2 = "qd2";
  std::string qd3 = "qd3";
  std::string qd4 = "qd4";
};

struct MeasurementRecord {
  SpinFlag qd1 = SpinFlag::unchanged;
  SpinFlag qd2 = SpinFlag::unchanged;
  SpinFlag qd3 = SpinFlag::unchanged;
  SpinFlag qd4 = SpinFlag::unchanged;
  std::array<std::string, 2> ports;   // (first photon, second photon)
  std::array<Click, 2> clicks{};      // (first photon, second photon)

  /// QD2 changed iff the first photon left through first_out[0]; QD3 changed
  /// iff the second photon left through second_out[1].
  bool ports_consistent(const AnalyzerSetup& setup = {}) const;
  std::string to_string() const;
};

struct HbsaResult {
  HyperBellId identified;
  MeasurementRecord record;
};

/// The product of the chosen polarization and spatial Bell states, ordered
/// (pol first, pol second, spat first, spat second).
PureState prepare_hyper_bell(const HyperBellId& id, const AnalyzerSetup& setup = {});

struct ParityStageResult {
  SpinFlag flag;
  PureState state;
};

struct PhaseStageResult {
  SpinFlag qd2;
  SpinFlag qd3;
  std::array<std::string, 2> ports;
  PureState state;
};

struct PolarizationStageResult {
  SpinFlag flag;
  std::array<Click, 2> clicks;
  PureState state;
};

ParityStageResult spatial_parity_stage(const PureState& s, Rng& rng,
                                       const AnalyzerSetup& setup = {});
PhaseStageResult spatial_phase_stage(const PureState& s, Rng& rng, const AnalyzerSetup& setup = {});
PolarizationStageResult polarization_stage(const PureState& s, Rng& rng,
                                           const AnalyzerSetup& setup = {});

BellId decode_spatial(SpinFlag qd1, SpinFlag qd2, SpinFlag qd3);
BellId decode_polarization(SpinFlag qd4, const std::array<Click, 2>& clicks);
HyperBellId decode(const MeasurementRecord& record);

struct Analysis {
  HbsaResult result;
  PureState state;  // after all measurements
};

/// Runs all three stages on an arbitrary state containing the setup's two
/// photons. Other subsystems are carried along untouched.
Analysis analyze(const PureState& s, Rng& rng, const AnalyzerSetup& setup = {});

/// prepare_hyper_bell followed by analyze.
HbsaResult run_hbsa(const HyperBellId& id, Rng& rng);

}  // namespace hbsa::protocol
