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

// Hyperentanglement swapping: pairs AB and CD start in |phi+>_P |phi+>_S,
// photons B and C go through the analyzer, and A-D end up hyperentangled.
// A local correction on photon D brings every outcome to |phi+>_P |phi+>_S.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "hbsa/bell.hpp"
#include "hbsa/hilbert.hpp"
#include "hbsa/protocol.hpp"

namespace hbsa::swapping {

const Photon& photon_a();
const Photon& photon_b();
const Photon& photon_c();
const Photon& photon_d();

/// Analyzer labels for the middle pair (B first, C second).
protocol::AnalyzerSetup middle_pair_setup();

/// Polarization correction on photon D, applied on both spatial arms.
enum class PolOp { identity, z, x, minus_i_y };  // minus_i_y: |R><L| - |L><R|

const char* to_string(PolOp op);

struct CorrectionOp {
  PolOp pol = PolOp::identity;
  bool phase_on_mode1 = false;  // pi phase on d1, applied first
  bool swap_modes = false;      // d1 <-> d2, applied second

  /// The maps in application order; all act on photon D only.
  std::vector<LinearMap> maps(const Photon& d = photon_d()) const;
  std::string to_string() const;

  friend bool operator==(const CorrectionOp&, const CorrectionOp&) = default;
};

/// |Phi+>^{AB} (x) |Phi+>^{CD}, canonically ordered (pol A..D, spat A..D).
PureState prepare_pairs();

/// |phi+>_P |phi+>_S on A and D, ordered (pol A, pol D, spat A, spat D).
PureState target_state();

/// AD state expected after the middle pair is found in `outcome`.
PureState expected_ad_state(const HyperBellId& outcome);

struct SwapOnce {
  HyperBellId outcome;
  PureState ad_state;  // (pol A, pol D, spat A, spat D)
};

SwapOnce swap_once(Rng& rng);

/// Shipped lookup table, indexed by HyperBellId::index().
CorrectionOp correction_for(const HyperBellId& outcome);

/// Regenerates the table by trying every candidate correction against
/// expected_ad_state(). Throws if an outcome has zero or several solutions.
std::array<CorrectionOp, 16> derive_correction_table();

PureState apply_correction(const PureState& ad_state, const CorrectionOp& op);

struct SwapResult {
  HyperBellId outcome;
  CorrectionOp correction;
  PureState final_state;
  double fidelity = 0.0;  // |<target|final>|^2
};

SwapResult run_swap(Rng& rng);

struct PolarizationOnlySwap {
  BellId outcome;
  PureState state;  // all four photons; B and C spatial modes left unmeasured
};

/// Variant that analyzes B and C in polarization only.
PolarizationOnlySwap polarization_only_swap(Rng& rng);

/// Purity of the reduced A-D spatial-mode state.
double ad_spatial_purity(const PureState& s);

struct Uniformity {
  double chi_square = 0.0;
  double p_value = 1.0;  // upper tail, 15 degrees of freedom
};

/// Pearson test of outcome counts (indexed by HyperBellId::index()) against
/// the uniform 1/16 distribution.
Uniformity outcome_uniformity(const std::array<long, 16>& counts);

}  // namespace hbsa::swapping
