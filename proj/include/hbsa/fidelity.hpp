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

// Performance of the analyzer with imperfect cavities, for the input
// |phi+>_P |phi+>_S.
//
// Loss enters only through the reflection amplitudes zeta = |r_cold| and
// xi = |r_hot|; phases stay ideal. Two routes are provided:
//
//  * closed forms for the fidelity F(zeta, xi) and efficiency eta(zeta, xi);
//  * circuit_oracle(), which propagates the state through the lossy circuit
//    and evaluates the same quantities numerically.
//
// Accounting used by the oracle (it reproduces the closed forms to rounding):
//
//  * Fidelity: the whole system (two photons, four QD spins and the four
//    readout photons) is propagated coherently with no measurement, every
//    reflection lossy, readout photons included. Each system photon meets at
//    most 5 reflections (2 + 2 + 1). F = |<ideal|lossy>|^2 / (|ideal|^2
//    |lossy|^2).
//  * Efficiency: survival probability of the two system photons only. The
//    spatial stages are propagated exactly; at the polarization QND each
//    photon's reflection is scored against its own freshly prepared |+> spin,
//    i.e. spin correlations between the two passes are not counted. Exact
//    shared-spin survival would be ((zeta^4 + xi^4)/2)^3.

#pragma once

#include <istream>
#include <ostream>
#include <vector>

namespace hbsa::fidelity {

struct LossPoint {
  double zeta = 1.0;
  double xi = 1.0;

  double epsilon() const { return zeta * xi; }
  void validate() const;
};

double closed_form_fidelity(const LossPoint& p);
double closed_form_efficiency(const LossPoint& p);

struct OracleResult {
  double fidelity = 0.0;
  double efficiency = 0.0;
};

OracleResult circuit_oracle(const LossPoint& p);

struct AxisRange {
  double min = 0.0;
  double max = 0.0;
  int points = 1;

  void validate() const;
  std::vector<double> values() const;
};

struct SweepConfig {
  AxisRange g_over_ktot{0.0, 2.4, 81};  // g / (kappa + kappa_s)
  AxisRange ks_over_k{0.0, 0.7, 71};    // kappa_s / kappa
  double gamma = 0.1;                   // in units of kappa
};

struct SweepRow {
  double g_over_ktot = 0.0;
  double ks_over_k = 0.0;
  double zeta = 0.0;
  double xi = 0.0;
  double F = 0.0;
  double eta = 0.0;
};

/// Row-major over (g, kappa_s): g is the outer loop. Output order does not
/// depend on `workers`.
std::vector<SweepRow> sweep(const SweepConfig& config, unsigned workers = 1);

/// Header "g_over_ktot,ks_over_k,zeta,xi,F,eta", 17 significant digits.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_sweep_csv(std::istream& is);

}  // namespace hbsa::fidelity
