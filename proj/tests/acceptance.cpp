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

// Acceptance checks. One line per criterion; non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hbsa/bell.hpp"
#include "hbsa/cli.hpp"
#include "hbsa/fidelity.hpp"
#include "hbsa/optics.hpp"
#include "hbsa/protocol.hpp"
#include "hbsa/qd_cavity.hpp"
#include "hbsa/swapping.hpp"

namespace {

using namespace hbsa;
using K = BellKind;
using S = BellSign;

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition && ok) detail = what;
    ok = ok && condition;
  }
};

// 1. Decode tables by simulation, 100 seeded repetitions per row.
Check tables() {
  Check c;
  cli::RunConfig config;
  config.command = cli::Command::verify_tables;
  config.reps = 100;
  std::ostringstream out;
  std::ostringstream err;
  const int status = cli::run(config, out, err);
  c.require(status == cli::kExitOk, "verify-tables exit " + std::to_string(status));
  c.require(out.str().find("8/8 table rows pass") != std::string::npos, "not all rows pass");
  return c;
}

// 2. 16 inputs x 100 seeds.
Check identification() {
  Check c;
  int correct = 0;
  for (const auto& id : all_hyper_bell_ids()) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(id.index())));
      correct += protocol::run_hbsa(id, rng).identified == id ? 1 : 0;
    }
  }
  c.require(correct == 1600, std::to_string(correct) + "/1600 correct");
  c.detail = c.ok ? "1600/1600" : c.detail;
  return c;
}

// 3. Polarization untouched by the spatial stages, every input, every branch.
Check qnd() {
  Check c;
  const protocol::AnalyzerSetup setup;
  double worst = 0.0;
  for (const auto& id : all_hyper_bell_ids()) {
    const auto ideal = projector(bell_state(id.pol, setup.first, setup.second));
    std::set<std::string> branches;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      Rng rng(derive_seed(seed, 1000 + static_cast<std::uint64_t>(id.index())));
      const auto parity = protocol::spatial_parity_stage(protocol::prepare_hyper_bell(id), rng);
      const auto phase = protocol::spatial_phase_stage(parity.state, rng);
      branches.insert(phase.ports[0] + phase.ports[1]);
      for (const PureState* s : {&parity.state, &phase.state}) {
        const auto rho = reduced_density(*s, {setup.first.polarization, setup.second.polarization});
        worst = std::max(worst, trace_distance(rho, ideal));
      }
    }
    c.require(branches.size() == 2, id.name() + ": saw " + std::to_string(branches.size()) + " branches");
  }
  c.require(worst < 1e-10, "trace distance " + std::to_string(worst));
  if (c.ok) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "max trace distance %.1e", worst);
    c.detail = buf;
  }
  return c;
}

// 4. Closed forms at six reference operating points, two-digit figures.
Check golden() {
  Check c;
  struct Point {
    double g;  // units of kappa
    double ks;
    double F;
    double eta;
  };
  const Point points[] = {{0.5, 0.0, 0.86, 0.368}, {0.65, 0.3, 0.66, 0.007},
                          {2.4, 0.0, 1.00, 0.95},  {2.4 * 1.5, 0.5, 0.48, 0.151},
                          {1.0, 0.0, 0.97, 0.64},  {1.7, 0.7, 0.33, 0.085}};
  for (const auto& p : points) {
    const auto op = cavity::operating_point(cavity::CavityParams::canonical(p.g, p.ks));
    const fidelity::LossPoint loss{op.zeta, op.xi};
    const double f = fidelity::closed_form_fidelity(loss);
    const double eta = fidelity::closed_form_efficiency(loss);
    char buf[128];
    std::snprintf(buf, sizeof buf, "g=%.2f ks=%.1f: F=%.4f eta=%.4f", p.g, p.ks, f, eta);
    c.require(std::abs(f - p.F) <= 0.01 && std::abs(eta - p.eta) <= 0.01, buf);
  }
  return c;
}

// 5. Lossless limits.
Check ideal_limits() {
  Check c;
  c.require(std::abs(fidelity::closed_form_fidelity({1.0, 1.0}) - 1.0) < 1e-12, "closed-form F");
  c.require(std::abs(fidelity::closed_form_efficiency({1.0, 1.0}) - 1.0) < 1e-12, "closed-form eta");
  const auto r = fidelity::circuit_oracle({1.0, 1.0});
  c.require(std::abs(r.fidelity - 1.0) < 1e-10, "oracle F");
  c.require(std::abs(r.efficiency - 1.0) < 1e-10, "oracle eta");
  return c;
}

// 6. Circuit propagation against the closed forms.
Check oracle() {
  Check c;
  double worst = 0.0;
  int n = 0;
  for (double z : {0.15, 0.5, 0.85, 1.0}) {
    for (double x : {0.2, 0.55, 0.82, 1.0}) {
      const fidelity::LossPoint p{z, x};
      const auto r = fidelity::circuit_oracle(p);
      worst = std::max({worst, std::abs(r.fidelity - fidelity::closed_form_fidelity(p)),
                        std::abs(r.efficiency - fidelity::closed_form_efficiency(p))});
      ++n;
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d points, max deviation %.1e", n, worst);
  c.require(worst < 1e-6, buf);
  c.detail = buf;
  return c;
}

// 7. Both beam splitters on the four spatial Bell states.
Check beam_splitters() {
  Check c;
  const Photon a = Photon::make("A", "a");
  const Photon b = Photon::make("B", "b");
  const Photon c_out = Photon::make("A", "c");
  const Photon d_out = Photon::make("B", "d");
  const std::pair<BellId, BellId> rows[] = {
      {{Dof::spatial, K::phi, S::plus}, {Dof::spatial, K::phi, S::plus}},
      {{Dof::spatial, K::phi, S::minus}, {Dof::spatial, K::psi, S::plus}},
      {{Dof::spatial, K::psi, S::plus}, {Dof::spatial, K::phi, S::minus}},
      {{Dof::spatial, K::psi, S::minus}, {Dof::spatial, K::psi, S::minus}},
  };
  for (const auto& [in, out] : rows) {
    PureState s = bell_state(in, a, b);
    s = optics::apply_beam_splitter(s, a.spatial, {{"a1", "a2"}, {"c1", "c2"}});
    s = optics::apply_beam_splitter(s, b.spatial, {{"b1", "b2"}, {"d1", "d2"}});
    c.require(equal_up_to_global_phase(s, bell_state(out, c_out, d_out), 1e-10),
              in.name() + " -> " + out.name());
  }
  return c;
}

// 8. Swapping.
Check swapping_runs() {
  Check c;
  std::array<long, 16> counts{};
  int success = 0;
  for (int k = 0; k < 1000; ++k) {
    Rng rng(derive_seed(cli::kDefaultSeed, static_cast<std::uint64_t>(k)));
    const auto r = swapping::run_swap(rng);
    success += std::abs(r.fidelity - 1.0) < 1e-10 ? 1 : 0;
    ++counts[static_cast<std::size_t>(r.outcome.index())];
  }
  const auto u = swapping::outcome_uniformity(counts);
  Rng rng(cli::kDefaultSeed);
  const double purity = swapping::ad_spatial_purity(swapping::polarization_only_swap(rng).state);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d/1000 at target, chi2=%.2f p=%.3f, polarization-only spatial purity %.3f",
                success, u.chi_square, u.p_value, purity);
  c.require(success == 1000 && u.p_value > 0.01 && purity < 1.0 - 1e-6, buf);
  c.detail = buf;
  return c;
}

// 9. Unitarity, closed-form symmetry and bounds, g = 0 reflection identity.
Check properties() {
  Check c;
  std::vector<LinearMap> maps{cavity::scatter_ideal("p", "s"),
                              cavity::double_pass("p", "s"),
                              optics::beam_splitter("m"),
                              optics::hwp_z("p"),
                              optics::hwp_x("p"),
                              LinearMap({"s"}, gates::hadamard()),
                              conditioned(cavity::double_pass("p", "s"), "m", 2, 0)};
  for (const auto& id : all_hyper_bell_ids()) {
    for (const auto& m : swapping::correction_for(id).maps()) maps.push_back(m);
  }
  for (const auto& m : maps) c.require(m.is_unitary(1e-12), "non-unitary ideal map");

  const int n = 100;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double z = static_cast<double>(i) / (n - 1);
      const double x = static_cast<double>(j) / (n - 1);
      const double eta = fidelity::closed_form_efficiency({z, x});
      c.require(std::abs(eta - fidelity::closed_form_efficiency({x, z})) < 1e-12, "eta symmetry");
      c.require(eta >= 0.0 && eta <= 1.0 + 1e-12, "eta bounds");
      if (i == 0 && j == 0) continue;  // F undefined at the origin
      const double f = fidelity::closed_form_fidelity({z, x});
      c.require(std::abs(f - fidelity::closed_form_fidelity({x, z})) < 1e-12, "F symmetry");
      c.require(f >= 0.0 && f <= 1.0 + 1e-12, "F bounds");
    }
  }

  std::mt19937_64 gen(cli::kDefaultSeed);
  std::uniform_real_distribution<double> freq(-5.0, 5.0);
  std::uniform_real_distribution<double> rate(0.0, 5.0);
  for (int k = 0; k < 1000; ++k) {
    cavity::CavityParams p;
    p.omega = freq(gen);
    p.omega_c = freq(gen);
    p.omega_x = freq(gen);
    p.kappa = 0.01 + rate(gen);
    p.kappa_s = rate(gen);
    p.gamma = rate(gen);
    p.g = 0.0;
    c.require(std::abs(cavity::hot_reflection(p) - cavity::cold_reflection(p)) < 1e-12,
              "hot != cold at g = 0");
  }
  return c;
}

struct Criterion {
  int number;
  const char* name;
  double limit_seconds;  // 0: no limit
  std::function<Check()> body;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "table reproduction", 1.0, tables},
      {2, "complete identification", 10.0, identification},
      {3, "QND property", 0.0, qnd},
      {4, "closed-form golden values", 1.0, golden},
      {5, "ideal limits", 0.0, ideal_limits},
      {6, "oracle equivalence", 0.0, oracle},
      {7, "beam-splitter transformations", 0.0, beam_splitters},
      {8, "hyperentanglement swapping", 30.0, swapping_runs},
      {9, "property suites", 0.0, properties},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Check check;
    try {
      check = cr.body();
    } catch (const std::exception& e) {
      check.ok = false;
      check.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.limit_seconds > 0.0 && seconds >= cr.limit_seconds) {
      check.ok = false;
      check.detail += " (over time limit)";
    }
    failed += check.ok ? 0 : 1;
    std::printf("[%s] %d. %s (%.2fs)%s%s\n", check.ok ? "PASS" : "FAIL", cr.number, cr.name,
                seconds, check.detail.empty() ? "" : ": ", check.detail.c_str());
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
