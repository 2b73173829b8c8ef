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

#include "hbsa/cli.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>

#include <CLI11.hpp>

#include "hbsa/bell.hpp"
#include "hbsa/protocol.hpp"
#include "hbsa/qd_cavity.hpp"
#include "hbsa/swapping.hpp"

namespace hbsa::cli {

namespace {

using cavity::SpinFlag;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string num(cplx z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

const char* parity_name(bool same) { return same ? "same" : "different"; }

int cmd_identify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  HyperBellId id;
  try {
    id = parse_hyper_bell(c.state);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (c.runs < 1) {
    err << "error: --runs must be positive\n";
    return kExitUsage;
  }
  int correct = 0;
  for (int k = 0; k < c.runs; ++k) {
    Rng rng(derive_seed(c.seed, static_cast<std::uint64_t>(k)));
    const auto r = protocol::run_hbsa(id, rng);
    const bool ok = r.identified == id;
    correct += ok ? 1 : 0;
    out << "run " << k << ": " << r.record.to_string() << " -> " << r.identified.name()
        << (ok ? "" : "  MISMATCH") << '\n';
  }
  out << correct << '/' << c.runs << " identified as " << id.name() << '\n';
  return correct == c.runs ? kExitOk : kExitVerificationFailed;
}

struct RowCheck {
  int passed = 0;
  std::set<std::string> branches;
  bool ok(int reps, const std::set<std::string>& expected) const {
    return passed == reps && branches == expected;
  }
};

std::string phase_branch(SpinFlag qd2, SpinFlag qd3, const std::string& c, const std::string& d) {
  return std::string(cavity::to_string(qd2)) + "/" + cavity::to_string(qd3) + " " + c + d;
}

// One reps-long batch per table row. The other degree of freedom cycles
// through all four Bell states so every combination is exercised.
int cmd_verify_tables(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.reps < 2) {
    err << "error: --reps must be at least 2\n";
    return kExitUsage;
  }
  const protocol::AnalyzerSetup setup;
  int rows_ok = 0;
  std::uint64_t stream = 0;

  out << "Spatial-mode table\n";
  for (int s = 0; s < 4; ++s) {
    const BellId spat = BellId::from_index(Dof::spatial, s);
    RowCheck row;
    for (int k = 0; k < c.reps; ++k) {
      const BellId pol = BellId::from_index(Dof::polarization, k % 4);
      const HyperBellId id{pol, spat};
      Rng rng(derive_seed(c.seed, stream++));
      const auto rec = protocol::run_hbsa(id, rng).record;
      const bool qd1_ok = (rec.qd1 == SpinFlag::changed) == spat.even_parity();
      const bool plus_class = rec.qd2 != rec.qd3;
      const bool class_ok = plus_class == (spat.sign == BellSign::plus);
      const bool decoded = protocol::decode_spatial(rec.qd1, rec.qd2, rec.qd3) == spat;
      if (qd1_ok && class_ok && decoded && rec.ports_consistent(setup)) ++row.passed;
      row.branches.insert(phase_branch(rec.qd2, rec.qd3, rec.ports[0], rec.ports[1]));
    }
    // "+" class: one flip, photons leave through (c1,d1) or (c2,d2).
    // "-" class: both or neither flip, ports (c1,d2) or (c2,d1).
    const auto& co = setup.first_out;
    const auto& dout = setup.second_out;
    const std::set<std::string> expected =
        spat.sign == BellSign::plus
            ? std::set<std::string>{phase_branch(SpinFlag::changed, SpinFlag::unchanged, co[0], dout[0]),
                                    phase_branch(SpinFlag::unchanged, SpinFlag::changed, co[1], dout[1])}
            : std::set<std::string>{phase_branch(SpinFlag::changed, SpinFlag::changed, co[0], dout[1]),
                                    phase_branch(SpinFlag::unchanged, SpinFlag::unchanged, co[1], dout[0])};
    const bool ok = row.ok(c.reps, expected);
    rows_ok += ok ? 1 : 0;
    out << "  " << spat.name() << ": " << (ok ? "PASS" : "FAIL") << " (" << row.passed << '/'
        << c.reps << " consistent; branches:";
    for (const auto& b : row.branches) out << " [" << b << "]";
    out << ")\n";
  }

  out << "Polarization table\n";
  for (int p = 0; p < 4; ++p) {
    const BellId pol = BellId::from_index(Dof::polarization, p);
    // phi+ and psi- give different clicks, phi- and psi+ the same.
    const bool same_clicks = (pol.kind == BellKind::phi) == (pol.sign == BellSign::minus);
    RowCheck row;
    for (int k = 0; k < c.reps; ++k) {
      const BellId spat = BellId::from_index(Dof::spatial, k % 4);
      const HyperBellId id{pol, spat};
      Rng rng(derive_seed(c.seed, stream++));
      const auto rec = protocol::run_hbsa(id, rng).record;
      const bool qd4_ok = (rec.qd4 == SpinFlag::changed) == pol.even_parity();
      const bool clicks_ok = (rec.clicks[0] == rec.clicks[1]) == same_clicks;
      const bool decoded = protocol::decode_polarization(rec.qd4, rec.clicks) == pol;
      if (qd4_ok && clicks_ok && decoded) ++row.passed;
      row.branches.insert(std::string(optics::to_string(rec.clicks[0])) +
                          optics::to_string(rec.clicks[1]));
    }
    const bool ok = row.ok(c.reps, same_clicks ? std::set<std::string>{"HH", "VV"}
                                               : std::set<std::string>{"HV", "VH"});
    rows_ok += ok ? 1 : 0;
    out << "  " << pol.name() << ": " << (ok ? "PASS" : "FAIL") << " (" << row.passed << '/'
        << c.reps << " consistent; qd4 " << (pol.even_parity() ? "changed" : "unchanged")
        << ", clicks " << parity_name(same_clicks) << ":";
    for (const auto& b : row.branches) out << ' ' << b;
    out << ")\n";
  }

  out << rows_ok << "/8 table rows pass\n";
  return rows_ok == 8 ? kExitOk : kExitVerificationFailed;
}

int cmd_operating_point(const RunConfig& c, std::ostream& out, std::ostream& err) {
  cavity::ReflectionPoint p;
  try {
    p = cavity::operating_point(cavity::CavityParams::from_sweep_axes(c.g, c.ks, c.gamma));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  out << "r0      = " << num(p.r_cold) << '\n'
      << "rh      = " << num(p.r_hot) << '\n'
      << "zeta    = " << num(p.zeta) << '\n'
      << "xi      = " << num(p.xi) << '\n'
      << "phi0    = " << num(p.phi0) << '\n'
      << "phih    = " << num(p.phih) << '\n'
      << "dphi    = " << num(p.dphi) << '\n'
      << "theta_F = " << num(p.faraday) << '\n';
  return kExitOk;
}

int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::vector<fidelity::SweepRow> rows;
  try {
    rows = fidelity::sweep(c.sweep, c.jobs);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  fidelity::write_sweep_csv(out, rows);
  return kExitOk;
}

int cmd_swap(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.runs < 1) {
    err << "error: --runs must be positive\n";
    return kExitUsage;
  }
  const auto n = static_cast<std::size_t>(c.runs);
  std::vector<swapping::SwapResult> results(n);
  auto one = [&](std::size_t k) {
    Rng rng(derive_seed(c.seed, k));
    results[k] = swapping::run_swap(rng);
  };
  const unsigned workers = std::max(1u, c.jobs);
  if (workers == 1) {
    for (std::size_t k = 0; k < n; ++k) one(k);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t k = w; k < n; k += workers) one(k);
      });
    }
  }

  std::array<long, 16> counts{};
  long success = 0;
  for (const auto& r : results) {
    ++counts[static_cast<std::size_t>(r.outcome.index())];
    if (r.fidelity >= 1.0 - 1e-10) ++success;
  }
  out << "success " << success << '/' << c.runs << " (final AD state phi+,phi+)\n";
  out << "BC outcome histogram\n";
  for (int i = 0; i < 16; ++i) {
    const auto id = HyperBellId::from_index(i);
    out << "  " << id.name() << ' ' << counts[static_cast<std::size_t>(i)] << "  correction "
        << swapping::correction_for(id).to_string() << '\n';
  }
  const auto u = swapping::outcome_uniformity(counts);
  out << "chi2 = " << num(u.chi_square) << " (15 dof), p = " << num(u.p_value) << '\n';
  return success == c.runs ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  switch (config.command) {
    case Command::identify:
      return cmd_identify(config, out, err);
    case Command::verify_tables:
      return cmd_verify_tables(config, out, err);
    case Command::operating_point:
      return cmd_operating_point(config, out, err);
    case Command::sweep:
      return cmd_sweep(config, out, err);
    case Command::swap:
      return cmd_swap(config, out, err);
  }
  return kExitUsage;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  std::string output;

  CLI::App app{"Hyperentangled Bell-state analysis simulator", "hbsa"};
  app.require_subcommand(1);
  app.add_option("--seed", config.seed, "base RNG seed")
      ->envname(kSeedEnvVar)
      ->capture_default_str();
  app.add_option("-o,--output", output, "write results to this file instead of stdout");

  auto* identify = app.add_subcommand("identify", "run the analyzer on one hyperentangled state");
  identify->add_option("--state", config.state, "<pol>,<spatial>, e.g. psi-,phi+")
      ->capture_default_str();
  identify->add_option("--runs", config.runs)->capture_default_str();

  auto* verify = app.add_subcommand("verify-tables", "re-derive the decode tables by simulation");
  verify->add_option("--reps", config.reps, "repetitions per row")->capture_default_str();

  auto* point = app.add_subcommand("operating-point", "reflection coefficients at one point");
  point->add_option("--g", config.g, "coupling in units of kappa + kappa_s")->capture_default_str();
  point->add_option("--ks", config.ks, "side leakage in units of kappa")->capture_default_str();
  point->add_option("--gamma", config.gamma, "X- decay in units of kappa")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "fidelity/efficiency grid as CSV");
  auto& sc = config.sweep;
  sweep->add_option("--g-min", sc.g_over_ktot.min)->capture_default_str();
  sweep->add_option("--g-max", sc.g_over_ktot.max)->capture_default_str();
  sweep->add_option("--g-points", sc.g_over_ktot.points)->capture_default_str();
  sweep->add_option("--ks-min", sc.ks_over_k.min)->capture_default_str();
  sweep->add_option("--ks-max", sc.ks_over_k.max)->capture_default_str();
  sweep->add_option("--ks-points", sc.ks_over_k.points)->capture_default_str();
  sweep->add_option("--gamma", sc.gamma)->capture_default_str();
  sweep->add_option("--jobs", config.jobs)->capture_default_str();

  auto* swap = app.add_subcommand("swap", "hyperentanglement swapping Monte-Carlo");
  swap->add_option("--runs", config.runs)->capture_default_str();
  swap->add_option("--jobs", config.jobs)->capture_default_str();

  for (auto* sub : {identify, verify, point, sweep, swap}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << "run with --help for usage\n";
    return kExitUsage;
  }

  if (identify->parsed()) config.command = Command::identify;
  if (verify->parsed()) config.command = Command::verify_tables;
  if (point->parsed()) config.command = Command::operating_point;
  if (sweep->parsed()) config.command = Command::sweep;
  if (swap->parsed()) config.command = Command::swap;

  if (output.empty()) return run(config, out, err);
  std::ofstream file(output);
  if (!file) {
    err << "error: cannot open output file '" << output << "'\n";
    return kExitUsage;
  }
  const int status = run(config, file, err);
  file.close();
  if (!file) {
    err << "error: failed writing '" << output << "'\n";
    return kExitUsage;
  }
  return status;
}

}  // namespace hbsa::cli
