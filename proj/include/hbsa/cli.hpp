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

// Command-line front end. Exit status: 0 success, 1 verification failure,
// 2 usage error.

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hbsa/fidelity.hpp"

namespace hbsa::cli {

inline constexpr std::uint64_t kDefaultSeed = 20121029;
inline constexpr const char* kSeedEnvVar = "HBSA_SEED";

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

enum class Command { identify, verify_tables, operating_point, sweep, swap };

struct RunConfig {
  Command command = Command::identify;
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::string> output;

  std::string state = "phi+,phi+";  // identify
  int runs = 1;                     // identify, swap
  int reps = 100;                   // verify-tables, per table row
  double g = 0.5;                   // operating-point, units of (kappa + kappa_s)
  double ks = 0.0;                  // operating-point, units of kappa
  double gamma = 0.1;               // operating-point, units of kappa
  fidelity::SweepConfig sweep;
  unsigned jobs = 1;                // sweep, swap
};

/// Executes one command, writing results to `out` and diagnostics to `err`.
/// `config.output` is ignored here; see main_entry.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (honoring HBSA_SEED), runs, and routes output to --output
/// when given.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hbsa::cli
