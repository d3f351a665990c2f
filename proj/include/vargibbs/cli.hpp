// Copyright 2026 The vargibbs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vargibbs/ansatz.hpp"
#include "vargibbs/hamiltonian.hpp"

namespace vargibbs::cli {

enum ExitCode : int { kSuccess = 0, kConfigError = 2, kNumericalError = 3 };

struct RunConfig {
  std::string command;  // evolve | partition | exact

  // Hamiltonian: Pauli-sum text or a path to a file holding it. Empty selects
  // the open Heisenberg chain below.
  std::string hamiltonian;
  int qubits = 2;
  double coupling = 1.0;

  // Ansatz: a circuit file, or the default circuit with `layers` blocks.
  std::string circuit;
  std::string theta0;  // comma-separated; zeros when empty
  int layers = kDefaultLayers;

  double dtau = 0.025;
  int steps = 200;
  double ridge = 1e-6;

  std::string method = "rfm";  // rfm | rom
  std::string overlap_mode = "exact";
  std::uint64_t shots = 10000;
  std::uint64_t seed = 0;
  int taylor_order = 4;
  bool exact_init = false;

  std::string degeneracy = "swap";  // swap | oracle
  std::optional<int> m;
  std::optional<double> e0;
  std::optional<double> tau_inf_eps;
  std::uint64_t swap_shots = 100000;

  /// "b0,b1,..." or "start:stop:step"; unset selects the 2 n dtau grid.
  std::optional<std::string> betas;
  bool oracle = false;

  std::string sweep;
  int threads = 0;
  std::string out;
};

/// Range and enum checks on every field; throws std::invalid_argument.
void validate(const RunConfig& config);

/// Parses "a,b,c" or "start:stop:step" (inclusive of stop up to rounding).
std::vector<double> parse_beta_grid(const std::string& text);

/// Reads the Hamiltonian from file or inline text; builds the Heisenberg
/// chain when no Hamiltonian is given.
PauliSum resolve_hamiltonian(const RunConfig& config);

AnsatzCircuit resolve_ansatz(const RunConfig& config, int system_qubits);

/// '#'-prefixed "key = value" lines for every field, floats at 17 digits.
std::string config_header(const RunConfig& config);

/// "J=1,-1;method=rfm,rom;seed=1,2" expanded as a Cartesian product.
std::vector<RunConfig> expand_sweep(const RunConfig& base);

/// Output path of one sweep run: "<stem>_J<J>_<method>_seed<seed><ext>".
std::string sweep_output_path(const std::string& out, const RunConfig& run);

// Each command writes its CSV to `out` and diagnostics to `log`, returning an
// exit code. Errors propagate as exceptions.
int cmd_evolve(const RunConfig& config, std::ostream& out, std::ostream& log);
int cmd_partition(const RunConfig& config, std::ostream& out, std::ostream& log);
int cmd_exact(const RunConfig& config, std::ostream& out, std::ostream& log);

/// Runs one configuration, opening `config.out` when set, and maps
/// exceptions to exit codes.
int run(const RunConfig& config, std::ostream& stdout_stream, std::ostream& log);

/// Full command line: parsing, optional config file, sweeps.
int main(int argc, const char* const* argv, std::ostream& stdout_stream, std::ostream& log);

}  // namespace vargibbs::cli
