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

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "vargibbs/cli.hpp"

namespace vargibbs::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_real(const std::string& token, const std::string& what) {
  double value = 0;
  const char* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw std::invalid_argument("malformed " + what + " '" + token + "'");
  }
  return value;
}

template <typename T>
T parse_integer(const std::string& token, const std::string& what) {
  T value{};
  const char* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc() || ptr != end) {
    throw std::invalid_argument("malformed " + what + " '" + token + "'");
  }
  return value;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

std::string real(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

}  // namespace

void validate(const RunConfig& c) {
  require(c.command == "evolve" || c.command == "partition" || c.command == "exact",
          "unknown command '" + c.command + "'");
  require(c.qubits >= 1 && c.qubits <= 8, "qubits must be in [1, 8]");
  require(std::isfinite(c.coupling) && c.coupling != 0.0, "coupling must be finite and nonzero");
  require(c.layers >= 1, "layers must be >= 1");
  require(c.dtau > 0.0 && std::isfinite(c.dtau), "dtau must be positive");
  require(c.steps >= 1, "steps must be >= 1");
  require(c.ridge >= 0.0 && std::isfinite(c.ridge), "ridge must be >= 0");
  require(c.method == "rfm" || c.method == "rom", "method must be rfm or rom");
  require(c.overlap_mode == "exact" || c.overlap_mode == "sampled", "overlap-mode must be exact or sampled");
  require(c.shots >= 1, "shots must be >= 1");
  require(c.taylor_order >= 1, "taylor-order must be >= 1");
  require(c.degeneracy == "swap" || c.degeneracy == "oracle", "degeneracy must be swap or oracle");
  require(!c.m || *c.m >= 1, "m must be >= 1");
  require(!c.e0 || std::isfinite(*c.e0), "e0 must be finite");
  require(!c.tau_inf_eps || *c.tau_inf_eps > 0.0, "tau-inf-eps must be positive");
  require(c.swap_shots >= 1, "swap-shots must be >= 1");
  require(c.threads >= 0, "threads must be >= 0");
  if (c.command == "partition" && c.method == "rom") {
    require(c.steps >= 2, "rom needs at least two steps");
  }
  if (c.command == "partition" && c.method == "rfm") {
    require(c.steps >= 2, "rfm needs at least two steps");
  }
  if (c.betas) parse_beta_grid(*c.betas);
}

std::vector<double> parse_beta_grid(const std::string& text) {
  const std::string t = trim(text);
  require(!t.empty(), "beta grid is empty");
  std::vector<double> betas;
  if (t.find(':') != std::string::npos) {
    const auto parts = split(t, ':');
    require(parts.size() == 3, "beta range must be start:stop:step");
    const double start = parse_real(parts[0], "beta");
    const double stop = parse_real(parts[1], "beta");
    const double step = parse_real(parts[2], "beta step");
    require(step > 0.0, "beta step must be positive");
    require(stop >= start, "beta range stop precedes start");
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    require(count <= 1000000, "beta range has too many points");
    for (long k = 0; k < count; ++k) betas.push_back(start + static_cast<double>(k) * step);
  } else {
    for (const auto& p : split(t, ',')) betas.push_back(parse_real(p, "beta"));
  }
  for (double b : betas) require(b >= 0.0, "beta values must be >= 0");
  return betas;
}

PauliSum resolve_hamiltonian(const RunConfig& c) {
  if (c.hamiltonian.empty()) return heisenberg_chain(c.qubits, c.coupling);
  std::error_code ec;
  if (std::filesystem::is_regular_file(c.hamiltonian, ec)) {
    try {
      return parse_pauli_sum(read_file(c.hamiltonian));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("Hamiltonian file '" + c.hamiltonian + "': " + e.what());
    }
  }
  try {
    return parse_pauli_sum(c.hamiltonian);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("Hamiltonian file '" + c.hamiltonian +
                                "' not found, and the value does not parse as Pauli-sum text (" + e.what() + ")");
  }
}

AnsatzCircuit resolve_ansatz(const RunConfig& c, int system_qubits) {
  std::optional<Eigen::VectorXd> theta0;
  if (!trim(c.theta0).empty()) {
    const auto parts = split(c.theta0, ',');
    Eigen::VectorXd t(static_cast<Eigen::Index>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) t[static_cast<Eigen::Index>(i)] = parse_real(parts[i], "theta0");
    theta0 = t;
  }
  AnsatzCircuit ansatz;
  if (!c.circuit.empty()) {
    ansatz = parse_circuit(read_file(c.circuit), theta0);
  } else {
    ansatz = build_default_ansatz(system_qubits, c.layers);
    if (theta0) {
      require(theta0->size() == ansatz.num_params,
              "theta0 has " + std::to_string(theta0->size()) + " entries, ansatz has " +
                  std::to_string(ansatz.num_params) + " parameters");
      ansatz.theta0 = *theta0;
    }
  }
  require(ansatz.num_qubits >= system_qubits, "circuit is narrower than the Hamiltonian");
  return ansatz;
}

std::string config_header(const RunConfig& c) {
  std::ostringstream h;
  auto line = [&h](const char* key, const std::string& value) { h << "# " << key << " = " << value << '\n'; };
  line("command", c.command);
  line("hamiltonian", c.hamiltonian.empty() ? "heisenberg" : c.hamiltonian);
  line("qubits", std::to_string(c.qubits));
  line("coupling", real(c.coupling));
  line("circuit", c.circuit.empty() ? "default" : c.circuit);
  line("theta0", c.theta0.empty() ? "zeros" : c.theta0);
  line("layers", std::to_string(c.layers));
  line("dtau", real(c.dtau));
  line("steps", std::to_string(c.steps));
  line("ridge", real(c.ridge));
  line("method", c.method);
  line("overlap_mode", c.overlap_mode);
  line("shots", std::to_string(c.shots));
  line("seed", std::to_string(c.seed));
  line("taylor_order", std::to_string(c.taylor_order));
  line("exact_init", c.exact_init ? "true" : "false");
  line("degeneracy", c.degeneracy);
  line("m", c.m ? std::to_string(*c.m) : "auto");
  line("e0", c.e0 ? real(*c.e0) : "auto");
  line("tau_inf_eps", c.tau_inf_eps ? real(*c.tau_inf_eps) : "auto");
  line("swap_shots", std::to_string(c.swap_shots));
  line("betas", c.betas ? *c.betas : "grid");
  line("oracle", c.oracle ? "true" : "false");
  line("out", c.out.empty() ? "stdout" : c.out);
  return h.str();
}

std::vector<RunConfig> expand_sweep(const RunConfig& base) {
  std::vector<RunConfig> runs{base};
  if (trim(base.sweep).empty()) return runs;
  for (const auto& clause : split(base.sweep, ';')) {
    if (clause.empty()) continue;
    const auto eq = clause.find('=');
    require(eq != std::string::npos, "sweep clause '" + clause + "' lacks '='");
    const std::string key = trim(std::string_view(clause).substr(0, eq));
    const auto values = split(std::string_view(clause).substr(eq + 1), ',');
    std::vector<RunConfig> next;
    for (const auto& r : runs) {
      for (const auto& v : values) {
        RunConfig c = r;
        if (key == "J") {
          require(base.hamiltonian.empty(), "sweeping J needs the built-in Heisenberg chain");
          c.coupling = parse_real(v, "J");
        } else if (key == "method") {
          c.method = v;
        } else if (key == "seed") {
          c.seed = parse_integer<std::uint64_t>(v, "seed");
        } else {
          throw std::invalid_argument("unknown sweep key '" + key + "' (expected J, method or seed)");
        }
        next.push_back(c);
      }
    }
    runs = std::move(next);
  }
  for (auto& r : runs) {
    r.sweep.clear();
    r.out = sweep_output_path(base.out, r);
  }
  return runs;
}

std::string sweep_output_path(const std::string& out, const RunConfig& run) {
  require(!out.empty(), "--sweep needs --out to name the per-run files");
  const std::filesystem::path p(out);
  std::ostringstream name;
  name << p.stem().string() << "_J" << run.coupling << '_' << (run.command == "partition" ? run.method : run.command)
       << "_seed" << run.seed << p.extension().string();
  return (p.parent_path() / name.str()).string();
}

}  // namespace vargibbs::cli
