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

#include "vargibbs/ansatz.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace vargibbs {

namespace {

void check_theta(const AnsatzCircuit& ansatz, const Eigen::VectorXd& theta) {
  if (theta.size() != ansatz.num_params) {
    throw std::invalid_argument("parameter vector has length " + std::to_string(theta.size()) + ", expected " +
                                std::to_string(ansatz.num_params));
  }
}

std::optional<double> angle_for(const Gate& g, const Eigen::VectorXd& theta) {
  if (!g.param_index) return std::nullopt;
  return theta[*g.param_index];
}

Eigen::VectorXcd zero_state(int n) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
  v[0] = 1.0;
  return v;
}

}  // namespace

void AnsatzCircuit::validate() const {
  StateVector::check_size(num_qubits);
  if (num_params < 0) throw std::invalid_argument("negative parameter count");
  std::vector<int> uses(num_params, 0);
  for (const auto& g : gates) {
    g.validate(num_qubits);
    if (g.param_index) {
      if (*g.param_index >= num_params) {
        throw std::invalid_argument("parameter slot " + std::to_string(*g.param_index) + " out of range");
      }
      ++uses[*g.param_index];
    }
  }
  for (int p = 0; p < num_params; ++p) {
    if (uses[p] != 1) {
      throw std::invalid_argument("parameter slot " + std::to_string(p) + " used " + std::to_string(uses[p]) +
                                  " times; each slot must be used exactly once");
    }
  }
  if (theta0.size() != num_params) throw std::invalid_argument("theta0 length does not match parameter count");
}

std::size_t AnsatzCircuit::gate_of_param(int p) const {
  if (p < 0 || p >= num_params) throw std::out_of_range("parameter index " + std::to_string(p) + " out of range");
  for (std::size_t i = 0; i < gates.size(); ++i) {
    if (gates[i].param_index == p) return i;
  }
  throw std::logic_error("parameter slot without gate");
}

int default_ansatz_num_params(int system_qubits, int layers) { return layers * (2 * system_qubits - 1); }

AnsatzCircuit build_default_ansatz(int system_qubits, int layers) {
  if (system_qubits < 1 || 2 * system_qubits > kMaxQubits) {
    throw std::invalid_argument("system qubit count must be in [1, " + std::to_string(kMaxQubits / 2) + "]");
  }
  if (layers < 1) throw std::invalid_argument("ansatz needs at least one layer");
  const int n = system_qubits;
  AnsatzCircuit c;
  c.num_qubits = 2 * n;
  for (int i = 0; i < n; ++i) c.gates.push_back(Gate::h(i));
  int slot = 0;
  for (int l = 0; l < layers; ++l) {
    for (int i = 0; i < n; ++i) c.gates.push_back(Gate::ry(i, slot++));
    for (int i = 0; i + 1 < n; ++i) c.gates.push_back(Gate::cry(i, i + 1, slot++));
  }
  for (int i = 0; i < n; ++i) c.gates.push_back(Gate::cnot(i, n + i));
  for (int base : {0, n}) {
    for (int k = 0; k + 1 < n; k += 2) {
      c.gates.push_back(Gate::h(base + k));
      c.gates.push_back(Gate::cnot(base + k, base + k + 1));
    }
  }
  c.num_params = slot;
  c.theta0 = Eigen::VectorXd::Zero(slot);
  c.validate();
  return c;
}

AnsatzCircuit parse_circuit(std::string_view text, std::optional<Eigen::VectorXd> theta0) {
  AnsatzCircuit c;
  std::optional<int> declared;
  int max_qubit = -1;
  int max_slot = -1;
  std::istringstream lines{std::string(text)};
  std::string line;
  int lineno = 0;
  auto read_int = [&](std::istringstream& in, const char* what) {
    int v = 0;
    if (!(in >> v)) {
      throw std::invalid_argument("circuit line " + std::to_string(lineno) + ": expected " + what);
    }
    return v;
  };
  while (std::getline(lines, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream in(line);
    std::string op;
    if (!(in >> op)) continue;
    std::transform(op.begin(), op.end(), op.begin(), [](unsigned char ch) { return std::toupper(ch); });
    Gate g;
    if (op == "QUBITS") {
      declared = read_int(in, "qubit count");
    } else if (op == "H") {
      g = Gate::h(read_int(in, "qubit"));
    } else if (op == "CNOT") {
      const int a = read_int(in, "control");
      g = Gate::cnot(a, read_int(in, "target"));
    } else if (op == "RY") {
      const int q = read_int(in, "qubit");
      g = Gate::ry(q, read_int(in, "parameter slot"));
    } else if (op == "CRY") {
      const int a = read_int(in, "control");
      const int b = read_int(in, "target");
      g = Gate::cry(a, b, read_int(in, "parameter slot"));
    } else {
      throw std::invalid_argument("circuit line " + std::to_string(lineno) + ": unknown gate '" + op + "'");
    }
    std::string extra;
    if (in >> extra) {
      throw std::invalid_argument("circuit line " + std::to_string(lineno) + ": unexpected '" + extra + "'");
    }
    if (op == "QUBITS") continue;
    for (int t : g.targets) max_qubit = std::max(max_qubit, t);
    if (g.param_index) max_slot = std::max(max_slot, *g.param_index);
    c.gates.push_back(std::move(g));
  }
  if (c.gates.empty()) throw std::invalid_argument("circuit description has no gates");
  c.num_qubits = declared.value_or(max_qubit + 1);
  c.num_params = max_slot + 1;
  c.theta0 = theta0.value_or(Eigen::VectorXd::Zero(c.num_params));
  c.validate();
  return c;
}

std::string circuit_to_text(const AnsatzCircuit& ansatz) {
  std::ostringstream out;
  out << "QUBITS " << ansatz.num_qubits << '\n';
  for (const auto& g : ansatz.gates) {
    switch (g.kind) {
      case GateKind::H: out << "H " << g.targets[0]; break;
      case GateKind::CNOT: out << "CNOT " << g.targets[0] << ' ' << g.targets[1]; break;
      case GateKind::RY: out << "RY " << g.targets[0] << ' ' << *g.param_index; break;
      case GateKind::CRY: out << "CRY " << g.targets[0] << ' ' << g.targets[1] << ' ' << *g.param_index; break;
      case GateKind::PauliUnitary: throw std::invalid_argument("Pauli insertions have no circuit-file form");
    }
    out << '\n';
  }
  return out.str();
}

StateVector prepare_state(const AnsatzCircuit& ansatz, const Eigen::VectorXd& theta) {
  check_theta(ansatz, theta);
  Eigen::VectorXcd v = zero_state(ansatz.num_qubits);
  for (const auto& g : ansatz.gates) apply_gate_inplace(v, ansatz.num_qubits, g, angle_for(g, theta));
  return StateVector::from_amplitudes(ansatz.num_qubits, std::move(v), false, 1e-9);
}

StateVector apply_inverse(const AnsatzCircuit& ansatz, const Eigen::VectorXd& theta, const StateVector& state) {
  check_theta(ansatz, theta);
  if (state.num_qubits() != ansatz.num_qubits) throw std::invalid_argument("state width does not match circuit");
  Eigen::VectorXcd v = state.amplitudes();
  // H, CNOT and Pauli unitaries are self-inverse; RY(t)^-1 = RY(-t).
  for (auto it = ansatz.gates.rbegin(); it != ansatz.gates.rend(); ++it) {
    auto angle = angle_for(*it, theta);
    if (angle) *angle = -*angle;
    apply_gate_inplace(v, ansatz.num_qubits, *it, angle);
  }
  return StateVector::from_amplitudes(ansatz.num_qubits, std::move(v), false, 1e-9);
}

std::vector<DerivativeTerm> gate_derivative_decomposition(const Gate& gate) {
  using namespace std::complex_literals;
  switch (gate.kind) {
    case GateKind::RY:
      return {{-0.5i, Gate::pauli_unitary({gate.targets[0]}, PauliString::from_letters("Y")), *gate.param_index}};
    case GateKind::CRY:
      return {
          {-0.25i, Gate::pauli_unitary({gate.targets[0], gate.targets[1]}, PauliString::from_letters("IY")),
           *gate.param_index},
          {0.25i, Gate::pauli_unitary({gate.targets[0], gate.targets[1]}, PauliString::from_letters("ZY")),
           *gate.param_index},
      };
    default:
      throw std::invalid_argument("gate " + gate.to_string() + " has no parameter to differentiate");
  }
}

Eigen::VectorXcd derivative_state(const AnsatzCircuit& ansatz, const Eigen::VectorXd& theta, int p) {
  check_theta(ansatz, theta);
  const std::size_t pos = ansatz.gate_of_param(p);
  const int n = ansatz.num_qubits;
  Eigen::VectorXcd prefix = zero_state(n);
  for (std::size_t i = 0; i <= pos; ++i) apply_gate_inplace(prefix, n, ansatz.gates[i], angle_for(ansatz.gates[i], theta));
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(prefix.size());
  for (const auto& term : gate_derivative_decomposition(ansatz.gates[pos])) {
    Eigen::VectorXcd branch = prefix;
    apply_gate_inplace(branch, n, term.insertion);
    for (std::size_t i = pos + 1; i < ansatz.gates.size(); ++i) {
      apply_gate_inplace(branch, n, ansatz.gates[i], angle_for(ansatz.gates[i], theta));
    }
    out += term.coefficient * branch;
  }
  return out;
}

Eigen::MatrixXcd derivative_states(const AnsatzCircuit& ansatz, const Eigen::VectorXd& theta) {
  check_theta(ansatz, theta);
  const int n = ansatz.num_qubits;
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, ansatz.num_params);
  // Sweep forward once; each rotation spawns its derivative branch, and every
  // live branch receives the gates that follow.
  Eigen::VectorXcd state = zero_state(n);
  std::vector<int> live;
  for (const auto& g : ansatz.gates) {
    const auto angle = angle_for(g, theta);
    apply_gate_inplace(state, n, g, angle);
    for (int p : live) {
      auto col = out.col(p);
      apply_gate_inplace(col, n, g, angle);
    }
    if (g.param_index) {
      const int p = *g.param_index;
      for (const auto& term : gate_derivative_decomposition(g)) {
        Eigen::VectorXcd branch = state;
        apply_gate_inplace(branch, n, term.insertion);
        out.col(p) += term.coefficient * branch;
      }
      live.push_back(p);
    }
  }
  return out;
}

}  // namespace vargibbs
