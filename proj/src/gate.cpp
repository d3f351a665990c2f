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

#include "vargibbs/gate.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace vargibbs {

Gate Gate::h(int qubit) { return Gate{GateKind::H, {qubit}, std::nullopt, std::nullopt}; }

Gate Gate::cnot(int control, int target) {
  return Gate{GateKind::CNOT, {control, target}, std::nullopt, std::nullopt};
}

Gate Gate::ry(int qubit, int slot) { return Gate{GateKind::RY, {qubit}, slot, std::nullopt}; }

Gate Gate::cry(int control, int target, int slot) {
  return Gate{GateKind::CRY, {control, target}, slot, std::nullopt};
}

Gate Gate::pauli_unitary(std::vector<int> targets, PauliString payload) {
  return Gate{GateKind::PauliUnitary, std::move(targets), std::nullopt, std::move(payload)};
}

void Gate::validate(int num_qubits) const {
  std::size_t arity = 0;
  switch (kind) {
    case GateKind::H:
    case GateKind::RY: arity = 1; break;
    case GateKind::CNOT:
    case GateKind::CRY: arity = 2; break;
    case GateKind::PauliUnitary:
      if (!pauli) throw std::invalid_argument("Pauli unitary gate without payload");
      arity = static_cast<std::size_t>(pauli->num_qubits());
      if (arity == 0) throw std::invalid_argument("Pauli unitary gate with empty payload");
      break;
  }
  if (targets.size() != arity) {
    throw std::invalid_argument("gate " + to_string() + " expects " + std::to_string(arity) +
                                " target(s)");
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= num_qubits) {
      throw std::invalid_argument("gate " + to_string() + ": target " + std::to_string(targets[i]) +
                                  " out of range for " + std::to_string(num_qubits) + " qubits");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (targets[i] == targets[j]) {
        throw std::invalid_argument("gate " + to_string() + ": repeated target");
      }
    }
  }
  if (parameterized() != param_index.has_value()) {
    throw std::invalid_argument("gate " + to_string() + ": parameter slot mismatch");
  }
  if (param_index && *param_index < 0) throw std::invalid_argument("negative parameter slot");
}

PauliString Gate::register_pauli(int num_qubits) const {
  if (kind != GateKind::PauliUnitary || !pauli) {
    throw std::invalid_argument("gate carries no Pauli payload");
  }
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const std::uint64_t bit = 1ULL << (num_qubits - 1 - targets[i]);
    const char c = pauli->letter(static_cast<int>(i));
    if (c == 'X' || c == 'Y') x |= bit;
    if (c == 'Z' || c == 'Y') z |= bit;
  }
  return PauliString(num_qubits, x, z);
}

std::string Gate::to_string() const {
  std::ostringstream out;
  switch (kind) {
    case GateKind::H: out << "H"; break;
    case GateKind::CNOT: out << "CNOT"; break;
    case GateKind::RY: out << "RY"; break;
    case GateKind::CRY: out << "CRY"; break;
    case GateKind::PauliUnitary: out << "PAULI " << (pauli ? pauli->to_string() : "?"); break;
  }
  for (int t : targets) out << ' ' << t;
  if (param_index) out << " #" << *param_index;
  return out.str();
}

}  // namespace vargibbs
