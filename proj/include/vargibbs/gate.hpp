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

#include <optional>
#include <string>
#include <vector>

#include "vargibbs/pauli.hpp"

namespace vargibbs {

enum class GateKind { H, CNOT, RY, CRY, PauliUnitary };

/// One gate of a circuit. Rotation gates refer to their angle through
/// `param_index`, a slot into the parameter vector of the owning circuit.
/// For CNOT and CRY, targets are (control, target).
struct Gate {
  GateKind kind = GateKind::H;
  std::vector<int> targets;
  std::optional<int> param_index;
  /// Letter i acts on targets[i]. Only for PauliUnitary.
  std::optional<PauliString> pauli;

  static Gate h(int qubit);
  static Gate cnot(int control, int target);
  static Gate ry(int qubit, int slot);
  static Gate cry(int control, int target, int slot);
  static Gate pauli_unitary(std::vector<int> targets, PauliString payload);

  bool parameterized() const { return kind == GateKind::RY || kind == GateKind::CRY; }

  /// Throws std::invalid_argument unless the gate is well formed on a
  /// register of `num_qubits` qubits.
  void validate(int num_qubits) const;

  /// The payload of a PauliUnitary gate lifted to the full register.
  PauliString register_pauli(int num_qubits) const;

  std::string to_string() const;
};

}  // namespace vargibbs
