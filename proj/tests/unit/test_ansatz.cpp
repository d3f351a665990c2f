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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "reference.hpp"
#include "vargibbs/ansatz.hpp"

using namespace vargibbs;

namespace {

using cd = std::complex<double>;

// Random circuit over H, CNOT, RY and CRY with one slot per rotation.
AnsatzCircuit random_circuit(int n, int gates, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 3), qubit(0, n - 1);
  AnsatzCircuit c;
  c.num_qubits = n;
  for (int g = 0; g < gates; ++g) {
    const int a = qubit(rng);
    int b = qubit(rng);
    if (b == a) b = (a + 1) % n;
    switch (kind(rng)) {
      case 0: c.gates.push_back(Gate::h(a)); break;
      case 1: c.gates.push_back(Gate::cnot(a, b)); break;
      case 2: c.gates.push_back(Gate::ry(a, c.num_params++)); break;
      default: c.gates.push_back(Gate::cry(a, b, c.num_params++)); break;
    }
  }
  c.theta0 = Eigen::VectorXd::Zero(c.num_params);
  c.validate();
  return c;
}

Eigen::VectorXcd finite_difference(const AnsatzCircuit& a, const Eigen::VectorXd& theta, int p, double eps) {
  Eigen::VectorXd up = theta, down = theta;
  up[p] += eps;
  down[p] -= eps;
  return (prepare_state(a, up).amplitudes() - prepare_state(a, down).amplitudes()) / (2 * eps);
}

}  // namespace

TEST(DefaultAnsatz, TwoPlusTwoPreparesMaximallyEntangledState) {
  const AnsatzCircuit a = build_default_ansatz(2, 1);
  EXPECT_EQ(a.num_qubits, 4);
  const ref::Vec v = prepare_state(a, a.theta0).amplitudes();
  EXPECT_LT((v - ref::bell(2)).norm(), 1e-12);
}

TEST(DefaultAnsatz, ParameterCountLinearInLayers) {
  for (int n = 1; n <= 4; ++n) {
    for (int layers = 1; layers <= 4; ++layers) {
      const AnsatzCircuit a = build_default_ansatz(n, layers);
      EXPECT_EQ(a.num_params, layers * (2 * n - 1));
      EXPECT_EQ(a.num_params, default_ansatz_num_params(n, layers));
    }
  }
  EXPECT_THROW(build_default_ansatz(2, 0), std::invalid_argument);
  EXPECT_THROW(build_default_ansatz(0, 1), std::invalid_argument);
}

TEST(DefaultAnsatz, SingleQubitIsBellPair) {
  const AnsatzCircuit a = build_default_ansatz(1, 1);
  EXPECT_EQ(a.num_qubits, 2);
  const StateVector s = prepare_state(a, a.theta0);
  EXPECT_NEAR(s[0].real(), M_SQRT1_2, 1e-14);
  EXPECT_NEAR(s[3].real(), M_SQRT1_2, 1e-14);
}

TEST(DefaultAnsatz, InitialFidelityUpToFourSystemQubits) {
  for (int n = 1; n <= 4; ++n) {
    const AnsatzCircuit a = build_default_ansatz(n, 2);
    EXPECT_NEAR(std::norm(ref::bell(n).dot(prepare_state(a, a.theta0).amplitudes())), 1.0, 1e-10) << n;
  }
}

TEST(PrepareState, RandomAnglesKeepUnitNorm) {
  std::mt19937_64 rng(1);
  const AnsatzCircuit a = build_default_ansatz(2, 3);
  for (int t = 0; t < 50; ++t) EXPECT_NEAR(prepare_state(a, ref::random_angles(a.num_params, rng)).norm(), 1.0, 1e-12);
  EXPECT_THROW(prepare_state(a, Eigen::VectorXd::Zero(a.num_params + 1)), std::invalid_argument);
}

TEST(PrepareState, ApplyInverseUndoesCircuit) {
  std::mt19937_64 rng(2);
  const AnsatzCircuit a = random_circuit(3, 12, rng);
  const Eigen::VectorXd theta = ref::random_angles(a.num_params, rng);
  const StateVector back = apply_inverse(a, theta, prepare_state(a, theta));
  EXPECT_NEAR(std::abs(back[0]), 1.0, 1e-12);
}

TEST(Derivative, RyDecomposition) {
  const auto terms = gate_derivative_decomposition(Gate::ry(1, 0));
  ASSERT_EQ(terms.size(), 1u);
  EXPECT_EQ(terms[0].coefficient, cd(0, -0.5));
  EXPECT_EQ(terms[0].insertion.kind, GateKind::PauliUnitary);
  EXPECT_EQ(terms[0].insertion.targets, std::vector<int>{1});
  EXPECT_EQ(terms[0].insertion.pauli->to_string(), "Y");
}

TEST(Derivative, CRyDecomposition) {
  const auto terms = gate_derivative_decomposition(Gate::cry(2, 0, 5));
  ASSERT_EQ(terms.size(), 2u);
  EXPECT_EQ(terms[0].coefficient, cd(0, -0.25));
  EXPECT_EQ(terms[0].insertion.pauli->to_string(), "IY");
  EXPECT_EQ(terms[1].coefficient, cd(0, 0.25));
  EXPECT_EQ(terms[1].insertion.pauli->to_string(), "ZY");
  EXPECT_EQ(terms[1].insertion.targets, (std::vector<int>{2, 0}));
  EXPECT_EQ(terms[1].param_index, 5);
}

TEST(Derivative, UnparameterizedGateRejected) {
  EXPECT_THROW(gate_derivative_decomposition(Gate::h(0)), std::invalid_argument);
  EXPECT_THROW(gate_derivative_decomposition(Gate::cnot(0, 1)), std::invalid_argument);
}

TEST(Derivative, SingleRyHasNormOneHalf) {
  const AnsatzCircuit a = parse_circuit("RY 0 0");
  for (double t : {0.0, 0.7, 2.0}) EXPECT_NEAR(derivative_state(a, Eigen::VectorXd::Constant(1, t), 0).norm(), 0.5, 1e-14);
}

TEST(Derivative, CRyIsSumOfInsertedBranches) {
  const AnsatzCircuit a = parse_circuit("H 0\nRY 1 0\nCRY 0 1 1\n");
  const Eigen::VectorXd theta = (Eigen::VectorXd(2) << 0.4, -1.1).finished();
  const ref::Vec before = ref::controlled(2, 0, 1, ref::ry(theta[1])) * ref::on_qubit(2, 1, ref::ry(theta[0])) *
                          ref::on_qubit(2, 0, ref::hadamard()) * ref::Vec::Unit(4, 0);
  const ref::Vec expected =
      cd(0, -0.25) * ref::pauli_word("IY") * before + cd(0, 0.25) * ref::pauli_word("ZY") * before;
  EXPECT_LT((derivative_state(a, theta, 1) - expected).norm(), 1e-14);
}

TEST(Derivative, MatchesCentralFiniteDifference) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const AnsatzCircuit a = trial % 2 ? random_circuit(3, 14, rng) : build_default_ansatz(2, 2);
    const Eigen::VectorXd theta = ref::random_angles(a.num_params, rng);
    const Eigen::MatrixXcd all = derivative_states(a, theta);
    const StateVector phi = prepare_state(a, theta);
    for (int p = 0; p < a.num_params; ++p) {
      const Eigen::VectorXcd d = derivative_state(a, theta, p);
      EXPECT_LT((d - finite_difference(a, theta, p, 1e-5)).norm(), 1e-6);
      EXPECT_LT((all.col(p) - d).norm(), 1e-13);
      EXPECT_NEAR(phi.amplitudes().dot(d).real(), 0.0, 1e-10);
    }
  }
}

TEST(CircuitText, ParsesAndRoundTrips) {
  const std::string text =
      "# Bell prefix then one layer\nQUBITS 4\nH 0\nH 1\nCNOT 0 2\nCNOT 1 3\nRY 0 0\nRY 1 1\nCRY 0 1 2\n";
  const AnsatzCircuit a = parse_circuit(text);
  EXPECT_EQ(a.num_qubits, 4);
  EXPECT_EQ(a.num_params, 3);
  EXPECT_LT((prepare_state(a, a.theta0).amplitudes() - ref::bell(2)).norm(), 1e-12);
  const AnsatzCircuit again = parse_circuit(circuit_to_text(a));
  EXPECT_EQ(again.num_qubits, a.num_qubits);
  ASSERT_EQ(again.gates.size(), a.gates.size());
  for (std::size_t g = 0; g < a.gates.size(); ++g) EXPECT_EQ(again.gates[g].to_string(), a.gates[g].to_string());
}

TEST(CircuitText, ExplicitThetaAndErrors) {
  const AnsatzCircuit a = parse_circuit("RY 0 0\nRY 1 1", Eigen::Vector2d(0.1, 0.2));
  EXPECT_EQ(a.num_qubits, 2);
  EXPECT_DOUBLE_EQ(a.theta0[1], 0.2);
  EXPECT_THROW(parse_circuit("RY 0 0", Eigen::Vector2d(0.1, 0.2)), std::invalid_argument);
  EXPECT_THROW(parse_circuit("RZ 0 0"), std::invalid_argument);
  EXPECT_THROW(parse_circuit("CNOT 0"), std::invalid_argument);
  EXPECT_THROW(parse_circuit("RY 0 1"), std::invalid_argument);
  EXPECT_THROW(parse_circuit("# nothing\n"), std::invalid_argument);
  EXPECT_THROW(parse_circuit("QUBITS 1\nCNOT 0 1"), std::invalid_argument);
}
