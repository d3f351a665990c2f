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

#include <cmath>
#include <random>

#include "reference.hpp"
#include "vargibbs/statevector.hpp"

using namespace vargibbs;

namespace {

StateVector from(const ref::Vec& v, int n) { return StateVector::from_amplitudes(n, v); }

}  // namespace

TEST(ApplyGate, RyPiFlipsZero) {
  const StateVector out = apply_gate(StateVector(1), Gate::ry(0, 0), M_PI);
  EXPECT_NEAR(std::abs(out[0]), 0.0, 1e-15);
  EXPECT_NEAR(out[1].real(), 1.0, 1e-15);
}

TEST(ApplyGate, HadamardOnZero) {
  const StateVector out = apply_gate(StateVector(1), Gate::h(0));
  EXPECT_NEAR(out[0].real(), M_SQRT1_2, 1e-15);
  EXPECT_NEAR(out[1].real(), M_SQRT1_2, 1e-15);
}

TEST(ApplyGate, BellPair) {
  const StateVector out = apply_gate(apply_gate(StateVector(2), Gate::h(0)), Gate::cnot(0, 1));
  EXPECT_NEAR(out[0].real(), M_SQRT1_2, 1e-15);
  EXPECT_NEAR(out[3].real(), M_SQRT1_2, 1e-15);
  EXPECT_NEAR(std::abs(out[1]) + std::abs(out[2]), 0.0, 1e-15);
}

TEST(ApplyGate, AngleContract) {
  EXPECT_THROW(apply_gate(StateVector(1), Gate::ry(0, 0)), std::invalid_argument);
  EXPECT_THROW(apply_gate(StateVector(1), Gate::h(0), 0.3), std::invalid_argument);
}

TEST(ApplyGate, MatchesKroneckerMatricesAndPreservesNorm) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  const int n = 4;
  for (int trial = 0; trial < 50; ++trial) {
    const ref::Vec psi = ref::random_state(n, rng);
    const double t = angle(rng);
    const int a = trial % n, b = (trial + 1 + trial / n) % n == a ? (a + 1) % n : (trial + 1 + trial / n) % n;
    const std::vector<std::pair<Gate, ref::Mat>> cases = {
        {Gate::h(a), ref::on_qubit(n, a, ref::hadamard())},
        {Gate::ry(a, 0), ref::on_qubit(n, a, ref::ry(t))},
        {Gate::cnot(a, b), ref::controlled(n, a, b, ref::pauli('X'))},
        {Gate::cry(a, b, 0), ref::controlled(n, a, b, ref::ry(t))},
    };
    for (const auto& [gate, matrix] : cases) {
      const auto angle_arg = gate.parameterized() ? std::optional<double>(t) : std::nullopt;
      const StateVector out = apply_gate(from(psi, n), gate, angle_arg);
      EXPECT_LT((out.amplitudes() - matrix * psi).norm(), 1e-12) << gate.to_string();
      EXPECT_NEAR(out.norm(), 1.0, 1e-12);
    }
  }
}

TEST(ApplyGate, SinglePrecisionScalar) {
  using StateF = BasicStateVector<float>;
  const StateF out = apply_gate(apply_gate(StateF(2), Gate::h(0)), Gate::cnot(0, 1));
  EXPECT_NEAR(out[3].real(), 0.70710678f, 1e-6f);
  EXPECT_NEAR(out.norm(), 1.0f, 1e-6f);
}

TEST(InnerProduct, Examples) {
  std::mt19937_64 rng(3);
  const StateVector psi = from(ref::random_state(3, rng), 3);
  EXPECT_NEAR(std::abs(inner_product(psi, psi) - 1.0), 0.0, 1e-14);
  const StateVector ry = apply_gate(StateVector(1), Gate::ry(0, 0), M_PI / 2);
  EXPECT_NEAR(inner_product(StateVector(1), ry).real(), 0.7071068, 1e-7);
  EXPECT_EQ(std::abs(inner_product(StateVector::basis(2, 0b01), StateVector::basis(2, 0b10))), 0.0);
}

TEST(Sampling, DeterministicState) {
  const MeasurementRecord rec = sample_bitstrings(StateVector::basis(2, 0b01), 1000, 1);
  EXPECT_EQ(rec.counts.size(), 1u);
  EXPECT_EQ(rec.count("01"), 1000u);
}

TEST(Sampling, BellPairFrequencies) {
  const StateVector bell = maximally_entangled_state(1);
  const MeasurementRecord rec = sample_bitstrings(bell, 100000, 42);
  const double band = 3 * std::sqrt(0.25 / 1e5);
  EXPECT_NEAR(rec.frequency("00"), 0.5, band);
  EXPECT_NEAR(rec.frequency("11"), 0.5, band);
  EXPECT_EQ(rec.count("01") + rec.count("10"), 0u);
}

TEST(Sampling, SameSeedSameRecord) {
  std::mt19937_64 rng(8);
  const StateVector psi = from(ref::random_state(3, rng), 3);
  const auto a = sample_bitstrings(psi, 5000, 77);
  const auto b = sample_bitstrings(psi, 5000, 77);
  EXPECT_EQ(a.counts, b.counts);
}

TEST(Sampling, ChiSquareOnRandomFourQubitStates) {
  // 15 degrees of freedom, 99% quantile.
  const double critical = 30.578;
  std::mt19937_64 rng(123);
  int failures = 0;
  const int trials = 20;
  for (int t = 0; t < trials; ++t) {
    const StateVector psi = from(ref::random_state(4, rng), 4);
    const std::uint64_t shots = 100000;
    const auto idx = sample_indices(psi, shots, 1000 + t);
    std::vector<double> counts(16, 0.0);
    for (auto i : idx) counts[i] += 1;
    double chi2 = 0;
    for (int i = 0; i < 16; ++i) {
      const double expected = shots * std::norm(psi[i]);
      chi2 += (counts[i] - expected) * (counts[i] - expected) / expected;
    }
    if (chi2 > critical) ++failures;
  }
  EXPECT_LE(failures, 2);
}

TEST(PartialTrace, ProductStateKeepFirst) {
  const StateVector plus = apply_gate(StateVector(1), Gate::h(0));
  const DensityMatrix rho = partial_trace(tensor_product(StateVector(1), plus), {0});
  EXPECT_NEAR(std::abs(rho.entries()(0, 0) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(rho.purity(), 1.0, 1e-14);
}

TEST(PartialTrace, BellPairIsMaximallyMixed) {
  const DensityMatrix rho = partial_trace(maximally_entangled_state(1), {0});
  EXPECT_LT((rho.entries() - ref::Mat::Identity(2, 2) / 2.0).norm(), 1e-14);
  EXPECT_NEAR(rho.purity(), 0.5, 1e-14);
}

TEST(PartialTrace, MaximallyEntangledTwoPlusTwo) {
  const DensityMatrix rho = partial_trace(maximally_entangled_state(2), {0, 1});
  EXPECT_LT((rho.entries() - ref::Mat::Identity(4, 4) / 4.0).norm(), 1e-14);
}

TEST(PartialTrace, RandomStatesGiveValidReductions) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 30; ++t) {
    const StateVector psi = from(ref::random_state(4, rng), 4);
    const std::vector<int> keep = {t % 4, (t + 2) % 4};
    const DensityMatrix rho = partial_trace(psi, std::span<const int>(keep));
    EXPECT_TRUE(rho.is_valid(1e-12, 1e-12));
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
    EXPECT_GT(rho.purity(), 0.0);
    EXPECT_LE(rho.purity(), 1.0 + 1e-12);
  }
}
