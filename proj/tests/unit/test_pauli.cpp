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

#include "reference.hpp"
#include "vargibbs/gate.hpp"
#include "vargibbs/pauli.hpp"

using namespace vargibbs;

TEST(PauliString, LettersRoundTrip) {
  for (const char* s : {"I", "X", "Y", "Z", "XYZI", "ZZYYXXII"}) {
    EXPECT_EQ(PauliString::from_letters(s).to_string(), s);
  }
  const auto p = PauliString::from_letters("XYZI");
  EXPECT_EQ(p.weight(), 3);
  EXPECT_EQ(p.num_y(), 1);
  EXPECT_EQ(p.letter(0), 'X');
  EXPECT_EQ(p.letter(3), 'I');
  EXPECT_THROW(PauliString::from_letters("XQ"), std::invalid_argument);
  EXPECT_EQ(PauliString::from_letters("").num_qubits(), 0);
}

TEST(PauliString, QubitZeroIsMostSignificantBit) {
  const auto p = PauliString::from_letters("XI");
  EXPECT_EQ(p.x_mask(), 0b10u);
  EXPECT_EQ(p.embedded(4).to_string(), "XIII");
}

TEST(MultiplyStrings, SingleQubitXYIsIZ) {
  const auto r = multiply_strings(PauliString::from_letters("X"), PauliString::from_letters("Y"));
  EXPECT_EQ(r.phase, std::complex<double>(0, 1));
  EXPECT_EQ(r.string.to_string(), "Z");
}

TEST(MultiplyStrings, Involution) {
  const auto p = PauliString::from_letters("XYZY");
  const auto r = multiply_strings(p, p);
  EXPECT_EQ(r.phase, std::complex<double>(1, 0));
  EXPECT_TRUE(r.string.is_identity());
}

TEST(MultiplyStrings, XXTimesYYIsMinusZZ) {
  const auto r = multiply_strings(PauliString::from_letters("XX"), PauliString::from_letters("YY"));
  EXPECT_EQ(r.phase, std::complex<double>(-1, 0));
  EXPECT_EQ(r.string.to_string(), "ZZ");
}

TEST(MultiplyStrings, MatchesDenseProductOnRandomStrings) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick(0, 3);
  const char letters[] = "IXYZ";
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 4;
    std::string a, b;
    for (int q = 0; q < n; ++q) {
      a += letters[pick(rng)];
      b += letters[pick(rng)];
    }
    const auto r = multiply_strings(PauliString::from_letters(a), PauliString::from_letters(b));
    const ref::Mat expected = ref::pauli_word(a) * ref::pauli_word(b);
    const ref::Mat got = r.phase * ref::pauli_word(r.string.to_string());
    EXPECT_LT((expected - got).norm(), 1e-12) << a << " * " << b;
  }
}

TEST(Gate, ValidationRejectsMalformedGates) {
  EXPECT_NO_THROW(Gate::cry(0, 1, 0).validate(2));
  EXPECT_THROW(Gate::cnot(0, 0).validate(2), std::invalid_argument);
  EXPECT_THROW(Gate::h(2).validate(2), std::invalid_argument);
  EXPECT_THROW(Gate::ry(0, -1).validate(1), std::invalid_argument);
}
