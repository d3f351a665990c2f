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

#include <bit>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

namespace vargibbs {

/// Maximum register width of any dense object in the library.
inline constexpr int kMaxQubits = 16;

/// Tensor product of single-qubit Pauli operators in symplectic form.
///
/// The string is stored as two bitmasks over the basis-index bits of the
/// register it acts on. Qubit 0 is the most significant bit of a basis index,
/// so qubit `q` of an `n`-qubit string lives at bit `n - 1 - q`. The operator is
///
///     P = i^{popcount(x & z)} X^x Z^z,
///
/// i.e. a qubit with both bits set carries a Y.
class PauliString {
 public:
  PauliString() = default;

  /// Identity on `num_qubits` qubits.
  explicit PauliString(int num_qubits);

  PauliString(int num_qubits, std::uint64_t x_mask, std::uint64_t z_mask);

  /// Parses letters from {I, X, Y, Z}; the first letter acts on qubit 0.
  static PauliString from_letters(std::string_view letters);

  int num_qubits() const { return num_qubits_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }

  char letter(int qubit) const;
  std::string to_string() const;

  int weight() const { return std::popcount(x_ | z_); }
  int num_y() const { return std::popcount(x_ & z_); }
  bool is_identity() const { return (x_ | z_) == 0; }

  /// Acts on the leading `num_qubits()` qubits of a wider register.
  PauliString embedded(int total_qubits) const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString&, const PauliString&) = default;

 private:
  int num_qubits_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

/// P = phase * string with phase in {1, i, -1, -i}.
struct PhasedPauli {
  std::complex<double> phase;
  PauliString string;
};

/// Product P·Q in canonical form.
PhasedPauli multiply_strings(const PauliString& p, const PauliString& q);

/// Power of i for the same product, as an integer in [0, 4). Useful when the
/// caller accumulates exact phases.
int product_phase_exponent(const PauliString& p, const PauliString& q);

struct PauliStringHash {
  std::size_t operator()(const PauliString& p) const noexcept {
    return std::hash<std::uint64_t>{}((p.x_mask() << 32) ^ p.z_mask() ^
                                      (static_cast<std::uint64_t>(p.num_qubits()) << 58));
  }
};

}  // namespace vargibbs
