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

#include "vargibbs/pauli.hpp"

#include <stdexcept>

namespace vargibbs {

namespace {

void check_width(int num_qubits) {
  if (num_qubits < 0 || num_qubits > 32) {
    throw std::invalid_argument("Pauli string width must be in [0, 32], got " +
                                std::to_string(num_qubits));
  }
}

std::uint64_t full_mask(int n) { return n == 64 ? ~0ULL : ((1ULL << n) - 1); }

}  // namespace

PauliString::PauliString(int num_qubits) : num_qubits_(num_qubits) { check_width(num_qubits); }

PauliString::PauliString(int num_qubits, std::uint64_t x_mask, std::uint64_t z_mask)
    : num_qubits_(num_qubits), x_(x_mask), z_(z_mask) {
  check_width(num_qubits);
  if (((x_mask | z_mask) & ~full_mask(num_qubits)) != 0) {
    throw std::invalid_argument("Pauli masks exceed register width");
  }
}

PauliString PauliString::from_letters(std::string_view letters) {
  const int n = static_cast<int>(letters.size());
  check_width(n);
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  for (int q = 0; q < n; ++q) {
    const std::uint64_t bit = 1ULL << (n - 1 - q);
    switch (letters[q]) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      case 'Z': z |= bit; break;
      default:
        throw std::invalid_argument(std::string("non-Pauli letter '") + letters[q] + "' in \"" +
                                    std::string(letters) + "\"");
    }
  }
  return PauliString(n, x, z);
}

char PauliString::letter(int qubit) const {
  if (qubit < 0 || qubit >= num_qubits_) throw std::out_of_range("qubit index out of range");
  const std::uint64_t bit = 1ULL << (num_qubits_ - 1 - qubit);
  const bool x = x_ & bit;
  const bool z = z_ & bit;
  return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
}

std::string PauliString::to_string() const {
  std::string out(num_qubits_, 'I');
  for (int q = 0; q < num_qubits_; ++q) out[q] = letter(q);
  return out;
}

PauliString PauliString::embedded(int total_qubits) const {
  if (total_qubits < num_qubits_) throw std::invalid_argument("cannot embed into a smaller register");
  const int shift = total_qubits - num_qubits_;
  return PauliString(total_qubits, x_ << shift, z_ << shift);
}

int product_phase_exponent(const PauliString& p, const PauliString& q) {
  if (p.num_qubits() != q.num_qubits()) {
    throw std::invalid_argument("Pauli string dimension mismatch");
  }
  // X^a Z^b X^c Z^d = (-1)^{|b & c|} X^{a^c} Z^{b^d}; the i^{#Y} prefactors
  // of the three strings make up the rest.
  const std::uint64_t rx = p.x_mask() ^ q.x_mask();
  const std::uint64_t rz = p.z_mask() ^ q.z_mask();
  const int ry = std::popcount(rx & rz);
  const int sign = std::popcount(p.z_mask() & q.x_mask());
  const int e = p.num_y() + q.num_y() - ry + 2 * sign;
  return ((e % 4) + 4) % 4;
}

PhasedPauli multiply_strings(const PauliString& p, const PauliString& q) {
  static constexpr std::complex<double> kPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const int e = product_phase_exponent(p, q);
  return {kPowers[e], PauliString(p.num_qubits(), p.x_mask() ^ q.x_mask(), p.z_mask() ^ q.z_mask())};
}

}  // namespace vargibbs
