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

#include "vargibbs/hamiltonian.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace vargibbs {

PauliSum::PauliSum(int num_qubits, const std::vector<PauliTerm>& terms) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > 32) {
    throw std::invalid_argument("Hamiltonian qubit count must be in [1, 32]");
  }
  std::unordered_map<PauliString, std::size_t, PauliStringHash> slot;
  std::vector<PauliTerm> merged;
  for (const auto& t : terms) {
    if (t.string.num_qubits() != num_qubits) {
      throw std::invalid_argument("inconsistent Pauli string lengths: expected " + std::to_string(num_qubits) +
                                  ", got " + std::to_string(t.string.num_qubits()));
    }
    if (!std::isfinite(t.coefficient)) throw std::invalid_argument("non-finite coefficient");
    auto [it, inserted] = slot.emplace(t.string, merged.size());
    if (inserted) {
      merged.push_back(t);
    } else {
      merged[it->second].coefficient += t.coefficient;
    }
  }
  for (auto& t : merged) {
    if (t.coefficient != 0.0) terms_.push_back(t);
  }
}

double PauliSum::coefficient(const PauliString& p) const {
  for (const auto& t : terms_) {
    if (t.string == p) return t.coefficient;
  }
  return 0.0;
}

double PauliSum::scale() const {
  double s = 0.0;
  for (const auto& t : terms_) s = std::max(s, std::abs(t.coefficient));
  return s;
}

std::string PauliSum::to_text() const {
  std::ostringstream out;
  out << std::setprecision(17);
  if (terms_.empty()) {
    out << 0.0 << ' ' << std::string(num_qubits_, 'I');
    return out.str();
  }
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) out << " + ";
    out << terms_[i].coefficient << ' ' << terms_[i].string.to_string();
  }
  return out.str();
}

namespace {

double parse_coefficient(const std::string& token) {
  std::string_view s(token);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("malformed coefficient '" + token + "'");
  }
  return value;
}

}  // namespace

PauliSum parse_pauli_sum(std::string_view text) {
  std::vector<std::string> tokens;
  std::istringstream lines{std::string(text)};
  std::string line;
  bool pending_plus = false;
  while (std::getline(lines, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string w;
    bool expect_coefficient = true;
    while (words >> w) {
      if (w == "+") {
        if (!expect_coefficient || tokens.empty() || pending_plus) {
          throw std::invalid_argument("misplaced '+' in Hamiltonian text");
        }
        pending_plus = true;
        continue;
      }
      pending_plus = false;
      tokens.push_back(w);
      expect_coefficient = !expect_coefficient;
    }
    if (!expect_coefficient) throw std::invalid_argument("term '" + tokens.back() + "' has no Pauli letters");
  }
  if (pending_plus) throw std::invalid_argument("trailing '+' in Hamiltonian text");
  if (tokens.empty()) throw std::invalid_argument("empty Hamiltonian");

  std::vector<PauliTerm> terms;
  for (std::size_t i = 0; i + 1 < tokens.size(); i += 2) {
    terms.push_back({parse_coefficient(tokens[i]), PauliString::from_letters(tokens[i + 1])});
  }
  const int n = terms.front().string.num_qubits();
  for (const auto& t : terms) {
    if (t.string.num_qubits() != n) {
      throw std::invalid_argument("inconsistent Pauli string lengths in Hamiltonian text");
    }
  }
  return PauliSum(n, terms);
}

PauliSum heisenberg_chain(int num_qubits, double coupling) {
  if (num_qubits < 2) throw std::invalid_argument("Heisenberg chain needs at least 2 qubits");
  std::vector<PauliTerm> terms;
  for (int i = 0; i + 1 < num_qubits; ++i) {
    for (char p : {'X', 'Y', 'Z'}) {
      std::string letters(num_qubits, 'I');
      letters[i] = p;
      letters[i + 1] = p;
      terms.push_back({-coupling, PauliString::from_letters(letters)});
    }
  }
  return PauliSum(num_qubits, terms);
}

double moment_trace(const PauliSum& h, int order) {
  if (order < 0) throw std::invalid_argument("moment order must be nonnegative");
  using Poly = std::unordered_map<PauliString, std::complex<double>, PauliStringHash>;
  Poly current{{PauliString(h.num_qubits()), 1.0}};
  for (int k = 0; k < order; ++k) {
    Poly next;
    for (const auto& [p, c] : current) {
      for (const auto& t : h.terms()) {
        const auto prod = multiply_strings(p, t.string);
        next[prod.string] += c * t.coefficient * prod.phase;
      }
    }
    current = std::move(next);
  }
  auto it = current.find(PauliString(h.num_qubits()));
  return it == current.end() ? 0.0 : it->second.real();
}

Eigen::MatrixXcd to_dense(const PauliSum& h) {
  if (h.num_qubits() > kMaxQubits) throw std::invalid_argument("dense realization limited to 16 qubits");
  const Eigen::Index dim = Eigen::Index{1} << h.num_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : h.terms()) {
    const std::complex<double> pre = detail::i_power<double>(t.string.num_y());
    for (Eigen::Index b = 0; b < dim; ++b) {
      const auto ub = static_cast<std::uint64_t>(b);
      const double sign = (std::popcount(t.string.z_mask() & ub) & 1) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(ub ^ t.string.x_mask()), b) += t.coefficient * sign * pre;
    }
  }
  return m;
}

Eigen::VectorXcd apply_hamiltonian(const PauliSum& h, const Eigen::VectorXcd& v, int state_qubits) {
  if (state_qubits < h.num_qubits()) {
    throw std::invalid_argument("state has " + std::to_string(state_qubits) + " qubits but the Hamiltonian acts on " +
                                std::to_string(h.num_qubits()));
  }
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
  for (const auto& t : h.terms()) {
    out += t.coefficient * apply_pauli(t.string.embedded(state_qubits), v);
  }
  return out;
}

double expectation(const PauliSum& h, const StateVector& state) {
  const Eigen::VectorXcd hv = apply_hamiltonian(h, state.amplitudes(), state.num_qubits());
  return state.amplitudes().dot(hv).real();
}

}  // namespace vargibbs
