// Copyright 2026 The QNP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qnp/circuit.hpp"

namespace qnp {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/**
 * Dense statevector over at most kMaxQubits qubits.
 *
 * Amplitude index bit q holds qubit q (little endian), so basis state
 * |x_{n-1} ... x_1 x_0> lives at index sum_q x_q 2^q. Bitstrings produced
 * by the simulator are written qubit 0 first, the reverse of that order.
 */
class Statevector {
 public:
  static constexpr int kMaxQubits = 12;
  using amplitude_type = std::complex<double>;

  /// |0...0> on `n_qubits` qubits.
  explicit Statevector(int n_qubits);

  int n_qubits() const noexcept { return n_qubits_; }
  std::span<const amplitude_type> amplitudes() const noexcept { return amps_; }

  void reset();
  /// Applies a unitary gate. MEASURE is rejected; use measure().
  void apply(const Gate& gate);
  void apply_pauli(int qubit, Pauli pauli);

  double norm_squared() const noexcept;
  std::vector<double> probabilities() const;
  double probability_one(int qubit) const noexcept;
  /// Projects `qubit` onto `bit` and renormalizes.
  void collapse(int qubit, int bit);

 private:
  void check_qubit(int q) const;
  template <typename F>
  void for_each_pair(int qubit, F&& f);
  void apply_diagonal_phase(int a, int b, amplitude_type phase);

  int n_qubits_;
  std::vector<amplitude_type> amps_;
};

}  // namespace qnp
