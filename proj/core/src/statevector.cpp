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

#include "qnp/statevector.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "qnp/error.hpp"

namespace qnp {

namespace {
using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};
}  // namespace

Statevector::Statevector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw InvalidArgument("statevector width " + std::to_string(n_qubits) +
                          " outside 1.." + std::to_string(kMaxQubits));
  }
  amps_.assign(std::size_t{1} << n_qubits, cd{0.0, 0.0});
  amps_[0] = 1.0;
}

void Statevector::reset() {
  std::fill(amps_.begin(), amps_.end(), cd{0.0, 0.0});
  amps_[0] = 1.0;
}

void Statevector::check_qubit(int q) const {
  if (q < 0 || q >= n_qubits_) {
    throw InvalidArgument("qubit " + std::to_string(q) + " outside statevector");
  }
}

// Calls f(amp0, amp1) for every pair of amplitudes differing only in `qubit`.
template <typename F>
void Statevector::for_each_pair(int qubit, F&& f) {
  const std::size_t bit = std::size_t{1} << qubit;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) continue;
    f(amps_[i], amps_[i | bit]);
  }
}

void Statevector::apply_diagonal_phase(int a, int b, cd phase) {
  const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & mask) == mask) amps_[i] *= phase;
  }
}

void Statevector::apply(const Gate& gate) {
  for (int q : gate.qubits) check_qubit(q);
  const int q0 = gate.qubits.at(0);
  switch (gate.kind) {
    case GateKind::H: {
      const double s = std::numbers::sqrt2 / 2.0;
      for_each_pair(q0, [s](cd& a0, cd& a1) {
        const cd x = a0;
        a0 = s * (x + a1);
        a1 = s * (x - a1);
      });
      break;
    }
    case GateKind::X: apply_pauli(q0, Pauli::X); break;
    case GateKind::Z: apply_pauli(q0, Pauli::Z); break;
    case GateKind::S:
      for_each_pair(q0, [](cd&, cd& a1) { a1 *= kI; });
      break;
    case GateKind::T: {
      const cd phase = std::polar(1.0, std::numbers::pi / 4.0);
      for_each_pair(q0, [phase](cd&, cd& a1) { a1 *= phase; });
      break;
    }
    case GateKind::CX: {
      const int target = gate.qubits.at(1);
      const std::size_t cbit = std::size_t{1} << q0;
      const std::size_t tbit = std::size_t{1} << target;
      for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & cbit) && !(i & tbit)) std::swap(amps_[i], amps_[i | tbit]);
      }
      break;
    }
    case GateKind::CZ: apply_diagonal_phase(q0, gate.qubits.at(1), -1.0); break;
    case GateKind::CP:
      apply_diagonal_phase(q0, gate.qubits.at(1),
                           std::polar(1.0, gate.param.value_or(0.0)));
      break;
    case GateKind::SWAP: {
      const std::size_t abit = std::size_t{1} << q0;
      const std::size_t bbit = std::size_t{1} << gate.qubits.at(1);
      for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & abit) && !(i & bbit)) std::swap(amps_[i], amps_[(i ^ abit) | bbit]);
      }
      break;
    }
    case GateKind::MEASURE:
      throw InvalidArgument("MEASURE is not a unitary gate");
  }
}

void Statevector::apply_pauli(int qubit, Pauli pauli) {
  check_qubit(qubit);
  switch (pauli) {
    case Pauli::I: break;
    case Pauli::X: for_each_pair(qubit, [](cd& a0, cd& a1) { std::swap(a0, a1); }); break;
    case Pauli::Y:
      // Y|0> = i|1>, Y|1> = -i|0>
      for_each_pair(qubit, [](cd& a0, cd& a1) {
        const cd x = a0;
        a0 = -kI * a1;
        a1 = kI * x;
      });
      break;
    case Pauli::Z: for_each_pair(qubit, [](cd&, cd& a1) { a1 = -a1; }); break;
  }
}

double Statevector::norm_squared() const noexcept {
  double sum = 0.0;
  for (const cd& a : amps_) sum += std::norm(a);
  return sum;
}

std::vector<double> Statevector::probabilities() const {
  std::vector<double> out(amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) out[i] = std::norm(amps_[i]);
  return out;
}

double Statevector::probability_one(int qubit) const noexcept {
  const std::size_t bit = std::size_t{1} << qubit;
  double p = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) p += std::norm(amps_[i]);
  }
  return p;
}

void Statevector::collapse(int qubit, int bit) {
  check_qubit(qubit);
  const std::size_t mask = std::size_t{1} << qubit;
  double kept = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (((i & mask) != 0) != (bit != 0)) {
      amps_[i] = 0.0;
    } else {
      kept += std::norm(amps_[i]);
    }
  }
  if (!(kept > 0.0)) throw InvalidArgument("collapse onto a zero-probability outcome");
  const double scale = 1.0 / std::sqrt(kept);
  for (cd& a : amps_) a *= scale;
}

}  // namespace qnp
