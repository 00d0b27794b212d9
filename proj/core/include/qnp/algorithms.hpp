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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qnp/circuit.hpp"

namespace qnp {

/// Names accepted by build_algorithm.
std::vector<std::string> algorithm_names();

/// Built-in circuit library:
///  - two_qubit_test / bell: H(0); CX(0,1); measure both.
///  - ghz(n):  H(0); CX(0,i) for i = 1..n-1; measure all.
///  - bv(n):   Bernstein-Vazirani with an all-ones secret on n-1 data
///             qubits and one ancilla (qubit n-1); data qubits measured.
///  - qft(n):  textbook QFT (H, controlled phases pi/2^k, final qubit
///             reversal SWAPs); all qubits measured.
/// `n` defaults to 3 and must be in 2..7 for ghz, bv and qft; it must be
/// absent or 2 for the two-qubit circuits.
LogicalCircuit build_algorithm(std::string_view name,
                               std::optional<int> n = std::nullopt);

inline constexpr int kMinAlgorithmQubits = 2;
inline constexpr int kMaxAlgorithmQubits = 7;

}  // namespace qnp
