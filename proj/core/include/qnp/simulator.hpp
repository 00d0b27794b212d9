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

/**
 * @file simulator.hpp
 * @brief Exact and Monte-Carlo noisy execution of circuits.
 *
 * Noise model: after every gate, with probability equal to its calibrated
 * error, a uniformly random non-identity Pauli hits the gate's qubits (3
 * choices for one qubit, 15 for two). Each measured bit is then flipped
 * with its qubit's readout error. T1/T2 do not enter the simulation.
 *
 * Physical circuits are simulated over the physical qubits they touch
 * only, so a 3-qubit circuit on a 27-qubit device costs 2^3 amplitudes.
 * Results are reported in logical bit order: routing SWAPs are replayed to
 * find which logical qubit each MEASURE reads.
 *
 * Shot s draws from its own stream seeded with derive_seed(seed, s), so
 * counts do not depend on the order shots are evaluated in.
 */

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qnp/calibration.hpp"
#include "qnp/circuit.hpp"

namespace qnp {

struct NoiseModel {
  std::vector<double> readout;       ///< per physical qubit
  std::vector<double> single_qubit;  ///< depolarizing probability per qubit
  std::map<Edge, double> two_qubit;  ///< depolarizing probability per edge

  static NoiseModel from_snapshot(const CalibrationSnapshot& snapshot);
  /// All-zero noise over `n_qubits` qubits and the given edges.
  static NoiseModel noiseless(int n_qubits, const std::vector<Edge>& edges = {});

  void validate() const;
};

/// Exact measurement distribution. Entries below 1e-12 are omitted.
/// Throws InvalidArgument beyond Statevector::kMaxQubits active qubits or
/// when nothing is measured.
OutcomeDistribution run_ideal(const LogicalCircuit& circuit);
OutcomeDistribution run_ideal(const PhysicalCircuit& circuit);

/// Shot histogram from Monte-Carlo trajectories under the snapshot's noise.
/// The snapshot must belong to circuit.computer_id.
OutcomeDistribution run_noisy(const PhysicalCircuit& circuit,
                              const CalibrationSnapshot& snapshot,
                              std::uint64_t shots, std::uint64_t seed);
OutcomeDistribution run_noisy(const PhysicalCircuit& circuit,
                              const NoiseModel& noise, std::uint64_t shots,
                              std::uint64_t seed);

}  // namespace qnp
