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
 * @file circuit.hpp
 * @brief Logical and physical circuits, outcome distributions.
 *
 * Circuits are flat instruction lists. Depth is the instruction count
 * (measurements and routing SWAPs included), not the layered depth some
 * toolkits report.
 *
 * Bitstring convention for every OutcomeDistribution: character i (from the
 * left) is the measurement of the i-th measured logical qubit in ascending
 * index order. For the built-in algorithms every qubit is measured, so
 * character i is qubit i.
 */

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qnp/calibration.hpp"

namespace qnp {

enum class GateKind { H, X, Z, S, T, CX, CZ, CP, SWAP, MEASURE };

std::string_view to_string(GateKind kind);
GateKind gate_kind_from_string(std::string_view name);
int arity(GateKind kind) noexcept;

struct Gate {
  GateKind kind = GateKind::H;
  std::vector<int> qubits;
  std::optional<double> param;  ///< CP phase angle in radians

  static Gate single(GateKind kind, int q) { return {kind, {q}, std::nullopt}; }
  static Gate h(int q) { return single(GateKind::H, q); }
  static Gate x(int q) { return single(GateKind::X, q); }
  static Gate z(int q) { return single(GateKind::Z, q); }
  static Gate s(int q) { return single(GateKind::S, q); }
  static Gate t(int q) { return single(GateKind::T, q); }
  static Gate measure(int q) { return single(GateKind::MEASURE, q); }
  static Gate cx(int control, int target) { return {GateKind::CX, {control, target}, std::nullopt}; }
  static Gate cz(int a, int b) { return {GateKind::CZ, {a, b}, std::nullopt}; }
  static Gate cp(int control, int target, double theta) { return {GateKind::CP, {control, target}, theta}; }
  static Gate swap(int a, int b) { return {GateKind::SWAP, {a, b}, std::nullopt}; }

  bool is_two_qubit() const noexcept { return qubits.size() == 2; }
  bool is_measure() const noexcept { return kind == GateKind::MEASURE; }

  /// Arity matches kind, operands distinct and non-negative, param iff CP.
  void validate() const;

  friend bool operator==(const Gate&, const Gate&) = default;
};

struct LogicalCircuit {
  std::string name;
  int n_qubits = 0;
  std::vector<Gate> instructions;

  /// Indices below n_qubits; each measured qubit measured exactly once and
  /// after every other gate on it.
  void validate() const;
  /// Measured qubits in ascending order.
  std::vector<int> measured_qubits() const;

  friend bool operator==(const LogicalCircuit&, const LogicalCircuit&) = default;
};

using QubitUsage = std::map<int, int>;
using GateUsage = std::map<Edge, int>;  ///< keyed by normalized edge

struct UsageCounts {
  QubitUsage qubit_usage;
  GateUsage gate_usage;

  friend bool operator==(const UsageCounts&, const UsageCounts&) = default;
};

struct PhysicalCircuit {
  std::string id;
  std::string computer_id;
  std::string source_name;
  int n_qubits = 0;                  ///< device width
  std::vector<int> layout;           ///< layout[logical] = initial physical qubit
  std::vector<Gate> instructions;    ///< over physical indices
  std::vector<std::size_t> inserted_swaps;  ///< indices of routing SWAPs
  QubitUsage qubit_usage;
  GateUsage gate_usage;
  int depth = 0;

  friend bool operator==(const PhysicalCircuit&, const PhysicalCircuit&) = default;
};

/// Instruction count.
int depth(const LogicalCircuit& circuit) noexcept;
int depth(const PhysicalCircuit& circuit) noexcept;

/// qubit_usage[q] = instructions touching q; gate_usage[e] = two-qubit
/// instructions on edge e. Only touched qubits/edges appear.
UsageCounts usage_counts(std::span<const Gate> instructions);
UsageCounts usage_counts(const PhysicalCircuit& circuit);

/// Replays routing SWAPs from the initial layout and returns the final
/// logical -> physical position map.
std::vector<int> final_layout(const PhysicalCircuit& circuit);

/// Edges carrying the source circuit's own two-qubit gates, ignoring
/// routing SWAPs. Two compilations with the same signature put the logical
/// interactions on the same couplers.
std::set<Edge> logical_edge_signature(const PhysicalCircuit& circuit);

enum class DistributionKind { exact_probability, shot_counts };

std::string_view to_string(DistributionKind kind);
DistributionKind distribution_kind_from_string(std::string_view name);

struct OutcomeDistribution {
  int n_bits = 0;
  DistributionKind kind = DistributionKind::exact_probability;
  std::map<std::string, double> entries;
  std::optional<std::uint64_t> total_shots;

  /// Probabilities sum to 1 +- 1e-9; shot counts sum to total_shots;
  /// every key has n_bits characters of '0'/'1'.
  void validate() const;
  /// Entries divided by their total. Throws on a zero total.
  std::map<std::string, double> probabilities() const;

  friend bool operator==(const OutcomeDistribution&,
                         const OutcomeDistribution&) = default;
};

// JSON documents.
void to_json(nlohmann::json& j, const Gate& gate);
void from_json(const nlohmann::json& j, Gate& gate);
void to_json(nlohmann::json& j, const LogicalCircuit& circuit);
void from_json(const nlohmann::json& j, LogicalCircuit& circuit);
void to_json(nlohmann::json& j, const PhysicalCircuit& circuit);
void from_json(const nlohmann::json& j, PhysicalCircuit& circuit);
void to_json(nlohmann::json& j, const OutcomeDistribution& dist);
void from_json(const nlohmann::json& j, OutcomeDistribution& dist);

/// "a-b" key used for edge-keyed JSON maps.
std::string edge_key(Edge e);
Edge parse_edge_key(std::string_view key);

}  // namespace qnp
