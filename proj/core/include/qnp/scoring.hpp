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
 * @file scoring.hpp
 * @brief Overall performance scores of compiled circuits.
 *
 * The overall score of a set of qubits (or gates) is the reciprocal of
 * their usage-weighted mean error:
 *
 *     S = ( sum_i C_i * E_i / sum_i C_i )^-1
 *
 * where C_i is how often element i is used by the circuit and E_i its
 * error rate. Elements with zero usage do not contribute. Higher is better.
 */

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qnp/calibration.hpp"
#include "qnp/circuit.hpp"

namespace qnp {

struct ScoreInput {
  std::vector<int> usages;     ///< C_i >= 0
  std::vector<double> errors;  ///< E_i in (0, 1] wherever C_i > 0
};

/// Throws InvalidArgument on mismatched lengths, negative usage, all-zero
/// usage, or a used element whose error is not in (0, 1].
double overall_score(std::span<const int> usages, std::span<const double> errors);
double overall_score(const ScoreInput& input);

/// Which qubit attribute feeds the qubit score.
enum class QubitScoreAttribute { readout_error, derived_from_t1, derived_from_t2 };

std::string_view to_string(QubitScoreAttribute attribute);
QubitScoreAttribute qubit_score_attribute_from_string(std::string_view name);

/// Error proxy for a coherence time: 1 / (1 + t_us / 1000). Monotone
/// decreasing, so longer T1/T2 scores higher.
double coherence_error_proxy(double t_us) noexcept;

struct ScoreReport {
  std::string circuit_id;
  double qubit_score = 0.0;
  double gate_score = 0.0;
  int depth = 0;

  friend bool operator==(const ScoreReport&, const ScoreReport&) = default;
};

/// Builds the qubit score input (used qubits with the selected attribute)
/// and gate score input (used edges at cx_error, plus each non-measure
/// single-qubit instruction at its qubit's sq_gate_error).
ScoreInput qubit_score_input(const PhysicalCircuit& circuit, const CalibrationSnapshot& snapshot,
                             QubitScoreAttribute attribute);
ScoreInput gate_score_input(const PhysicalCircuit& circuit, const CalibrationSnapshot& snapshot);

ScoreReport score_circuit(const PhysicalCircuit& circuit, const CalibrationSnapshot& snapshot,
                          QubitScoreAttribute attribute = QubitScoreAttribute::readout_error);

struct BatchScoreSummary {
  std::vector<ScoreReport> reports;
  double qubit_reference = 0.0;
  double gate_reference = 0.0;
};

/// Attaches the mean qubit and gate scores. Throws on an empty list.
BatchScoreSummary summarize_batch(std::vector<ScoreReport> reports);

enum class SortKey { score, depth };
enum class ScoreAxis { gate, qubit };

std::string_view to_string(SortKey key);
std::string_view to_string(ScoreAxis axis);
SortKey sort_key_from_string(std::string_view name);
ScoreAxis score_axis_from_string(std::string_view name);

/// Stable ordering of circuit ids: by depth ascending, or by the selected
/// axis score descending. Circuits whose selected score falls outside
/// [min_score, max_score] (inclusive) are dropped.
std::vector<std::string> sort_and_filter(const BatchScoreSummary& summary, SortKey key,
                                         ScoreAxis axis,
                                         std::optional<double> min_score = std::nullopt,
                                         std::optional<double> max_score = std::nullopt);

void to_json(nlohmann::json& j, const ScoreReport& report);
void from_json(const nlohmann::json& j, ScoreReport& report);
void to_json(nlohmann::json& j, const BatchScoreSummary& summary);
void from_json(const nlohmann::json& j, BatchScoreSummary& summary);

}  // namespace qnp
