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

#include "qnp/scoring.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "qnp/error.hpp"

namespace qnp {

double overall_score(std::span<const int> usages, std::span<const double> errors) {
  if (usages.size() != errors.size()) {
    throw InvalidArgument("usages and errors differ in length");
  }
  double weighted = 0.0;
  long long total = 0;
  for (std::size_t i = 0; i < usages.size(); ++i) {
    if (usages[i] < 0) throw InvalidArgument("usage counts must be non-negative");
    if (usages[i] == 0) continue;
    if (!(errors[i] > 0.0 && errors[i] <= 1.0)) {
      throw InvalidArgument("used element " + std::to_string(i) + " has error " +
                            std::to_string(errors[i]) + "; score needs (0, 1]");
    }
    weighted += usages[i] * errors[i];
    total += usages[i];
  }
  if (total == 0) throw InvalidArgument("overall score needs at least one used element");
  return static_cast<double>(total) / weighted;
}

double overall_score(const ScoreInput& input) {
  return overall_score(input.usages, input.errors);
}

std::string_view to_string(QubitScoreAttribute attribute) {
  switch (attribute) {
    case QubitScoreAttribute::readout_error: return "readout_error";
    case QubitScoreAttribute::derived_from_t1: return "derived_from_t1";
    case QubitScoreAttribute::derived_from_t2: return "derived_from_t2";
  }
  return "?";
}

QubitScoreAttribute qubit_score_attribute_from_string(std::string_view name) {
  if (name == "readout_error") return QubitScoreAttribute::readout_error;
  if (name == "derived_from_t1" || name == "t1") return QubitScoreAttribute::derived_from_t1;
  if (name == "derived_from_t2" || name == "t2") return QubitScoreAttribute::derived_from_t2;
  throw InvalidArgument("unknown qubit attribute '" + std::string(name) + "'");
}

double coherence_error_proxy(double t_us) noexcept { return 1.0 / (1.0 + t_us / 1000.0); }

namespace {

void check_snapshot(const PhysicalCircuit& circuit, const CalibrationSnapshot& snapshot) {
  if (snapshot.computer_id != circuit.computer_id) {
    throw InvalidArgument("snapshot of '" + snapshot.computer_id + "' cannot score a circuit on '" +
                          circuit.computer_id + "'");
  }
}

}  // namespace

ScoreInput qubit_score_input(const PhysicalCircuit& circuit, const CalibrationSnapshot& snapshot,
                             QubitScoreAttribute attribute) {
  check_snapshot(circuit, snapshot);
  ScoreInput in;
  for (const auto& [q, count] : circuit.qubit_usage) {
    if (count == 0) continue;
    const QubitCalibration& cal = snapshot.qubit(q);
    in.usages.push_back(count);
    switch (attribute) {
      case QubitScoreAttribute::readout_error: in.errors.push_back(cal.readout_error); break;
      case QubitScoreAttribute::derived_from_t1: in.errors.push_back(coherence_error_proxy(cal.t1_us)); break;
      case QubitScoreAttribute::derived_from_t2: in.errors.push_back(coherence_error_proxy(cal.t2_us)); break;
    }
  }
  return in;
}

ScoreInput gate_score_input(const PhysicalCircuit& circuit, const CalibrationSnapshot& snapshot) {
  check_snapshot(circuit, snapshot);
  ScoreInput in;
  for (const auto& [edge, count] : circuit.gate_usage) {
    if (count == 0) continue;
    in.usages.push_back(count);
    in.errors.push_back(snapshot.cx_error(edge.first, edge.second));
  }
  std::map<int, int> single;
  for (const Gate& g : circuit.instructions) {
    if (!g.is_two_qubit() && !g.is_measure()) ++single[g.qubits[0]];
  }
  for (const auto& [q, count] : single) {
    in.usages.push_back(count);
    in.errors.push_back(snapshot.qubit(q).sq_gate_error);
  }
  return in;
}

ScoreReport score_circuit(const PhysicalCircuit& circuit, const CalibrationSnapshot& snapshot,
                          QubitScoreAttribute attribute) {
  ScoreReport r;
  r.circuit_id = circuit.id;
  r.qubit_score = overall_score(qubit_score_input(circuit, snapshot, attribute));
  r.gate_score = overall_score(gate_score_input(circuit, snapshot));
  r.depth = circuit.depth;
  return r;
}

BatchScoreSummary summarize_batch(std::vector<ScoreReport> reports) {
  if (reports.empty()) throw InvalidArgument("cannot summarize an empty batch");
  BatchScoreSummary s;
  double q = 0.0;
  double g = 0.0;
  for (const ScoreReport& r : reports) {
    q += r.qubit_score;
    g += r.gate_score;
  }
  const auto n = static_cast<double>(reports.size());
  s.qubit_reference = q / n;
  s.gate_reference = g / n;
  s.reports = std::move(reports);
  return s;
}

std::string_view to_string(SortKey key) { return key == SortKey::score ? "score" : "depth"; }
std::string_view to_string(ScoreAxis axis) { return axis == ScoreAxis::gate ? "gate" : "qubit"; }

SortKey sort_key_from_string(std::string_view name) {
  if (name == "score") return SortKey::score;
  if (name == "depth") return SortKey::depth;
  throw InvalidArgument("unknown sort key '" + std::string(name) + "'");
}

ScoreAxis score_axis_from_string(std::string_view name) {
  if (name == "gate") return ScoreAxis::gate;
  if (name == "qubit") return ScoreAxis::qubit;
  throw InvalidArgument("unknown score axis '" + std::string(name) + "'");
}

std::vector<std::string> sort_and_filter(const BatchScoreSummary& summary, SortKey key,
                                         ScoreAxis axis, std::optional<double> min_score,
                                         std::optional<double> max_score) {
  if (min_score && max_score && *min_score > *max_score) {
    throw InvalidArgument("min_score exceeds max_score");
  }
  auto score_of = [axis](const ScoreReport& r) {
    return axis == ScoreAxis::gate ? r.gate_score : r.qubit_score;
  };

  std::vector<const ScoreReport*> kept;
  for (const ScoreReport& r : summary.reports) {
    const double s = score_of(r);
    if (min_score && s < *min_score) continue;
    if (max_score && s > *max_score) continue;
    kept.push_back(&r);
  }
  if (key == SortKey::depth) {
    std::stable_sort(kept.begin(), kept.end(),
                     [](const ScoreReport* a, const ScoreReport* b) { return a->depth < b->depth; });
  } else {
    std::stable_sort(kept.begin(), kept.end(), [&](const ScoreReport* a, const ScoreReport* b) {
      return score_of(*a) > score_of(*b);
    });
  }
  std::vector<std::string> ids;
  ids.reserve(kept.size());
  for (const ScoreReport* r : kept) ids.push_back(r->circuit_id);
  return ids;
}

void to_json(nlohmann::json& j, const ScoreReport& report) {
  j = nlohmann::json{{"circuit_id", report.circuit_id},
                     {"qubit_score", report.qubit_score},
                     {"gate_score", report.gate_score},
                     {"depth", report.depth}};
}

void from_json(const nlohmann::json& j, ScoreReport& report) {
  report.circuit_id = j.at("circuit_id").get<std::string>();
  report.qubit_score = j.at("qubit_score").get<double>();
  report.gate_score = j.at("gate_score").get<double>();
  report.depth = j.at("depth").get<int>();
}

void to_json(nlohmann::json& j, const BatchScoreSummary& summary) {
  j = nlohmann::json{{"reports", summary.reports},
                     {"qubit_reference", summary.qubit_reference},
                     {"gate_reference", summary.gate_reference}};
}

void from_json(const nlohmann::json& j, BatchScoreSummary& summary) {
  summary.reports = j.at("reports").get<std::vector<ScoreReport>>();
  summary.qubit_reference = j.at("qubit_reference").get<double>();
  summary.gate_reference = j.at("gate_reference").get<double>();
}

}  // namespace qnp
