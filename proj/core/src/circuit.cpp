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

#include "qnp/circuit.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <utility>

#include "qnp/error.hpp"

namespace qnp {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<GateKind, std::string_view>, 10> kGateNames{{
    {GateKind::H, "H"},
    {GateKind::X, "X"},
    {GateKind::Z, "Z"},
    {GateKind::S, "S"},
    {GateKind::T, "T"},
    {GateKind::CX, "CX"},
    {GateKind::CZ, "CZ"},
    {GateKind::CP, "CP"},
    {GateKind::SWAP, "SWAP"},
    {GateKind::MEASURE, "MEASURE"},
}};

}  // namespace

std::string_view to_string(GateKind kind) {
  for (const auto& [k, name] : kGateNames) {
    if (k == kind) return name;
  }
  return "?";
}

GateKind gate_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kGateNames) {
    if (n == name) return k;
  }
  throw InvalidArgument("unknown gate kind '" + std::string(name) + "'");
}

int arity(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::CX:
    case GateKind::CZ:
    case GateKind::CP:
    case GateKind::SWAP:
      return 2;
    default:
      return 1;
  }
}

void Gate::validate() const {
  const std::string name(to_string(kind));
  if (static_cast<int>(qubits.size()) != arity(kind)) {
    throw InvalidArgument(name + " takes " + std::to_string(arity(kind)) +
                          " qubit(s), got " + std::to_string(qubits.size()));
  }
  for (int q : qubits) {
    if (q < 0) throw InvalidArgument(name + " on negative qubit index");
  }
  if (qubits.size() == 2 && qubits[0] == qubits[1]) {
    throw InvalidArgument(name + " operands must be distinct");
  }
  if (param.has_value() != (kind == GateKind::CP)) {
    throw InvalidArgument(kind == GateKind::CP ? "CP requires an angle"
                                               : name + " takes no parameter");
  }
  if (param && !std::isfinite(*param)) {
    throw InvalidArgument("CP angle must be finite");
  }
}

void LogicalCircuit::validate() const {
  if (n_qubits < 1) throw InvalidArgument("circuit needs at least one qubit");
  std::vector<bool> measured(static_cast<std::size_t>(n_qubits), false);
  for (std::size_t i = 0; i < instructions.size(); ++i) {
    const Gate& g = instructions[i];
    g.validate();
    for (int q : g.qubits) {
      if (q >= n_qubits) {
        throw InvalidArgument("instruction " + std::to_string(i) + " uses qubit " +
                              std::to_string(q) + " of a " +
                              std::to_string(n_qubits) + "-qubit circuit");
      }
      if (measured[static_cast<std::size_t>(q)]) {
        throw InvalidArgument("instruction " + std::to_string(i) +
                              " acts on qubit " + std::to_string(q) +
                              " after it was measured");
      }
    }
    if (g.is_measure()) measured[static_cast<std::size_t>(g.qubits[0])] = true;
  }
}

std::vector<int> LogicalCircuit::measured_qubits() const {
  std::vector<int> out;
  for (const Gate& g : instructions) {
    if (g.is_measure()) out.push_back(g.qubits[0]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int depth(const LogicalCircuit& circuit) noexcept {
  return static_cast<int>(circuit.instructions.size());
}

int depth(const PhysicalCircuit& circuit) noexcept {
  return static_cast<int>(circuit.instructions.size());
}

UsageCounts usage_counts(std::span<const Gate> instructions) {
  UsageCounts counts;
  for (const Gate& g : instructions) {
    for (int q : g.qubits) ++counts.qubit_usage[q];
    if (g.is_two_qubit()) {
      ++counts.gate_usage[normalized({g.qubits[0], g.qubits[1]})];
    }
  }
  return counts;
}

UsageCounts usage_counts(const PhysicalCircuit& circuit) {
  return usage_counts(std::span<const Gate>(circuit.instructions));
}

std::vector<int> final_layout(const PhysicalCircuit& circuit) {
  std::vector<int> position = circuit.layout;
  std::size_t next_swap = 0;
  for (std::size_t i = 0; i < circuit.instructions.size(); ++i) {
    if (next_swap >= circuit.inserted_swaps.size() ||
        circuit.inserted_swaps[next_swap] != i) {
      continue;
    }
    ++next_swap;
    const Gate& g = circuit.instructions[i];
    const int a = g.qubits.at(0);
    const int b = g.qubits.at(1);
    for (int& p : position) {
      if (p == a) {
        p = b;
      } else if (p == b) {
        p = a;
      }
    }
  }
  return position;
}

std::set<Edge> logical_edge_signature(const PhysicalCircuit& circuit) {
  std::set<Edge> edges;
  std::size_t next_swap = 0;
  for (std::size_t i = 0; i < circuit.instructions.size(); ++i) {
    if (next_swap < circuit.inserted_swaps.size() &&
        circuit.inserted_swaps[next_swap] == i) {
      ++next_swap;
      continue;
    }
    const Gate& g = circuit.instructions[i];
    if (g.is_two_qubit()) edges.insert(normalized({g.qubits[0], g.qubits[1]}));
  }
  return edges;
}

// -- outcome distributions --------------------------------------------------

std::string_view to_string(DistributionKind kind) {
  return kind == DistributionKind::exact_probability ? "exact_probability"
                                                     : "shot_counts";
}

DistributionKind distribution_kind_from_string(std::string_view name) {
  if (name == "exact_probability") return DistributionKind::exact_probability;
  if (name == "shot_counts") return DistributionKind::shot_counts;
  throw InvalidArgument("unknown distribution kind '" + std::string(name) + "'");
}

void OutcomeDistribution::validate() const {
  if (n_bits < 1) throw InvalidArgument("distribution needs n_bits >= 1");
  double total = 0.0;
  for (const auto& [bits, value] : entries) {
    if (static_cast<int>(bits.size()) != n_bits ||
        bits.find_first_not_of("01") != std::string::npos) {
      throw InvalidArgument("bitstring '" + bits + "' does not have " +
                            std::to_string(n_bits) + " binary digits");
    }
    if (!(value >= 0.0)) throw InvalidArgument("negative entry for '" + bits + "'");
    total += value;
  }
  if (kind == DistributionKind::exact_probability) {
    if (std::abs(total - 1.0) > 1e-9) {
      throw InvalidArgument("probabilities sum to " + std::to_string(total));
    }
  } else {
    if (!total_shots || *total_shots == 0) {
      throw InvalidArgument("shot_counts distribution needs total_shots > 0");
    }
    if (total != static_cast<double>(*total_shots)) {
      throw InvalidArgument("shot counts sum to " + std::to_string(total) +
                            ", expected " + std::to_string(*total_shots));
    }
  }
}

std::map<std::string, double> OutcomeDistribution::probabilities() const {
  double total = 0.0;
  for (const auto& [bits, value] : entries) total += value;
  if (!(total > 0.0)) throw InvalidArgument("distribution has zero total");
  std::map<std::string, double> out;
  for (const auto& [bits, value] : entries) out.emplace(bits, value / total);
  return out;
}

// -- JSON -------------------------------------------------------------------

std::string edge_key(Edge e) {
  return std::to_string(e.first) + "-" + std::to_string(e.second);
}

Edge parse_edge_key(std::string_view key) {
  const auto dash = key.find('-');
  Edge e{-1, -1};
  if (dash != std::string_view::npos) {
    auto r1 = std::from_chars(key.data(), key.data() + dash, e.first);
    auto r2 = std::from_chars(key.data() + dash + 1, key.data() + key.size(), e.second);
    if (r1.ec == std::errc{} && r2.ec == std::errc{} &&
        r2.ptr == key.data() + key.size() && r1.ptr == key.data() + dash) {
      return e;
    }
  }
  throw InvalidArgument("malformed edge key '" + std::string(key) + "'");
}

void to_json(json& j, const Gate& gate) {
  j = json{{"kind", to_string(gate.kind)}, {"qubits", gate.qubits}};
  if (gate.param) j["param"] = *gate.param;
}

void from_json(const json& j, Gate& gate) {
  gate.kind = gate_kind_from_string(j.at("kind").get<std::string>());
  gate.qubits = j.at("qubits").get<std::vector<int>>();
  gate.param.reset();
  if (auto it = j.find("param"); it != j.end() && !it->is_null()) {
    gate.param = it->get<double>();
  }
  gate.validate();
}

void to_json(json& j, const LogicalCircuit& circuit) {
  j = json{{"name", circuit.name},
           {"n_qubits", circuit.n_qubits},
           {"instructions", circuit.instructions}};
}

void from_json(const json& j, LogicalCircuit& circuit) {
  circuit.name = j.at("name").get<std::string>();
  circuit.n_qubits = j.at("n_qubits").get<int>();
  circuit.instructions = j.at("instructions").get<std::vector<Gate>>();
  circuit.validate();
}

void to_json(json& j, const PhysicalCircuit& circuit) {
  json layout = json::object();
  for (std::size_t l = 0; l < circuit.layout.size(); ++l) {
    layout[std::to_string(l)] = circuit.layout[l];
  }
  json qubit_usage = json::object();
  for (const auto& [q, n] : circuit.qubit_usage) qubit_usage[std::to_string(q)] = n;
  json gate_usage = json::object();
  for (const auto& [e, n] : circuit.gate_usage) gate_usage[edge_key(e)] = n;

  j = json{{"id", circuit.id},
           {"name", circuit.source_name},
           {"computer_id", circuit.computer_id},
           {"n_qubits", circuit.n_qubits},
           {"layout", std::move(layout)},
           {"instructions", circuit.instructions},
           {"inserted_swaps", circuit.inserted_swaps},
           {"depth", circuit.depth},
           {"qubit_usage", std::move(qubit_usage)},
           {"gate_usage", std::move(gate_usage)}};
}

void from_json(const json& j, PhysicalCircuit& circuit) {
  circuit.id = j.at("id").get<std::string>();
  circuit.source_name = j.at("name").get<std::string>();
  circuit.computer_id = j.at("computer_id").get<std::string>();
  circuit.n_qubits = j.at("n_qubits").get<int>();

  const json& layout = j.at("layout");
  circuit.layout.assign(layout.size(), -1);
  for (const auto& [key, value] : layout.items()) {
    const auto l = static_cast<std::size_t>(std::stoul(key));
    if (l >= circuit.layout.size()) throw InvalidArgument("layout key out of range");
    circuit.layout[l] = value.get<int>();
  }
  circuit.instructions = j.at("instructions").get<std::vector<Gate>>();
  circuit.inserted_swaps = j.value("inserted_swaps", std::vector<std::size_t>{});
  circuit.depth = j.at("depth").get<int>();

  circuit.qubit_usage.clear();
  for (const auto& [key, value] : j.at("qubit_usage").items()) {
    circuit.qubit_usage[std::stoi(key)] = value.get<int>();
  }
  circuit.gate_usage.clear();
  for (const auto& [key, value] : j.at("gate_usage").items()) {
    circuit.gate_usage[normalized(parse_edge_key(key))] = value.get<int>();
  }
}

void to_json(json& j, const OutcomeDistribution& dist) {
  json entries = json::object();
  for (const auto& [bits, value] : dist.entries) {
    if (dist.kind == DistributionKind::shot_counts) {
      entries[bits] = static_cast<std::uint64_t>(value);
    } else {
      entries[bits] = value;
    }
  }
  j = json{{"n_bits", dist.n_bits},
           {"kind", to_string(dist.kind)},
           {"entries", std::move(entries)}};
  if (dist.total_shots) j["total_shots"] = *dist.total_shots;
}

void from_json(const json& j, OutcomeDistribution& dist) {
  dist.n_bits = j.at("n_bits").get<int>();
  dist.kind = distribution_kind_from_string(j.at("kind").get<std::string>());
  dist.entries.clear();
  for (const auto& [bits, value] : j.at("entries").items()) {
    dist.entries[bits] = value.get<double>();
  }
  dist.total_shots.reset();
  if (auto it = j.find("total_shots"); it != j.end() && !it->is_null()) {
    dist.total_shots = it->get<std::uint64_t>();
  }
  dist.validate();
}

}  // namespace qnp
