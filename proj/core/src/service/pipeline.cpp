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

#include "qnp/service/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "qnp/algorithms.hpp"
#include "qnp/io.hpp"
#include "qnp/rng.hpp"
#include "qnp/simulator.hpp"
#include "qnp/statistics.hpp"
#include "qnp/transpiler.hpp"

namespace qnp {

using nlohmann::json;

namespace {

std::string hex_id(std::string_view prefix, const json& content) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(content.dump())));
  return std::string(prefix) + buf;
}

const CalibrationSnapshot& latest_snapshot(const ComputerRecord& record) {
  if (record.series.empty()) {
    throw InvalidArgument("computer '" + record.descriptor.id + "' has no calibration data");
  }
  return record.series.latest();
}

template <typename T>
std::optional<T> optional_field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

}  // namespace

void to_json(json& j, const CompileParams& p) {
  j = json{{"algorithm", p.algorithm},
           {"n", p.n ? json(*p.n) : json(nullptr)},
           {"computer_id", p.computer_id},
           {"n_compilations", p.n_compilations},
           {"seed", p.seed},
           {"qubit_attribute", to_string(p.qubit_attribute)}};
}

void from_json(const json& j, CompileParams& p) {
  p.algorithm = j.at("algorithm").get<std::string>();
  p.n = optional_field<int>(j, "n");
  p.computer_id = j.at("computer_id").get<std::string>();
  p.n_compilations = j.value("n_compilations", 1);
  p.seed = optional_field<std::uint64_t>(j, "seed").value_or(0);
  p.qubit_attribute = qubit_score_attribute_from_string(
      optional_field<std::string>(j, "qubit_attribute").value_or("readout_error"));
}

void to_json(json& j, const BatchDocument& d) {
  j = json{{"id", d.id},
           {"request", d.request},
           {"snapshot_date", d.snapshot_date},
           {"logical", d.logical},
           {"circuits", d.circuits},
           {"summary", d.summary}};
}

void from_json(const json& j, BatchDocument& d) {
  d.id = j.at("id").get<std::string>();
  d.request = j.at("request").get<CompileParams>();
  d.snapshot_date = j.at("snapshot_date").get<std::string>();
  d.logical = j.at("logical").get<LogicalCircuit>();
  d.circuits = j.at("circuits").get<std::vector<PhysicalCircuit>>();
  d.summary = j.at("summary").get<BatchScoreSummary>();
}

void to_json(json& j, const RunParams& p) {
  j = json{{"batch_id", p.batch_id},
           {"circuit_ids", p.circuit_ids},
           {"shots", p.shots},
           {"seed", p.seed},
           {"noiseless", p.noiseless}};
}

void from_json(const json& j, RunParams& p) {
  p.batch_id = j.at("batch_id").get<std::string>();
  p.circuit_ids = j.at("circuit_ids").get<std::vector<std::string>>();
  const json& shots = j.contains("shots") ? j.at("shots") : json(kDefaultShots);
  if (!shots.is_number_integer() || shots.get<long long>() < 1) {
    throw InvalidArgument("shots must be a positive integer");
  }
  p.shots = shots.get<std::uint64_t>();
  p.seed = optional_field<std::uint64_t>(j, "seed").value_or(0);
  p.noiseless = j.value("noiseless", false);
}

void to_json(json& j, const RunDocument& d) {
  j = json{{"id", d.id},
           {"request", d.request},
           {"snapshot_date", d.snapshot_date},
           {"results", d.results}};
}

void from_json(const json& j, RunDocument& d) {
  d.id = j.at("id").get<std::string>();
  d.request = j.at("request").get<RunParams>();
  d.snapshot_date = j.at("snapshot_date").get<std::string>();
  d.results = j.at("results").get<std::vector<FidelityResult>>();
}

void to_json(json& j, const SeedParams& p) {
  json computers = json::array();
  for (const auto& c : p.computers) computers.push_back(descriptor_to_json(c));
  j = json{{"computers", computers},
           {"seed", p.seed},
           {"days", p.days},
           {"suspension_prob", p.suspension_prob},
           {"start", format_date(p.start)}};
}

void from_json(const json& j, SeedParams& p) {
  const json& list = j.contains("computers") ? j.at("computers") : j.at("descriptors");
  if (!list.is_array()) throw InvalidArgument("computers must be an array of descriptors");
  p.computers.clear();
  for (const json& c : list) p.computers.push_back(descriptor_from_json(c));
  p.seed = j.value("seed", std::uint64_t{42});
  p.days = j.value("days", 30);
  p.suspension_prob = j.value("suspension_prob", 0.1);
  if (auto start = optional_field<std::string>(j, "start")) {
    p.start = parse_date(*start);
  } else {
    p.start = default_synthetic_start();
  }
}

void validate_compile(const Store& store, const CompileParams& params) {
  const ComputerRecord record = store.get_computer(params.computer_id);
  const LogicalCircuit logical = build_algorithm(params.algorithm, params.n);
  CompileRequest request{logical, record.descriptor, params.n_compilations, params.seed};
  request.validate();
  latest_snapshot(record);
}

void validate_run(const Store& store, const RunParams& params) {
  if (params.circuit_ids.empty() || params.circuit_ids.size() > kMaxRunCircuits) {
    throw InvalidArgument("circuit_ids must hold 1.." + std::to_string(kMaxRunCircuits) + " ids");
  }
  if (params.shots < 1) throw InvalidArgument("shots must be at least 1");
  const std::set<std::string> unique(params.circuit_ids.begin(), params.circuit_ids.end());
  if (unique.size() != params.circuit_ids.size()) {
    throw InvalidArgument("circuit_ids contains duplicates");
  }
  const auto batch = store.get(Store::Collection::batches, params.batch_id).get<BatchDocument>();
  for (const std::string& id : params.circuit_ids) {
    const bool known = std::any_of(batch.circuits.begin(), batch.circuits.end(),
                                   [&](const PhysicalCircuit& c) { return c.id == id; });
    if (!known) {
      throw NotFound("batch '" + params.batch_id + "' has no circuit '" + id + "'");
    }
  }
  latest_snapshot(store.get_computer(batch.request.computer_id));
}

void validate_seed(const SeedParams& params) {
  if (params.computers.empty()) throw InvalidArgument("seed needs at least one computer");
  if (params.days < 1) throw InvalidArgument("days must be at least 1");
  if (!(params.suspension_prob >= 0.0 && params.suspension_prob <= 1.0)) {
    throw InvalidArgument("suspension_prob must be in [0, 1]");
  }
  std::set<std::string> ids;
  for (const ComputerDescriptor& d : params.computers) {
    d.validate();
    if (!Store::is_valid_id(d.id)) throw InvalidArgument("invalid computer id '" + d.id + "'");
    if (!ids.insert(d.id).second) throw InvalidArgument("duplicate computer id '" + d.id + "'");
  }
}

BatchDocument execute_compile(Store& store, const CompileParams& params) {
  const ComputerRecord record = store.get_computer(params.computer_id);
  const CalibrationSnapshot& snapshot = latest_snapshot(record);

  BatchDocument doc;
  doc.request = params;
  doc.snapshot_date = format_date(snapshot.date);
  doc.logical = build_algorithm(params.algorithm, params.n);
  CompileBatch batch = compile_batch(
      CompileRequest{doc.logical, record.descriptor, params.n_compilations, params.seed});
  doc.circuits = std::move(batch.circuits);

  std::vector<ScoreReport> reports;
  reports.reserve(doc.circuits.size());
  for (const PhysicalCircuit& c : doc.circuits) {
    reports.push_back(score_circuit(c, snapshot, params.qubit_attribute));
  }
  doc.summary = summarize_batch(std::move(reports));
  doc.id = hex_id("batch_", json{{"request", params},
                                 {"descriptor", descriptor_to_json(record.descriptor)},
                                 {"snapshot", snapshot_to_json(snapshot)},
                                 {"date", doc.snapshot_date}});
  store.put(Store::Collection::batches, doc.id, doc);
  return doc;
}

RunDocument execute_run(Store& store, const RunParams& params,
                        const std::function<bool()>& cancelled) {
  validate_run(store, params);
  const auto batch = store.get(Store::Collection::batches, params.batch_id).get<BatchDocument>();
  const ComputerRecord record = store.get_computer(batch.request.computer_id);
  const CalibrationSnapshot& snapshot = latest_snapshot(record);
  const NoiseModel noise = params.noiseless
                               ? NoiseModel::noiseless(record.descriptor.n_qubits,
                                                       record.descriptor.coupling_map)
                               : NoiseModel::from_snapshot(snapshot);

  RunDocument doc;
  doc.request = params;
  doc.snapshot_date = format_date(snapshot.date);
  const OutcomeDistribution ideal = run_ideal(batch.logical);
  for (const std::string& id : params.circuit_ids) {
    if (cancelled && cancelled()) throw Cancelled("run cancelled");
    const auto it = std::find_if(batch.circuits.begin(), batch.circuits.end(),
                                 [&](const PhysicalCircuit& c) { return c.id == id; });
    OutcomeDistribution observed =
        run_noisy(*it, noise, params.shots, derive_seed(params.seed, fnv1a64(id)));
    doc.results.push_back(make_fidelity_result(id, ideal, std::move(observed)));
  }
  doc.id = hex_id("run_", json{{"request", params},
                               {"batch", batch.id},
                               {"snapshot", snapshot_to_json(snapshot)},
                               {"date", doc.snapshot_date}});
  store.put(Store::Collection::results, doc.id, doc);
  return doc;
}

std::vector<std::string> execute_seed(Store& store, const SeedParams& params) {
  validate_seed(params);
  std::vector<std::string> ids;
  for (const ComputerDescriptor& d : params.computers) {
    ComputerRecord record;
    record.descriptor = d;
    record.series = generate_synthetic(d, derive_seed(params.seed, fnv1a64(d.id)), params.days,
                                       params.suspension_prob, params.start);
    store.put_computer(record);
    ids.push_back(d.id);
  }
  return ids;
}

json computer_summary(const ComputerRecord& record) {
  json j{{"descriptor", descriptor_to_json(record.descriptor)},
         {"queue_length", nullptr},
         {"latest_snapshot_date", nullptr},
         {"n_snapshots", record.series.snapshots.size()}};
  if (!record.series.empty()) {
    const CalibrationSnapshot& s = record.series.latest();
    j["queue_length"] = s.queue_length;
    j["latest_snapshot_date"] = format_date(s.date);
  }
  return j;
}

json calibration_view(const ComputerRecord& record, int range_days, int interval_days,
                      NoiseAttribute attribute) {
  if (interval_days < 1 || range_days < interval_days) {
    throw InvalidArgument("calibration view requires range_days >= interval_days >= 1");
  }
  const bool higher = higher_is_better(attribute);
  json view{{"computer_id", record.descriptor.id},
            {"range_days", range_days},
            {"interval_days", interval_days},
            {"attribute", to_string(attribute)},
            {"polarity", higher ? "higher_is_better" : "lower_is_better"},
            {"slices", json::array()},
            {"queue", json::array()}};
  if (record.series.empty()) return view;

  for (const CalibrationSlice& slice : slice_series(record.series, range_days, interval_days)) {
    json s{{"boundary", format_date(slice.boundary)}, {"present", slice.snapshot.has_value()}};
    if (!slice.snapshot) {
      view["slices"].push_back(std::move(s));
      continue;
    }
    const CalibrationSnapshot& snap = *slice.snapshot;
    s["snapshot_date"] = format_date(snap.date);
    s["queue_length"] = snap.queue_length;

    const std::vector<double> values = qubit_values(snap, attribute);
    const std::vector<double> qd = deltas(values);
    s["reference"] = reference_value(values);
    json qubits = json::array();
    for (std::size_t i = 0; i < values.size(); ++i) {
      qubits.push_back({{"qubit", snap.qubits[i].qubit},
                        {"value", values[i]},
                        {"delta", qd[i]},
                        {"better", higher ? qd[i] > 0.0 : qd[i] < 0.0}});
    }
    s["qubits"] = std::move(qubits);

    const std::vector<double> errors = gate_errors(snap);
    json gates = json::array();
    if (!errors.empty()) {
      const std::vector<double> gd = deltas(errors);
      s["gate_reference"] = reference_value(errors);
      for (std::size_t i = 0; i < errors.size(); ++i) {
        gates.push_back({{"edge", edge_key(snap.gates[i].edge)},
                         {"cx_error", errors[i]},
                         {"delta", gd[i]},
                         {"better", gd[i] < 0.0}});
      }
      const KdeInput input = default_kde_input(errors);
      json points = json::array();
      for (const KdePoint& p : kde(input)) points.push_back({{"x", p.x}, {"density", p.density}});
      s["kde"] = {{"bandwidth", input.bandwidth}, {"points", std::move(points)}};
    } else {
      s["gate_reference"] = nullptr;
      s["kde"] = nullptr;
    }
    s["gates"] = std::move(gates);
    view["slices"].push_back(std::move(s));
  }

  const Date first = record.series.latest().date - std::chrono::days{range_days - 1};
  for (const CalibrationSnapshot& snap : record.series.snapshots) {
    if (snap.date >= first) {
      view["queue"].push_back({{"date", format_date(snap.date)}, {"queue_length", snap.queue_length}});
    }
  }
  return view;
}

json batch_view(const BatchDocument& batch, const BatchQuery& query) {
  std::vector<std::string> order;
  if (query.sort) {
    order = sort_and_filter(batch.summary, *query.sort, query.axis, query.min_score,
                            query.max_score);
  } else {
    // Filter only, keeping compilation order.
    order = sort_and_filter(batch.summary, SortKey::depth, query.axis, query.min_score,
                            query.max_score);
    std::set<std::string> kept(order.begin(), order.end());
    order.clear();
    for (const ScoreReport& r : batch.summary.reports) {
      if (kept.count(r.circuit_id)) order.push_back(r.circuit_id);
    }
  }

  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < batch.circuits.size(); ++i) index[batch.circuits[i].id] = i;

  std::map<int, double> qubit_total;
  std::map<std::string, double> gate_total;
  for (const PhysicalCircuit& c : batch.circuits) {
    for (const auto& [q, n] : c.qubit_usage) qubit_total[q] += n;
    for (const auto& [e, n] : c.gate_usage) gate_total[edge_key(e)] += n;
  }
  const auto count = static_cast<double>(batch.circuits.size());
  json avg_qubit = json::object();
  for (const auto& [q, total] : qubit_total) avg_qubit[std::to_string(q)] = total / count;
  json avg_gate = json::object();
  for (const auto& [e, total] : gate_total) avg_gate[e] = total / count;

  json circuits = json::array();
  for (const std::string& id : order) {
    const std::size_t i = index.at(id);
    const ScoreReport& r = batch.summary.reports[i];
    circuits.push_back({{"id", id},
                        {"qubit_score", r.qubit_score},
                        {"gate_score", r.gate_score},
                        {"qubit_delta", r.qubit_score - batch.summary.qubit_reference},
                        {"gate_delta", r.gate_score - batch.summary.gate_reference},
                        {"depth", r.depth},
                        {"circuit", batch.circuits[i]}});
  }

  return json{{"id", batch.id},
              {"computer_id", batch.request.computer_id},
              {"algorithm", batch.request.algorithm},
              {"request", batch.request},
              {"snapshot_date", batch.snapshot_date},
              {"sort", query.sort ? json(to_string(*query.sort)) : json(nullptr)},
              {"axis", to_string(query.axis)},
              {"qubit_reference", batch.summary.qubit_reference},
              {"gate_reference", batch.summary.gate_reference},
              {"average_qubit_usage", std::move(avg_qubit)},
              {"average_gate_usage", std::move(avg_gate)},
              {"logical", batch.logical},
              {"n_total", batch.circuits.size()},
              {"circuits", std::move(circuits)}};
}

}  // namespace qnp
