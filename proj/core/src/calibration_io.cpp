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

#include <algorithm>
#include <map>

#include "calibration_internal.hpp"
#include "qnp/calibration.hpp"
#include "qnp/error.hpp"
#include "qnp/io.hpp"

namespace qnp {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const json& field(const json& obj, const char* key, const std::string& file,
                  const std::string& path) {
  if (!obj.is_object()) throw IngestError(file, path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw IngestError(file, path.empty() ? key : path + "." + key,
                      "missing field");
  }
  return *it;
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

double number(const json& obj, const char* key, const std::string& file,
              const std::string& path) {
  const json& v = field(obj, key, file, path);
  if (!v.is_number()) throw IngestError(file, join(path, key), "expected a number");
  return v.get<double>();
}

std::int64_t integer(const json& obj, const char* key, const std::string& file,
                     const std::string& path) {
  const json& v = field(obj, key, file, path);
  if (!v.is_number_integer()) {
    throw IngestError(file, join(path, key), "expected an integer");
  }
  return v.get<std::int64_t>();
}

Edge edge_of(const json& v, const std::string& file, const std::string& path) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
      !v[1].is_number_integer()) {
    throw IngestError(file, path, "expected a pair of qubit indices");
  }
  return {v[0].get<int>(), v[1].get<int>()};
}

json parse_file(const fs::path& path) {
  if (!fs::exists(path)) throw IngestError(path.string(), "", "missing file");
  try {
    return json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw IngestError(path.string(), "", std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

json descriptor_to_json(const ComputerDescriptor& descriptor) {
  json edges = json::array();
  for (const Edge& e : descriptor.coupling_map) edges.push_back({e.first, e.second});
  return {{"id", descriptor.id},
          {"display_name", descriptor.display_name},
          {"n_qubits", descriptor.n_qubits},
          {"coupling_map", std::move(edges)}};
}

ComputerDescriptor descriptor_from_json(const json& doc, const std::string& file) {
  ComputerDescriptor d;
  const json& id = field(doc, "id", file, "");
  if (!id.is_string()) throw IngestError(file, "id", "expected a string");
  d.id = id.get<std::string>();
  auto name = doc.find("display_name");
  d.display_name = name != doc.end() && name->is_string()
                       ? name->get<std::string>()
                       : d.id;
  d.n_qubits = static_cast<int>(integer(doc, "n_qubits", file, ""));
  const json& edges = field(doc, "coupling_map", file, "");
  if (!edges.is_array()) throw IngestError(file, "coupling_map", "expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    d.coupling_map.push_back(
        edge_of(edges[i], file, "coupling_map[" + std::to_string(i) + "]"));
  }
  try {
    d.validate();
  } catch (const InvalidArgument& e) {
    throw IngestError(file, "coupling_map", e.what());
  }
  return d;
}

json snapshot_to_json(const CalibrationSnapshot& snapshot) {
  json qubits = json::array();
  for (const QubitCalibration& q : snapshot.qubits) {
    qubits.push_back({{"qubit", q.qubit},
                      {"t1_us", q.t1_us},
                      {"t2_us", q.t2_us},
                      {"readout_error", q.readout_error},
                      {"sq_gate_error", q.sq_gate_error}});
  }
  json gates = json::array();
  for (const GateCalibration& g : snapshot.gates) {
    gates.push_back({{"edge", {g.edge.first, g.edge.second}}, {"cx_error", g.cx_error}});
  }
  return {{"qubits", std::move(qubits)},
          {"gates", std::move(gates)},
          {"queue_length", snapshot.queue_length}};
}

CalibrationSnapshot snapshot_from_json(const json& doc, std::string computer_id,
                                       Date date, const std::string& file) {
  CalibrationSnapshot s;
  s.computer_id = std::move(computer_id);
  s.date = date;

  const json& qubits = field(doc, "qubits", file, "");
  if (!qubits.is_array()) throw IngestError(file, "qubits", "expected an array");
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    const std::string at = "qubits[" + std::to_string(i) + "]";
    const json& q = qubits[i];
    QubitCalibration c;
    c.qubit = static_cast<int>(integer(q, "qubit", file, at));
    c.t1_us = number(q, "t1_us", file, at);
    c.t2_us = number(q, "t2_us", file, at);
    c.readout_error = number(q, "readout_error", file, at);
    c.sq_gate_error = number(q, "sq_gate_error", file, at);
    s.qubits.push_back(c);
  }
  std::stable_sort(s.qubits.begin(), s.qubits.end(),
                   [](const auto& a, const auto& b) { return a.qubit < b.qubit; });

  const json& gates = field(doc, "gates", file, "");
  if (!gates.is_array()) throw IngestError(file, "gates", "expected an array");
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const std::string at = "gates[" + std::to_string(i) + "]";
    GateCalibration g;
    g.edge = edge_of(field(gates[i], "edge", file, at), file, at + ".edge");
    g.cx_error = number(gates[i], "cx_error", file, at);
    s.gates.push_back(g);
  }
  s.queue_length = integer(doc, "queue_length", file, "");
  return s;
}

ComputerRecord load_computer(const fs::path& dir) {
  const fs::path descriptor_path = dir / "descriptor.json";
  ComputerRecord record;
  record.descriptor =
      descriptor_from_json(parse_file(descriptor_path), descriptor_path.string());
  record.series.computer_id = record.descriptor.id;

  const fs::path calibration = dir / "calibration";
  if (!fs::is_directory(calibration)) return record;

  std::map<Date, std::string> seen;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(calibration)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  for (const fs::path& file : files) {
    const std::string name = file.string();
    Date date;
    try {
      date = parse_date(file.stem().string());
    } catch (const InvalidArgument& e) {
      throw IngestError(name, "", std::string("file name is not a date: ") + e.what());
    }
    if (auto [it, inserted] = seen.emplace(date, name); !inserted) {
      throw IngestError(name, "", "duplicate date " + format_date(date) +
                                      " (also in " + it->second + ")");
    }
    CalibrationSnapshot snapshot =
        snapshot_from_json(parse_file(file), record.descriptor.id, date, name);
    if (auto v = detail::find_violation(snapshot, record.descriptor)) {
      throw IngestError(name, v->field, v->reason);
    }
    record.series.snapshots.push_back(std::move(snapshot));
  }
  std::sort(record.series.snapshots.begin(), record.series.snapshots.end(),
            [](const auto& a, const auto& b) { return a.date < b.date; });
  return record;
}

std::map<std::string, ComputerRecord> load_series(const fs::path& root) {
  if (!fs::is_directory(root)) {
    throw IngestError(root.string(), "", "missing calibration directory");
  }
  std::map<std::string, ComputerRecord> out;
  if (fs::exists(root / "descriptor.json")) {
    ComputerRecord record = load_computer(root);
    out.emplace(record.descriptor.id, std::move(record));
    return out;
  }

  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  for (const fs::path& dir : dirs) {
    ComputerRecord record = load_computer(dir);
    const std::string id = record.descriptor.id;
    if (!out.emplace(id, std::move(record)).second) {
      throw IngestError((dir / "descriptor.json").string(), "id",
                        "duplicate computer id '" + id + "'");
    }
  }
  return out;
}

void write_computer(const fs::path& dir, const ComputerRecord& record) {
  record.descriptor.validate();
  record.series.validate(record.descriptor);

  write_json_atomic(dir / "descriptor.json", descriptor_to_json(record.descriptor));
  const fs::path calibration = dir / "calibration";
  if (fs::is_directory(calibration)) {
    for (const auto& entry : fs::directory_iterator(calibration)) {
      if (entry.is_regular_file()) fs::remove(entry.path());
    }
  }
  fs::create_directories(calibration);
  for (const CalibrationSnapshot& s : record.series.snapshots) {
    write_json_atomic(calibration / (format_date(s.date) + ".json"),
                      snapshot_to_json(s));
  }
}

}  // namespace qnp
