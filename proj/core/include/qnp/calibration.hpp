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
 * @file calibration.hpp
 * @brief Calibration data model for simulated quantum computers.
 *
 * A computer is described by its qubit count and undirected coupling map.
 * Each day it publishes a CalibrationSnapshot: per-qubit coherence times,
 * readout and single-qubit gate errors, per-edge CX errors, and the current
 * job queue length. A CalibrationSeries is the date-ordered history of those
 * snapshots; days without a snapshot are allowed (the device was suspended
 * or calibration was stale).
 *
 * Fixture layout on disk (also used by the service store):
 *
 *     <root>/<computer>/descriptor.json
 *     <root>/<computer>/calibration/YYYY-MM-DD.json
 */

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace qnp {

/// Calendar date (UTC); calibration has day resolution.
using Date = std::chrono::sys_days;

/// Parses `YYYY-MM-DD` (month and day may omit the leading zero).
Date parse_date(std::string_view text);
std::string format_date(Date date);

/// A pair of physical qubit indices. Coupling-map edges are stored
/// normalized (smaller index first); gate calibration edges keep the
/// direction they were reported with.
using Edge = std::pair<int, int>;

constexpr Edge normalized(Edge e) noexcept {
  return e.first <= e.second ? e : Edge{e.second, e.first};
}

struct ComputerDescriptor {
  std::string id;
  std::string display_name;
  int n_qubits = 0;
  std::vector<Edge> coupling_map;

  /// Throws InvalidArgument on out-of-range indices, self edges, duplicate
  /// edges, or a disconnected coupling graph.
  void validate() const;
  bool has_edge(int a, int b) const;
};

/// Convenience factories for common topologies.
ComputerDescriptor line_computer(std::string id, int n_qubits);
ComputerDescriptor make_computer(std::string id, int n_qubits,
                                 std::vector<Edge> coupling_map);

struct QubitCalibration {
  int qubit = 0;
  double t1_us = 0.0;
  double t2_us = 0.0;
  double readout_error = 0.0;
  double sq_gate_error = 0.0;

  friend bool operator==(const QubitCalibration&,
                         const QubitCalibration&) = default;
};

struct GateCalibration {
  Edge edge;
  double cx_error = 0.0;

  friend bool operator==(const GateCalibration&,
                         const GateCalibration&) = default;
};

struct CalibrationSnapshot {
  std::string computer_id;
  Date date;
  std::vector<QubitCalibration> qubits;  ///< qubits[i].qubit == i
  std::vector<GateCalibration> gates;
  std::int64_t queue_length = 0;

  void validate(const ComputerDescriptor& descriptor) const;

  const QubitCalibration& qubit(int q) const;
  /// CX error of the coupling edge {a, b} in either direction.
  double cx_error(int a, int b) const;

  friend bool operator==(const CalibrationSnapshot&,
                         const CalibrationSnapshot&) = default;
};

struct CalibrationSeries {
  std::string computer_id;
  std::vector<CalibrationSnapshot> snapshots;  ///< strictly increasing dates

  void validate(const ComputerDescriptor& descriptor) const;
  bool empty() const noexcept { return snapshots.empty(); }
  const CalibrationSnapshot& latest() const;

  friend bool operator==(const CalibrationSeries&,
                         const CalibrationSeries&) = default;
};

struct ComputerRecord {
  ComputerDescriptor descriptor;
  CalibrationSeries series;
};

/// Loads every computer directory under `root`. Each one is validated; the
/// first violation is reported as an IngestError naming file and field.
std::map<std::string, ComputerRecord> load_series(
    const std::filesystem::path& root);

/// Loads a single `<root>/<computer>` directory.
ComputerRecord load_computer(const std::filesystem::path& dir);

/// Writes a computer in fixture layout, replacing any calibration files
/// already present in `dir/calibration`.
void write_computer(const std::filesystem::path& dir,
                    const ComputerRecord& record);

// JSON documents of the fixture layout.
nlohmann::json descriptor_to_json(const ComputerDescriptor& descriptor);
ComputerDescriptor descriptor_from_json(const nlohmann::json& doc,
                                        const std::string& file = {});
nlohmann::json snapshot_to_json(const CalibrationSnapshot& snapshot);
CalibrationSnapshot snapshot_from_json(const nlohmann::json& doc,
                                       std::string computer_id, Date date,
                                       const std::string& file = {});

/// Date used as day 0 of synthetic series unless the caller picks one.
Date default_synthetic_start();

/// Seeded synthetic calibration history. Every attribute follows a
/// mean-reverting walk around a per-qubit (or per-edge) baseline, clipped to
/// physical bounds, with rare multiplicative error spikes. Day 0 is always
/// emitted; each later day is skipped with probability `suspension_prob`.
CalibrationSeries generate_synthetic(const ComputerDescriptor& descriptor,
                                     std::uint64_t seed, int days,
                                     double suspension_prob,
                                     Date start = default_synthetic_start());

/// Qubit noise attributes shown by the evolution view.
enum class NoiseAttribute { t1, t2, readout_error, sq_gate_error };

std::string_view to_string(NoiseAttribute attribute);
NoiseAttribute noise_attribute_from_string(std::string_view name);

/// Coherence times are better when larger; error rates when smaller.
constexpr bool higher_is_better(NoiseAttribute attribute) noexcept {
  return attribute == NoiseAttribute::t1 || attribute == NoiseAttribute::t2;
}

std::vector<double> qubit_values(const CalibrationSnapshot& snapshot,
                                 NoiseAttribute attribute);
std::vector<double> gate_errors(const CalibrationSnapshot& snapshot);

/// One time slice: the boundary date and the most recent snapshot at or
/// before it, or nothing when the series has no data that old.
struct CalibrationSlice {
  Date boundary;
  std::optional<CalibrationSnapshot> snapshot;
};

/// Uniform timeslicing backwards from the newest snapshot. Produces
/// ceil(range_days / interval_days) slices ordered oldest first.
std::vector<CalibrationSlice> slice_series(const CalibrationSeries& series,
                                           int range_days, int interval_days);

}  // namespace qnp
