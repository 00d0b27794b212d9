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

#include "qnp/calibration.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <set>

#include "calibration_internal.hpp"
#include "qnp/error.hpp"

namespace qnp {

namespace {

int parse_int(std::string_view text, std::string_view whole) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw InvalidArgument("malformed date '" + std::string(whole) + "'");
  }
  return value;
}

std::string edge_str(Edge e) {
  return "[" + std::to_string(e.first) + "," + std::to_string(e.second) + "]";
}

bool in_unit(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

Date parse_date(std::string_view text) {
  const auto d1 = text.find('-');
  const auto d2 = d1 == std::string_view::npos ? d1 : text.find('-', d1 + 1);
  if (d1 != 4 || d2 == std::string_view::npos || d2 - d1 > 3 ||
      text.size() - d2 > 3) {
    throw InvalidArgument("malformed date '" + std::string(text) + "'");
  }
  const int y = parse_int(text.substr(0, d1), text);
  const int m = parse_int(text.substr(d1 + 1, d2 - d1 - 1), text);
  const int d = parse_int(text.substr(d2 + 1), text);
  const std::chrono::year_month_day ymd{std::chrono::year{y},
                                        std::chrono::month{static_cast<unsigned>(m)},
                                        std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) throw InvalidArgument("invalid date '" + std::string(text) + "'");
  return std::chrono::sys_days{ymd};
}

std::string format_date(Date date) {
  const std::chrono::year_month_day ymd{date};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return buf;
}

// -- descriptor ---------------------------------------------------------------

void ComputerDescriptor::validate() const {
  if (id.empty()) throw InvalidArgument("computer id must not be empty");
  if (n_qubits < 1) throw InvalidArgument("n_qubits must be positive");

  std::set<Edge> seen;
  std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(n_qubits));
  for (const Edge& e : coupling_map) {
    if (e.first < 0 || e.second < 0 || e.first >= n_qubits ||
        e.second >= n_qubits) {
      throw InvalidArgument("coupling_map edge " + edge_str(e) +
                            " references a qubit outside 0.." +
                            std::to_string(n_qubits - 1));
    }
    if (e.first == e.second) {
      throw InvalidArgument("coupling_map has self edge " + edge_str(e));
    }
    if (!seen.insert(normalized(e)).second) {
      throw InvalidArgument("coupling_map has duplicate edge " + edge_str(e));
    }
    adjacency[static_cast<std::size_t>(e.first)].push_back(e.second);
    adjacency[static_cast<std::size_t>(e.second)].push_back(e.first);
  }

  // Connectivity by DFS from qubit 0.
  std::vector<bool> visited(static_cast<std::size_t>(n_qubits), false);
  std::vector<int> stack{0};
  visited[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    const int q = stack.back();
    stack.pop_back();
    for (int next : adjacency[static_cast<std::size_t>(q)]) {
      if (!visited[static_cast<std::size_t>(next)]) {
        visited[static_cast<std::size_t>(next)] = true;
        ++reached;
        stack.push_back(next);
      }
    }
  }
  if (reached != n_qubits) {
    throw InvalidArgument("coupling map of '" + id + "' is not connected");
  }
}

bool ComputerDescriptor::has_edge(int a, int b) const {
  const Edge key = normalized({a, b});
  return std::any_of(coupling_map.begin(), coupling_map.end(),
                     [&](const Edge& e) { return normalized(e) == key; });
}

ComputerDescriptor make_computer(std::string id, int n_qubits,
                                 std::vector<Edge> coupling_map) {
  ComputerDescriptor d;
  d.display_name = id;
  d.id = std::move(id);
  d.n_qubits = n_qubits;
  d.coupling_map = std::move(coupling_map);
  return d;
}

ComputerDescriptor line_computer(std::string id, int n_qubits) {
  std::vector<Edge> edges;
  for (int q = 0; q + 1 < n_qubits; ++q) edges.emplace_back(q, q + 1);
  return make_computer(std::move(id), n_qubits, std::move(edges));
}

// -- snapshot -----------------------------------------------------------------

namespace detail {

std::optional<Violation> find_violation(const CalibrationSnapshot& snapshot,
                                        const ComputerDescriptor& descriptor) {
  if (snapshot.qubits.size() != static_cast<std::size_t>(descriptor.n_qubits)) {
    return Violation{"qubits", "expected " + std::to_string(descriptor.n_qubits) +
                                   " qubits, found " +
                                   std::to_string(snapshot.qubits.size())};
  }
  for (std::size_t i = 0; i < snapshot.qubits.size(); ++i) {
    const QubitCalibration& q = snapshot.qubits[i];
    const std::string at = "qubits[" + std::to_string(i) + "]";
    const std::string who = " (qubit " + std::to_string(q.qubit) + ")";
    if (q.qubit != static_cast<int>(i)) {
      return Violation{at + ".qubit", "qubits must be listed once each in index "
                                      "order; found qubit " +
                                          std::to_string(q.qubit)};
    }
    if (!(q.t1_us > 0.0)) return Violation{at + ".t1_us", "must be > 0" + who};
    if (!(q.t2_us > 0.0)) return Violation{at + ".t2_us", "must be > 0" + who};
    if (q.t2_us > 2.0 * q.t1_us) {
      return Violation{at + ".t2_us", "t2 " + std::to_string(q.t2_us) +
                                          " exceeds 2*t1 " +
                                          std::to_string(2.0 * q.t1_us) + who};
    }
    if (!in_unit(q.readout_error)) {
      return Violation{at + ".readout_error",
                       std::to_string(q.readout_error) + " outside [0,1]" + who};
    }
    if (!in_unit(q.sq_gate_error)) {
      return Violation{at + ".sq_gate_error",
                       std::to_string(q.sq_gate_error) + " outside [0,1]" + who};
    }
  }

  std::set<Edge> covered;
  for (std::size_t i = 0; i < snapshot.gates.size(); ++i) {
    const GateCalibration& g = snapshot.gates[i];
    const std::string at = "gates[" + std::to_string(i) + "]";
    if (!descriptor.has_edge(g.edge.first, g.edge.second)) {
      return Violation{at + ".edge",
                       "edge " + edge_str(g.edge) + " is not in the coupling map"};
    }
    if (!covered.insert(normalized(g.edge)).second) {
      return Violation{at + ".edge", "edge " + edge_str(g.edge) + " listed twice"};
    }
    if (!in_unit(g.cx_error)) {
      return Violation{at + ".cx_error", std::to_string(g.cx_error) +
                                             " outside [0,1] on edge " +
                                             edge_str(g.edge)};
    }
  }
  if (covered.size() != descriptor.coupling_map.size()) {
    return Violation{"gates", "gate calibration covers " +
                                  std::to_string(covered.size()) + " of " +
                                  std::to_string(descriptor.coupling_map.size()) +
                                  " coupling edges"};
  }
  if (snapshot.queue_length < 0) {
    return Violation{"queue_length", "must be non-negative"};
  }
  return std::nullopt;
}

}  // namespace detail

void CalibrationSnapshot::validate(const ComputerDescriptor& descriptor) const {
  if (auto v = detail::find_violation(*this, descriptor)) {
    throw InvalidArgument(format_date(date) + ": " + v->field + ": " + v->reason);
  }
}

const QubitCalibration& CalibrationSnapshot::qubit(int q) const {
  if (q < 0 || static_cast<std::size_t>(q) >= qubits.size()) {
    throw NotFound("no calibration for qubit " + std::to_string(q));
  }
  return qubits[static_cast<std::size_t>(q)];
}

double CalibrationSnapshot::cx_error(int a, int b) const {
  const Edge key = normalized({a, b});
  for (const GateCalibration& g : gates) {
    if (normalized(g.edge) == key) return g.cx_error;
  }
  throw NotFound("no gate calibration for edge " + edge_str(key) + " on '" +
                 computer_id + "'");
}

// -- series -------------------------------------------------------------------

void CalibrationSeries::validate(const ComputerDescriptor& descriptor) const {
  for (std::size_t i = 0; i < snapshots.size(); ++i) {
    if (i > 0 && !(snapshots[i - 1].date < snapshots[i].date)) {
      throw InvalidArgument("snapshot dates must be strictly increasing (" +
                            format_date(snapshots[i - 1].date) + " then " +
                            format_date(snapshots[i].date) + ")");
    }
    snapshots[i].validate(descriptor);
  }
}

const CalibrationSnapshot& CalibrationSeries::latest() const {
  if (snapshots.empty()) {
    throw NotFound("computer '" + computer_id + "' has no calibration data");
  }
  return snapshots.back();
}

// -- attributes -----------------------------------------------------------------

std::string_view to_string(NoiseAttribute attribute) {
  switch (attribute) {
    case NoiseAttribute::t1: return "t1";
    case NoiseAttribute::t2: return "t2";
    case NoiseAttribute::readout_error: return "readout_error";
    case NoiseAttribute::sq_gate_error: return "sq_gate_error";
  }
  return "?";
}

NoiseAttribute noise_attribute_from_string(std::string_view name) {
  for (auto a : {NoiseAttribute::t1, NoiseAttribute::t2,
                 NoiseAttribute::readout_error, NoiseAttribute::sq_gate_error}) {
    if (to_string(a) == name) return a;
  }
  throw InvalidArgument("unknown noise attribute '" + std::string(name) + "'");
}

std::vector<double> qubit_values(const CalibrationSnapshot& snapshot,
                                 NoiseAttribute attribute) {
  std::vector<double> out;
  out.reserve(snapshot.qubits.size());
  for (const QubitCalibration& q : snapshot.qubits) {
    switch (attribute) {
      case NoiseAttribute::t1: out.push_back(q.t1_us); break;
      case NoiseAttribute::t2: out.push_back(q.t2_us); break;
      case NoiseAttribute::readout_error: out.push_back(q.readout_error); break;
      case NoiseAttribute::sq_gate_error: out.push_back(q.sq_gate_error); break;
    }
  }
  return out;
}

std::vector<double> gate_errors(const CalibrationSnapshot& snapshot) {
  std::vector<double> out;
  out.reserve(snapshot.gates.size());
  for (const GateCalibration& g : snapshot.gates) out.push_back(g.cx_error);
  return out;
}

// -- slicing ------------------------------------------------------------------

std::vector<CalibrationSlice> slice_series(const CalibrationSeries& series,
                                           int range_days, int interval_days) {
  if (series.empty()) throw InvalidArgument("cannot slice an empty series");
  if (interval_days < 1 || range_days < interval_days) {
    throw InvalidArgument("slice_series requires range_days >= interval_days >= 1");
  }

  const int count = (range_days + interval_days - 1) / interval_days;
  const Date latest = series.snapshots.back().date;
  const auto& snaps = series.snapshots;

  std::vector<CalibrationSlice> slices;
  slices.reserve(static_cast<std::size_t>(count));
  for (int k = count - 1; k >= 0; --k) {
    CalibrationSlice slice;
    slice.boundary = latest - std::chrono::days{k * interval_days};
    auto it = std::upper_bound(
        snaps.begin(), snaps.end(), slice.boundary,
        [](Date d, const CalibrationSnapshot& s) { return d < s.date; });
    if (it != snaps.begin()) slice.snapshot = *std::prev(it);
    slices.push_back(std::move(slice));
  }
  return slices;
}

}  // namespace qnp
