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
 * @file pipeline.hpp
 * @brief Store-backed compile, run and seed operations plus the JSON views
 *        shared by the HTTP service and the CLI.
 *
 * Batch and run ids are content addressed: the same request against the
 * same calibration snapshot always yields the same id and the same bytes.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qnp/calibration.hpp"
#include "qnp/circuit.hpp"
#include "qnp/error.hpp"
#include "qnp/fidelity.hpp"
#include "qnp/scoring.hpp"
#include "qnp/service/store.hpp"

namespace qnp {

/// Raised when a cooperative cancellation request stops a job.
class Cancelled : public Error {
 public:
  using Error::Error;
};

struct CompileParams {
  std::string algorithm;
  std::optional<int> n;
  std::string computer_id;
  int n_compilations = 1;
  std::uint64_t seed = 0;
  QubitScoreAttribute qubit_attribute = QubitScoreAttribute::readout_error;
};

struct BatchDocument {
  std::string id;
  CompileParams request;
  std::string snapshot_date;  ///< snapshot the batch was scored against
  LogicalCircuit logical;
  std::vector<PhysicalCircuit> circuits;
  BatchScoreSummary summary;
};

inline constexpr std::size_t kMaxRunCircuits = 10;
inline constexpr std::uint64_t kDefaultShots = 1000;

struct RunParams {
  std::string batch_id;
  std::vector<std::string> circuit_ids;
  std::uint64_t shots = kDefaultShots;
  std::uint64_t seed = 0;
  bool noiseless = false;  ///< replace the snapshot by an all-zero noise model
};

struct RunDocument {
  std::string id;
  RunParams request;
  std::string snapshot_date;
  std::vector<FidelityResult> results;
};

struct SeedParams {
  std::vector<ComputerDescriptor> computers;
  std::uint64_t seed = 42;
  int days = 30;
  double suspension_prob = 0.1;
  Date start = default_synthetic_start();
};

void to_json(nlohmann::json& j, const CompileParams& p);
void from_json(const nlohmann::json& j, CompileParams& p);
void to_json(nlohmann::json& j, const BatchDocument& d);
void from_json(const nlohmann::json& j, BatchDocument& d);
void to_json(nlohmann::json& j, const RunParams& p);
void from_json(const nlohmann::json& j, RunParams& p);
void to_json(nlohmann::json& j, const RunDocument& d);
void from_json(const nlohmann::json& j, RunDocument& d);
void to_json(nlohmann::json& j, const SeedParams& p);
void from_json(const nlohmann::json& j, SeedParams& p);

/// Checks everything that can be checked before a compile job is queued.
/// Throws NotFound for an unknown computer, InvalidArgument otherwise.
void validate_compile(const Store& store, const CompileParams& params);
void validate_run(const Store& store, const RunParams& params);
void validate_seed(const SeedParams& params);

/// Compiles and scores against the latest snapshot, then persists the batch.
BatchDocument execute_compile(Store& store, const CompileParams& params);

/// Executes the selected circuits of a stored batch on the noisy simulator
/// and persists one FidelityResult per circuit. `cancelled` is polled
/// between circuits.
RunDocument execute_run(Store& store, const RunParams& params,
                        const std::function<bool()>& cancelled = {});

/// Generates and persists a synthetic series per descriptor. Each computer
/// draws from its own stream, so adding one leaves the others unchanged.
std::vector<std::string> execute_seed(Store& store, const SeedParams& params);

/// {descriptor, queue_length, latest_snapshot_date}; the last two are null
/// for a computer without calibration data.
nlohmann::json computer_summary(const ComputerRecord& record);

/// Evolution view data: per slice the raw qubit attribute with reference
/// and signed deltas, gate errors with deltas and their KDE curve, and the
/// queue length; plus the daily queue series inside the range.
nlohmann::json calibration_view(const ComputerRecord& record, int range_days, int interval_days,
                                NoiseAttribute attribute);

struct BatchQuery {
  std::optional<SortKey> sort;  ///< compilation order when absent
  ScoreAxis axis = ScoreAxis::gate;
  std::optional<double> min_score;
  std::optional<double> max_score;
};

/// Ordered, filtered circuits with their scores, deltas from the batch
/// references, and the batch's average usage per qubit and per edge.
nlohmann::json batch_view(const BatchDocument& batch, const BatchQuery& query);

}  // namespace qnp
