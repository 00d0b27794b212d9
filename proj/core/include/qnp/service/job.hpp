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

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace qnp {

enum class JobKind { compile, run };
enum class JobState { queued, running, done, failed };

std::string_view to_string(JobKind kind);
std::string_view to_string(JobState state);
JobKind job_kind_from_string(std::string_view name);
JobState job_state_from_string(std::string_view name);

constexpr bool is_terminal(JobState s) noexcept {
  return s == JobState::done || s == JobState::failed;
}

struct JobError {
  std::string code;
  std::string message;

  friend bool operator==(const JobError&, const JobError&) = default;
};

/// A compile or run request and its lifecycle. States only move
/// queued -> running -> (done | failed), or queued -> failed when the
/// service shuts down first; finished_at is set exactly when terminal.
struct Job {
  std::string id;
  JobKind kind = JobKind::compile;
  JobState state = JobState::queued;
  std::string created_at;
  std::optional<std::string> finished_at;
  nlohmann::json payload;
  std::optional<std::string> result_ref;
  std::optional<JobError> error;

  /// Applies a legal transition; throws InvalidArgument otherwise.
  void transition(JobState next);
  void succeed(std::string result);
  void fail(std::string code, std::string message);

  friend bool operator==(const Job&, const Job&) = default;
};

/// Current UTC time as ISO-8601 with millisecond precision.
std::string utc_now_iso();

void to_json(nlohmann::json& j, const Job& job);
void from_json(const nlohmann::json& j, Job& job);

}  // namespace qnp
