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

#include "qnp/service/job.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>

#include "qnp/error.hpp"

namespace qnp {

std::string_view to_string(JobKind kind) { return kind == JobKind::compile ? "compile" : "run"; }

std::string_view to_string(JobState state) {
  switch (state) {
    case JobState::queued: return "queued";
    case JobState::running: return "running";
    case JobState::done: return "done";
    case JobState::failed: return "failed";
  }
  return "?";
}

JobKind job_kind_from_string(std::string_view name) {
  if (name == "compile") return JobKind::compile;
  if (name == "run") return JobKind::run;
  throw InvalidArgument("unknown job kind '" + std::string(name) + "'");
}

JobState job_state_from_string(std::string_view name) {
  for (auto s : {JobState::queued, JobState::running, JobState::done, JobState::failed}) {
    if (to_string(s) == name) return s;
  }
  throw InvalidArgument("unknown job state '" + std::string(name) + "'");
}

void Job::transition(JobState next) {
  const bool legal = (state == JobState::queued && next == JobState::running) ||
                     (state == JobState::queued && next == JobState::failed) ||
                     (state == JobState::running && is_terminal(next));
  if (!legal) {
    throw InvalidArgument("job " + id + " cannot move from " + std::string(to_string(state)) +
                          " to " + std::string(to_string(next)));
  }
  state = next;
  if (is_terminal(next)) finished_at = utc_now_iso();
}

void Job::succeed(std::string result) {
  transition(JobState::done);
  result_ref = std::move(result);
}

void Job::fail(std::string code, std::string message) {
  transition(JobState::failed);
  error = JobError{std::move(code), std::move(message)};
}

std::string utc_now_iso() {
  using namespace std::chrono;
  const auto now = system_clock::now();
  const auto ms = duration_cast<milliseconds>(now.time_since_epoch()).count() % 1000;
  const std::time_t t = system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, static_cast<int>(ms));
  return buf;
}

void to_json(nlohmann::json& j, const Job& job) {
  j = nlohmann::json{{"id", job.id},
                     {"kind", to_string(job.kind)},
                     {"state", to_string(job.state)},
                     {"created_at", job.created_at},
                     {"finished_at", nullptr},
                     {"payload", job.payload},
                     {"result_ref", nullptr},
                     {"error", nullptr}};
  if (job.finished_at) j["finished_at"] = *job.finished_at;
  if (job.result_ref) j["result_ref"] = *job.result_ref;
  if (job.error) j["error"] = {{"code", job.error->code}, {"message", job.error->message}};
}

void from_json(const nlohmann::json& j, Job& job) {
  job.id = j.at("id").get<std::string>();
  job.kind = job_kind_from_string(j.at("kind").get<std::string>());
  job.state = job_state_from_string(j.at("state").get<std::string>());
  job.created_at = j.at("created_at").get<std::string>();
  job.finished_at.reset();
  if (!j.at("finished_at").is_null()) job.finished_at = j["finished_at"].get<std::string>();
  job.payload = j.at("payload");
  job.result_ref.reset();
  if (!j.at("result_ref").is_null()) job.result_ref = j["result_ref"].get<std::string>();
  job.error.reset();
  if (!j.at("error").is_null()) {
    job.error = JobError{j["error"].at("code").get<std::string>(),
                         j["error"].at("message").get<std::string>()};
  }
}

}  // namespace qnp
