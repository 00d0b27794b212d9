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

#include "qnp/service/service.hpp"

#include <cstdlib>
#include <thread>

#include "qnp/service/api_error.hpp"

namespace qnp {

using nlohmann::json;

namespace {

const char* env(const char* name) {
  const char* v = std::getenv(name);
  return (v && *v) ? v : nullptr;
}

}  // namespace

ServiceConfig ServiceConfig::from_env() {
  ServiceConfig c;
  if (const char* v = env("QNP_STORE")) c.store_root = v;
  if (const char* v = env("QNP_WORKERS")) c.workers = std::stoul(v);
  if (const char* v = env("QNP_QUEUE_DELAY_MS")) c.queue_delay_ms = std::stod(v);
  return c;
}

Service::Service(ServiceConfig config) : config_(std::move(config)), store_(config_.store_root) {
  recover();
  std::size_t n = config_.workers;
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  pool_ = std::make_unique<WorkerPool>(n);
}

Service::~Service() { shutdown(); }

void Service::recover() {
  for (Job job : store_.jobs()) {
    if (!is_terminal(job.state)) {
      job.fail("shutdown", "service stopped before the job finished");
      store_.put_job(job);
    }
  }
}

json Service::list_computers() const {
  json out = json::array();
  for (const auto& [id, record] : store_.computers()) out.push_back(computer_summary(record));
  return out;
}

json Service::calibration(const std::string& computer_id, int range_days, int interval_days,
                          NoiseAttribute attribute) const {
  return calibration_view(store_.get_computer(computer_id), range_days, interval_days, attribute);
}

json Service::seed(const json& body) {
  const auto params = body.get<SeedParams>();
  json out = json::array();
  for (const std::string& id : execute_seed(store_, params)) {
    out.push_back(computer_summary(store_.get_computer(id)));
  }
  return out;
}

Job Service::submit_compile(const json& body) {
  const auto params = body.get<CompileParams>();
  validate_compile(store_, params);
  return enqueue(JobKind::compile, params);
}

Job Service::submit_run(const json& body) {
  const auto params = body.get<RunParams>();
  validate_run(store_, params);
  return enqueue(JobKind::run, params);
}

Job Service::enqueue(JobKind kind, json payload) {
  Job job;
  job.id = ids_.next();
  job.kind = kind;
  job.created_at = utc_now_iso();
  job.payload = std::move(payload);
  store_.put_job(job);

  const std::string id = job.id;
  const bool queued = pool_->submit(WorkerPool::Task{
      [this, id](std::stop_token stop) { execute(id, stop); },
      [this, id] { fail_job(id, "shutdown", "service stopped before the job started"); }});
  if (!queued) {
    fail_job(id, "shutdown", "service is shutting down");
    return store_.get_job(id);
  }
  return job;
}

void Service::fail_job(const std::string& job_id, const std::string& code,
                       const std::string& message) {
  std::lock_guard lock(job_mutex_);
  Job job = store_.get_job(job_id);
  if (is_terminal(job.state)) return;
  job.fail(code, message);
  store_.put_job(job);
}

void Service::execute(const std::string& job_id, std::stop_token stop) {
  Job job;
  {
    std::lock_guard lock(job_mutex_);
    job = store_.get_job(job_id);
    if (job.state != JobState::queued) return;
    if (stop.stop_requested()) {
      job.fail("shutdown", "service stopped before the job started");
      store_.put_job(job);
      return;
    }
    job.transition(JobState::running);
    store_.put_job(job);
  }

  try {
    std::string result;
    if (job.kind == JobKind::compile) {
      result = execute_compile(store_, job.payload.get<CompileParams>()).id;
    } else {
      const auto params = job.payload.get<RunParams>();
      if (config_.queue_delay_ms > 0.0) {
        const auto batch =
            store_.get(Store::Collection::batches, params.batch_id).get<BatchDocument>();
        const auto record = store_.get_computer(batch.request.computer_id);
        const auto delay = std::chrono::duration<double, std::milli>(
            config_.queue_delay_ms *
            static_cast<double>(record.series.empty() ? 0 : record.series.latest().queue_length));
        const auto until = std::chrono::steady_clock::now() + delay;
        while (std::chrono::steady_clock::now() < until && !stop.stop_requested()) {
          std::this_thread::sleep_for(std::chrono::milliseconds(5));
        }
      }
      result = execute_run(store_, params, [&] { return stop.stop_requested(); }).id;
    }
    if (stop.stop_requested()) throw Cancelled("service stopped while the job was running");
    std::lock_guard lock(job_mutex_);
    job.succeed(std::move(result));
    store_.put_job(job);
  } catch (const Cancelled& e) {
    fail_job(job_id, "shutdown", e.what());
  } catch (const std::exception& e) {
    const ApiError api = to_api_error(e);
    fail_job(job_id, api.code(), api.what());
  }
}

json Service::get_batch(const std::string& batch_id, const BatchQuery& query) const {
  const auto batch = store_.get(Store::Collection::batches, batch_id).get<BatchDocument>();
  return batch_view(batch, query);
}

Job Service::get_job(const std::string& job_id) const { return store_.get_job(job_id); }

json Service::get_results(const std::string& job_id) const {
  const Job job = store_.get_job(job_id);
  if (job.state == JobState::failed) {
    throw ApiError(409, "job_failed", "job " + job_id + " failed",
                   job.error ? json{{"code", job.error->code}, {"message", job.error->message}}
                             : json(nullptr));
  }
  if (job.state != JobState::done || !job.result_ref) {
    throw ApiError(409, "job_not_finished", "job " + job_id + " is " +
                                                std::string(to_string(job.state)));
  }
  if (job.kind == JobKind::compile) {
    return get_batch(*job.result_ref, BatchQuery{});
  }
  return store_.get(Store::Collection::results, *job.result_ref).at("results");
}

Job Service::wait(const std::string& job_id, std::chrono::milliseconds timeout) const {
  const auto until = std::chrono::steady_clock::now() + timeout;
  for (;;) {
    Job job = store_.get_job(job_id);
    if (is_terminal(job.state) || std::chrono::steady_clock::now() >= until) return job;
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
}

void Service::shutdown() {
  if (pool_) pool_->shutdown();
}

}  // namespace qnp
