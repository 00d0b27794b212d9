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

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "qnp/service/job.hpp"
#include "qnp/service/pipeline.hpp"
#include "qnp/service/store.hpp"
#include "qnp/service/ulid.hpp"
#include "qnp/service/worker_pool.hpp"

namespace qnp {

struct ServiceConfig {
  std::filesystem::path store_root = "data";
  std::size_t workers = 0;          ///< 0 means one per hardware thread
  double queue_delay_ms = 0.0;      ///< run jobs sleep queue_length * this

  /// QNP_STORE, QNP_WORKERS and QNP_QUEUE_DELAY_MS override the defaults.
  static ServiceConfig from_env();
};

/// Transport-independent service: every method either returns a JSON body
/// or throws (ApiError or a library error mapped by to_api_error).
class Service {
 public:
  explicit Service(ServiceConfig config);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  const ServiceConfig& config() const noexcept { return config_; }
  Store& store() noexcept { return store_; }

  nlohmann::json list_computers() const;
  nlohmann::json calibration(const std::string& computer_id, int range_days, int interval_days,
                             NoiseAttribute attribute) const;
  nlohmann::json seed(const nlohmann::json& body);

  /// Validates synchronously, then queues the job.
  Job submit_compile(const nlohmann::json& body);
  Job submit_run(const nlohmann::json& body);

  nlohmann::json get_batch(const std::string& batch_id, const BatchQuery& query) const;
  Job get_job(const std::string& job_id) const;
  /// 409 job_not_finished until the job is done; failed jobs give 409
  /// job_failed carrying the job error. A run job yields its FidelityResult
  /// list, a compile job the unsorted batch view.
  nlohmann::json get_results(const std::string& job_id) const;

  /// Polls until the job is terminal or the timeout passes.
  Job wait(const std::string& job_id, std::chrono::milliseconds timeout) const;

  /// Abandons queued jobs and cancels running ones, both failing with
  /// code "shutdown". Idempotent.
  void shutdown();

 private:
  Job enqueue(JobKind kind, nlohmann::json payload);
  void execute(const std::string& job_id, std::stop_token stop);
  void fail_job(const std::string& job_id, const std::string& code, const std::string& message);
  void recover();

  ServiceConfig config_;
  Store store_;
  UlidGenerator ids_;
  std::mutex job_mutex_;  // guards read-modify-write of job documents
  std::unique_ptr<WorkerPool> pool_;
};

}  // namespace qnp
