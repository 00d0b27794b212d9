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

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <functional>
#include <mutex>
#include <stop_token>
#include <thread>
#include <vector>

namespace qnp {

/// Fixed-size pool of worker threads fed from a FIFO queue. Tasks receive
/// the pool's stop token and are expected to poll it.
class WorkerPool {
 public:
  struct Task {
    std::function<void(std::stop_token)> run;
    std::function<void()> abandon;  ///< called instead of run after shutdown
  };

  explicit WorkerPool(std::size_t threads);
  ~WorkerPool();

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  /// Returns false once shutdown has begun; the task is then not queued.
  bool submit(Task task);

  /// Stops accepting work, abandons queued tasks, requests stop on running
  /// ones and joins every worker. Idempotent.
  void shutdown();

  std::size_t size() const noexcept { return threads_.size(); }

 private:
  void loop(std::stop_token stop);

  std::mutex mutex_;
  std::condition_variable_any ready_;
  std::deque<Task> queue_;
  bool closed_ = false;
  std::stop_source stop_;
  std::vector<std::jthread> threads_;
};

}  // namespace qnp
