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

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qnp/calibration.hpp"
#include "qnp/service/job.hpp"

namespace qnp {

/**
 * On-disk document store shared by the service and the CLI.
 *
 *     <root>/computers/<id>/descriptor.json + calibration/YYYY-MM-DD.json
 *     <root>/batches/<id>.json
 *     <root>/jobs/<id>.json
 *     <root>/results/<id>.json
 *
 * Every write goes through a temporary file and a rename. Writes to the
 * same document are serialized; reads take no lock.
 */
class Store {
 public:
  enum class Collection { batches, jobs, results };

  /// Opens (and creates) the layout under `root`. With `require_writable`
  /// a probe file is written first; failure throws Error.
  explicit Store(std::filesystem::path root, bool require_writable = true);

  const std::filesystem::path& root() const noexcept { return root_; }
  std::filesystem::path computers_dir() const { return root_ / "computers"; }

  void put_computer(const ComputerRecord& record);
  ComputerRecord get_computer(const std::string& id) const;
  std::map<std::string, ComputerRecord> computers() const;

  void put(Collection collection, const std::string& id, const nlohmann::json& doc);
  nlohmann::json get(Collection collection, const std::string& id) const;
  bool contains(Collection collection, const std::string& id) const;
  std::vector<std::string> ids(Collection collection) const;

  void put_job(const Job& job);
  Job get_job(const std::string& id) const;
  std::vector<Job> jobs() const;

  /// Ids become file names: [A-Za-z0-9_.-]+, not "." or "..".
  static bool is_valid_id(std::string_view id) noexcept;

 private:
  std::filesystem::path path_of(Collection collection, const std::string& id) const;
  std::mutex& lock_for(const std::string& key);

  std::filesystem::path root_;
  std::mutex locks_mutex_;
  std::map<std::string, std::unique_ptr<std::mutex>> locks_;
};

std::string_view to_string(Store::Collection collection);

}  // namespace qnp
