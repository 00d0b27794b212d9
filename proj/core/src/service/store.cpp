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

#include "qnp/service/store.hpp"

#include <algorithm>

#include "qnp/error.hpp"
#include "qnp/io.hpp"

namespace qnp {

namespace fs = std::filesystem;

std::string_view to_string(Store::Collection collection) {
  switch (collection) {
    case Store::Collection::batches: return "batches";
    case Store::Collection::jobs: return "jobs";
    case Store::Collection::results: return "results";
  }
  return "?";
}

Store::Store(fs::path root, bool require_writable) : root_(std::move(root)) {
  std::error_code ec;
  for (const char* sub : {"computers", "batches", "jobs", "results"}) {
    fs::create_directories(root_ / sub, ec);
    if (ec && require_writable) {
      throw Error("store root " + root_.string() + " is not writable: " + ec.message());
    }
  }
  if (require_writable) {
    try {
      const fs::path probe = root_ / ".write-probe";
      write_text_atomic(probe, "ok\n");
      fs::remove(probe);
    } catch (const std::exception& e) {
      throw Error("store root " + root_.string() + " is not writable: " + e.what());
    }
  }
}

bool Store::is_valid_id(std::string_view id) noexcept {
  if (id.empty() || id == "." || id == ".." || id.size() > 200) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-' || c == '.';
  });
}

std::mutex& Store::lock_for(const std::string& key) {
  std::lock_guard guard(locks_mutex_);
  auto& slot = locks_[key];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

fs::path Store::path_of(Collection collection, const std::string& id) const {
  return root_ / std::string(to_string(collection)) / (id + ".json");
}

void Store::put_computer(const ComputerRecord& record) {
  if (!is_valid_id(record.descriptor.id)) {
    throw InvalidArgument("computer id '" + record.descriptor.id + "' is not a valid store id");
  }
  std::lock_guard guard(lock_for("computers/" + record.descriptor.id));
  write_computer(computers_dir() / record.descriptor.id, record);
}

ComputerRecord Store::get_computer(const std::string& id) const {
  const fs::path dir = computers_dir() / id;
  if (!is_valid_id(id) || !fs::exists(dir / "descriptor.json")) {
    throw NotFound("unknown computer '" + id + "'");
  }
  return load_computer(dir);
}

std::map<std::string, ComputerRecord> Store::computers() const {
  if (!fs::is_directory(computers_dir())) return {};
  return load_series(computers_dir());
}

void Store::put(Collection collection, const std::string& id, const nlohmann::json& doc) {
  if (!is_valid_id(id)) throw InvalidArgument("invalid document id '" + id + "'");
  const std::string key = std::string(to_string(collection)) + "/" + id;
  std::lock_guard guard(lock_for(key));
  write_json_atomic(path_of(collection, id), doc);
}

nlohmann::json Store::get(Collection collection, const std::string& id) const {
  const std::string what(to_string(collection));
  if (!is_valid_id(id)) throw NotFound("no " + what + " document '" + id + "'");
  const fs::path path = path_of(collection, id);
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const Error&) {
    throw NotFound("no " + what + " document '" + id + "'");
  }
  return nlohmann::json::parse(text);
}

bool Store::contains(Collection collection, const std::string& id) const {
  return is_valid_id(id) && fs::exists(path_of(collection, id));
}

std::vector<std::string> Store::ids(Collection collection) const {
  std::vector<std::string> out;
  const fs::path dir = root_ / std::string(to_string(collection));
  if (!fs::is_directory(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const fs::path& p = entry.path();
    if (entry.is_regular_file() && p.extension() == ".json") out.push_back(p.stem().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

void Store::put_job(const Job& job) { put(Collection::jobs, job.id, job); }

Job Store::get_job(const std::string& id) const {
  return get(Collection::jobs, id).get<Job>();
}

std::vector<Job> Store::jobs() const {
  std::vector<Job> out;
  for (const std::string& id : ids(Collection::jobs)) out.push_back(get_job(id));
  return out;
}

}  // namespace qnp
