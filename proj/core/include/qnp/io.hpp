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
#include <string>

#include <nlohmann/json.hpp>

namespace qnp {

/// Reads a whole file. Throws Error if it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

/// Writes `content` to a sibling temporary file and renames it over `path`,
/// so readers never observe a partially written document.
void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content);

/// Canonical on-disk JSON formatting (two-space indent, trailing newline).
std::string dump_document(const nlohmann::json& doc);

void write_json_atomic(const std::filesystem::path& path,
                       const nlohmann::json& doc);

}  // namespace qnp
