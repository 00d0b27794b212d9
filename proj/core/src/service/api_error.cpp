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

#include "qnp/service/api_error.hpp"

namespace qnp {

nlohmann::json ApiError::envelope() const {
  nlohmann::json j{{"code", code_}, {"message", what()}};
  if (!details_.is_null()) j["details"] = details_;
  return j;
}

ApiError to_api_error(const std::exception& e) {
  if (const auto* api = dynamic_cast<const ApiError*>(&e)) return *api;
  if (const auto* ingest = dynamic_cast<const IngestError*>(&e)) {
    return {422, "invalid_calibration", ingest->what(),
            nlohmann::json{{"file", ingest->file()}, {"field", ingest->field()}}};
  }
  if (dynamic_cast<const NotFound*>(&e)) return {404, "not_found", e.what()};
  if (dynamic_cast<const InvalidArgument*>(&e)) return {422, "invalid_argument", e.what()};
  if (dynamic_cast<const nlohmann::json::exception*>(&e)) {
    return {422, "invalid_json", e.what()};
  }
  return {500, "internal", e.what()};
}

}  // namespace qnp
