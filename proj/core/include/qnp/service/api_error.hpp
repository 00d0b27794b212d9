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

#include <exception>
#include <string>

#include <nlohmann/json.hpp>

#include "qnp/error.hpp"

namespace qnp {

/// An error with an HTTP status and a stable machine-readable code. The
/// wire form is the envelope {code, message, details?}.
class ApiError : public Error {
 public:
  ApiError(int status, std::string code, const std::string& message,
           nlohmann::json details = nullptr)
      : Error(message), status_(status), code_(std::move(code)), details_(std::move(details)) {}

  int status() const noexcept { return status_; }
  const std::string& code() const noexcept { return code_; }
  const nlohmann::json& details() const noexcept { return details_; }

  nlohmann::json envelope() const;

  static ApiError not_found(std::string code, const std::string& message) {
    return {404, std::move(code), message};
  }
  static ApiError invalid(std::string code, const std::string& message) {
    return {422, std::move(code), message};
  }

 private:
  int status_;
  std::string code_;
  nlohmann::json details_;
};

/// Maps library exceptions onto API errors: NotFound -> 404 not_found,
/// InvalidArgument -> 422 invalid_argument, anything else -> 500 internal.
ApiError to_api_error(const std::exception& e);

}  // namespace qnp
