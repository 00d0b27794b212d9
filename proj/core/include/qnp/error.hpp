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

#include <stdexcept>
#include <string>
#include <utility>

namespace qnp {

/// Base class of every error thrown by the planner libraries.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition or domain invariant was violated by the caller's input.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A referenced entity (computer, batch, circuit, job) does not exist.
class NotFound : public Error {
 public:
  using Error::Error;
};

/// Calibration data on disk could not be ingested. Carries the offending
/// file and the JSON field path so the message can point at the problem.
class IngestError : public InvalidArgument {
 public:
  IngestError(std::string file, std::string field, const std::string& reason)
      : InvalidArgument(file + ": " + (field.empty() ? "" : field + ": ") +
                        reason),
        file_(std::move(file)),
        field_(std::move(field)) {}

  const std::string& file() const noexcept { return file_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::string file_;
  std::string field_;
};

}  // namespace qnp
