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

#include <cstdint>
#include <mutex>
#include <string>

#include "qnp/rng.hpp"

namespace qnp {

/// Lexicographically sortable 26-character identifiers (48-bit millisecond
/// timestamp + 80 random bits, Crockford base32). Ids from one generator
/// are strictly increasing, even within a millisecond.
class UlidGenerator {
 public:
  UlidGenerator();
  explicit UlidGenerator(std::uint64_t seed);

  std::string next();
  std::string next(std::uint64_t unix_ms);

 private:
  std::mutex mutex_;
  Rng rng_;
  std::uint64_t last_ms_ = 0;
  std::uint64_t rand_hi_ = 0;  // 16 bits
  std::uint64_t rand_lo_ = 0;  // 64 bits
};

}  // namespace qnp
