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

#include "qnp/service/ulid.hpp"

#include <chrono>
#include <random>

namespace qnp {

namespace {

constexpr char kAlphabet[] = "0123456789ABCDEFGHJKMNPQRSTVWXYZ";

std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd() ^
         static_cast<std::uint64_t>(
             std::chrono::steady_clock::now().time_since_epoch().count());
}

}  // namespace

UlidGenerator::UlidGenerator() : rng_(entropy_seed()) {}
UlidGenerator::UlidGenerator(std::uint64_t seed) : rng_(seed) {}

std::string UlidGenerator::next() {
  const auto now = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::system_clock::now().time_since_epoch())
                       .count();
  return next(static_cast<std::uint64_t>(now));
}

std::string UlidGenerator::next(std::uint64_t unix_ms) {
  std::lock_guard lock(mutex_);
  if (unix_ms <= last_ms_) {
    // Same (or earlier) millisecond: bump the 80-bit random part.
    unix_ms = last_ms_;
    if (++rand_lo_ == 0) rand_hi_ = (rand_hi_ + 1) & 0xFFFF;
  } else {
    last_ms_ = unix_ms;
    rand_hi_ = rng_() & 0xFFFF;
    rand_lo_ = rng_();
  }

  // 128-bit value: [48 time][16 rand_hi][64 rand_lo], emitted as 26 base32
  // digits (the top 2 bits of the first digit are zero).
  std::string out(26, '0');
  unsigned __int128 value = (static_cast<unsigned __int128>(unix_ms & 0xFFFFFFFFFFFFULL) << 80) |
                            (static_cast<unsigned __int128>(rand_hi_) << 64) | rand_lo_;
  for (int i = 25; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kAlphabet[static_cast<unsigned>(value & 31U)];
    value >>= 5;
  }
  return out;
}

}  // namespace qnp
