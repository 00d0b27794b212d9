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

// Synthetic calibration history. Each attribute is a discrete
// Ornstein-Uhlenbeck walk
//
//     x[d+1] = x[d] + kReversion * (mean - x[d]) + volatility * mean * N(0,1)
//
// clipped to physical bounds. Error attributes additionally spike by a
// factor in [3, 10] on a given day with probability kSpikeProbability. The
// walk and every random draw advance on suspended days too, so the values
// on an emitted day do not depend on suspension_prob.

#include <algorithm>
#include <cmath>

#include "qnp/calibration.hpp"
#include "qnp/error.hpp"
#include "qnp/rng.hpp"

namespace qnp {

namespace {

constexpr double kReversion = 0.3;
constexpr double kSpikeProbability = 0.03;
constexpr double kSpikeMin = 3.0;
constexpr double kSpikeMax = 10.0;

struct Bounds {
  double lo;
  double hi;
};

constexpr Bounds kT1{10.0, 400.0};
constexpr Bounds kT2Ratio{0.2, 2.0};  // t2 / t1
constexpr Bounds kReadout{0.002, 0.5};
constexpr Bounds kSingleQubit{1e-5, 0.05};
constexpr Bounds kCx{1e-3, 0.5};

struct Walk {
  double mean;
  double value;
  double volatility;  // relative to mean
  Bounds bounds;

  void step(Rng& rng) {
    value += kReversion * (mean - value) + volatility * mean * rng.normal();
    value = std::clamp(value, bounds.lo, bounds.hi);
  }
};

Walk make_walk(Rng& rng, double lo, double hi, double volatility, Bounds bounds) {
  const double mean = rng.uniform(lo, hi);
  return {mean, mean, volatility, bounds};
}

double spiked(Rng& rng, double value) {
  const double u = rng.uniform();
  const double factor = rng.uniform(kSpikeMin, kSpikeMax);
  return u < kSpikeProbability ? std::min(1.0, value * factor) : value;
}

}  // namespace

Date default_synthetic_start() {
  return std::chrono::sys_days{std::chrono::year{2024} / 1 / 1};
}

CalibrationSeries generate_synthetic(const ComputerDescriptor& descriptor,
                                     std::uint64_t seed, int days,
                                     double suspension_prob, Date start) {
  descriptor.validate();
  if (days < 1) throw InvalidArgument("days must be >= 1");
  if (!(suspension_prob >= 0.0 && suspension_prob <= 1.0)) {
    throw InvalidArgument("suspension_prob must be in [0,1]");
  }

  Rng rng(seed);
  const auto nq = static_cast<std::size_t>(descriptor.n_qubits);

  std::vector<Walk> t1, t2_ratio, readout, single;
  for (std::size_t q = 0; q < nq; ++q) {
    t1.push_back(make_walk(rng, 50.0, 160.0, 0.08, kT1));
    t2_ratio.push_back(make_walk(rng, 0.5, 1.5, 0.06, kT2Ratio));
    readout.push_back(make_walk(rng, 0.01, 0.06, 0.15, kReadout));
    single.push_back(make_walk(rng, 2e-4, 1.2e-3, 0.15, kSingleQubit));
  }
  std::vector<Walk> cx;
  for (std::size_t e = 0; e < descriptor.coupling_map.size(); ++e) {
    cx.push_back(make_walk(rng, 0.006, 0.03, 0.15, kCx));
  }
  const double queue_level = rng.uniform(2.0, 150.0);

  CalibrationSeries series;
  series.computer_id = descriptor.id;
  for (int day = 0; day < days; ++day) {
    if (day > 0) {
      for (std::size_t q = 0; q < nq; ++q) {
        t1[q].step(rng);
        t2_ratio[q].step(rng);
        readout[q].step(rng);
        single[q].step(rng);
      }
      for (Walk& w : cx) w.step(rng);
    }
    const bool suspended = rng.uniform() < suspension_prob && day > 0;

    CalibrationSnapshot snapshot;
    snapshot.computer_id = descriptor.id;
    snapshot.date = start + std::chrono::days{day};
    for (std::size_t q = 0; q < nq; ++q) {
      QubitCalibration c;
      c.qubit = static_cast<int>(q);
      c.t1_us = t1[q].value;
      c.t2_us = std::min(t2_ratio[q].value * c.t1_us, 2.0 * c.t1_us);
      c.readout_error = spiked(rng, readout[q].value);
      c.sq_gate_error = single[q].value;
      snapshot.qubits.push_back(c);
    }
    for (std::size_t e = 0; e < cx.size(); ++e) {
      snapshot.gates.push_back({descriptor.coupling_map[e], spiked(rng, cx[e].value)});
    }
    snapshot.queue_length =
        std::llround(queue_level * std::exp(0.5 * rng.normal()));

    if (!suspended) series.snapshots.push_back(std::move(snapshot));
  }
  return series;
}

}  // namespace qnp
