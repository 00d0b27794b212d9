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

#include <span>
#include <vector>

namespace qnp {

/// Arithmetic mean. Throws InvalidArgument on an empty list.
double reference_value(std::span<const double> values);

/// values[i] - reference_value(values).
std::vector<double> deltas(std::span<const double> values);

/// Standard normal density.
double gaussian_kernel(double u) noexcept;

/// Silverman's rule of thumb 1.06 * sigma * n^(-1/5), never below 1e-4.
/// sigma is the sample standard deviation (zero for a single sample).
double silverman_bandwidth(std::span<const double> samples);

inline constexpr double kMinBandwidth = 1e-4;
inline constexpr int kDefaultGridPoints = 101;

/// 101 evenly spaced points over [0, 1.25 * max(samples)]. Falls back to
/// [0, 6h] when every sample is zero.
std::vector<double> default_kde_grid(std::span<const double> samples,
                                     double bandwidth);

/// `count` evenly spaced points over [lo, hi].
std::vector<double> linspace(double lo, double hi, int count);

struct KdeInput {
  std::vector<double> samples;
  double bandwidth = 0.0;
  std::vector<double> grid;
};

struct KdePoint {
  double x = 0.0;
  double density = 0.0;
};

using KdeCurve = std::vector<KdePoint>;

/// Gaussian kernel density estimate evaluated on `input.grid`:
///   f(x) = 1/(n h) * sum_i K((x - x_i) / h)
KdeCurve kde(const KdeInput& input);

/// Builds a KdeInput with the default bandwidth and grid.
KdeInput default_kde_input(std::vector<double> samples);

}  // namespace qnp
