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

#include "qnp/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qnp/error.hpp"

namespace qnp {

double reference_value(std::span<const double> values) {
  if (values.empty()) throw InvalidArgument("reference value of an empty list");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

std::vector<double> deltas(std::span<const double> values) {
  const double ref = reference_value(values);
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) out.push_back(v - ref);
  return out;
}

double gaussian_kernel(double u) noexcept {
  return std::numbers::inv_sqrtpi / std::numbers::sqrt2 * std::exp(-0.5 * u * u);
}

double silverman_bandwidth(std::span<const double> samples) {
  if (samples.empty()) throw InvalidArgument("bandwidth of an empty sample");
  const auto n = static_cast<double>(samples.size());
  double sigma = 0.0;
  if (samples.size() > 1) {
    const double mean = reference_value(samples);
    double ss = 0.0;
    for (double x : samples) ss += (x - mean) * (x - mean);
    sigma = std::sqrt(ss / (n - 1.0));
  }
  return std::max(kMinBandwidth, 1.06 * sigma * std::pow(n, -0.2));
}

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 2) throw InvalidArgument("linspace needs at least two points");
  std::vector<double> out(static_cast<std::size_t>(count));
  const double step = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = lo + step * i;
  out.back() = hi;
  return out;
}

std::vector<double> default_kde_grid(std::span<const double> samples,
                                     double bandwidth) {
  if (samples.empty()) throw InvalidArgument("grid of an empty sample");
  double upper = 1.25 * *std::max_element(samples.begin(), samples.end());
  if (!(upper > 0.0)) upper = 6.0 * bandwidth;
  return linspace(0.0, upper, kDefaultGridPoints);
}

KdeCurve kde(const KdeInput& input) {
  if (input.samples.empty()) throw InvalidArgument("kde: no samples");
  if (!(input.bandwidth > 0.0)) throw InvalidArgument("kde: bandwidth must be > 0");

  const double h = input.bandwidth;
  const double norm = 1.0 / (static_cast<double>(input.samples.size()) * h);
  KdeCurve curve;
  curve.reserve(input.grid.size());
  for (double x : input.grid) {
    double sum = 0.0;
    for (double xi : input.samples) sum += gaussian_kernel((x - xi) / h);
    curve.push_back({x, norm * sum});
  }
  return curve;
}

KdeInput default_kde_input(std::vector<double> samples) {
  KdeInput input;
  input.bandwidth = silverman_bandwidth(samples);
  input.grid = default_kde_grid(samples, input.bandwidth);
  input.samples = std::move(samples);
  return input;
}

}  // namespace qnp
