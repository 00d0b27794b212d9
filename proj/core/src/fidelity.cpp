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

#include "qnp/fidelity.hpp"

#include <algorithm>
#include <cmath>

#include "qnp/error.hpp"

namespace qnp {

double hellinger_squared(const OutcomeDistribution& p, const OutcomeDistribution& q) {
  if (p.n_bits != q.n_bits) {
    throw InvalidArgument("cannot compare distributions over " + std::to_string(p.n_bits) +
                          " and " + std::to_string(q.n_bits) + " bits");
  }
  const auto pp = p.probabilities();
  const auto qq = q.probabilities();

  // Merge over the union of supports (both maps are key-ordered).
  double sum = 0.0;
  auto a = pp.begin();
  auto b = qq.begin();
  while (a != pp.end() || b != qq.end()) {
    double pa = 0.0;
    double qb = 0.0;
    if (b == qq.end() || (a != pp.end() && a->first < b->first)) {
      pa = (a++)->second;
    } else if (a == pp.end() || b->first < a->first) {
      qb = (b++)->second;
    } else {
      pa = (a++)->second;
      qb = (b++)->second;
    }
    const double d = std::sqrt(pa) - std::sqrt(qb);
    sum += d * d;
  }
  return std::clamp(0.5 * sum, 0.0, 1.0);
}

double hellinger(const OutcomeDistribution& p, const OutcomeDistribution& q) {
  return std::sqrt(hellinger_squared(p, q));
}

double fidelity(const OutcomeDistribution& p, const OutcomeDistribution& q) {
  const double bc = 1.0 - hellinger_squared(p, q);
  return bc * bc;
}

FidelityResult make_fidelity_result(std::string circuit_id, OutcomeDistribution ideal,
                                    OutcomeDistribution observed) {
  FidelityResult r;
  r.circuit_id = std::move(circuit_id);
  const double h2 = hellinger_squared(ideal, observed);
  r.hellinger = std::sqrt(h2);
  r.fidelity = (1.0 - h2) * (1.0 - h2);
  r.ideal = std::move(ideal);
  r.observed = std::move(observed);
  return r;
}

void to_json(nlohmann::json& j, const FidelityResult& result) {
  j = nlohmann::json{{"circuit_id", result.circuit_id},
                     {"fidelity", result.fidelity},
                     {"hellinger", result.hellinger},
                     {"ideal", result.ideal},
                     {"observed", result.observed}};
}

void from_json(const nlohmann::json& j, FidelityResult& result) {
  result.circuit_id = j.at("circuit_id").get<std::string>();
  result.fidelity = j.at("fidelity").get<double>();
  result.hellinger = j.at("hellinger").get<double>();
  result.ideal = j.at("ideal").get<OutcomeDistribution>();
  result.observed = j.at("observed").get<OutcomeDistribution>();
}

}  // namespace qnp
