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

#include <string>

#include <nlohmann/json.hpp>

#include "qnp/circuit.hpp"

namespace qnp {

/// Squared Hellinger distance, 1/2 * sum_k (sqrt(p_k) - sqrt(q_k))^2, over
/// the union of both supports. Shot counts are normalized first.
double hellinger_squared(const OutcomeDistribution& p, const OutcomeDistribution& q);

/// Hellinger distance in [0, 1].
double hellinger(const OutcomeDistribution& p, const OutcomeDistribution& q);

/// (1 - H^2)^2: 1 for identical distributions, 0 for disjoint supports.
double fidelity(const OutcomeDistribution& p, const OutcomeDistribution& q);

struct FidelityResult {
  std::string circuit_id;
  double fidelity = 0.0;
  double hellinger = 0.0;
  OutcomeDistribution ideal;     ///< exact probabilities
  OutcomeDistribution observed;  ///< shot counts

  friend bool operator==(const FidelityResult&, const FidelityResult&) = default;
};

FidelityResult make_fidelity_result(std::string circuit_id, OutcomeDistribution ideal,
                                    OutcomeDistribution observed);

void to_json(nlohmann::json& j, const FidelityResult& result);
void from_json(const nlohmann::json& j, FidelityResult& result);

}  // namespace qnp
