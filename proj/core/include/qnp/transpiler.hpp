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

/**
 * @file transpiler.hpp
 * @brief Noise-unaware qubit mapping and SWAP routing.
 *
 * A compilation picks a seeded uniformly random injective layout and then
 * walks the logical instructions in order. A two-qubit gate whose operands
 * are not adjacent is preceded by SWAPs that move its first operand along a
 * shortest coupling path towards the second (ties go to the lowest-index
 * neighbor). Because the layout ignores calibration data, different seeds
 * land the same logical circuit on couplers of very different quality;
 * the scoring views exist to expose that spread.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qnp/calibration.hpp"
#include "qnp/circuit.hpp"

namespace qnp {

/// Adjacency and all-pairs hop distances of a coupling map.
class CouplingGraph {
 public:
  explicit CouplingGraph(const ComputerDescriptor& descriptor);

  int size() const noexcept { return n_; }
  bool adjacent(int a, int b) const;
  int distance(int a, int b) const;
  /// Lowest-index neighbor of `from` that is one hop closer to `to`.
  int next_hop(int from, int to) const;
  const std::vector<int>& neighbors(int q) const;

 private:
  int n_;
  std::vector<std::vector<int>> neighbors_;  // sorted ascending
  std::vector<int> distance_;                // row-major n x n
};

inline constexpr int kMaxCompilations = 500;

struct CompileRequest {
  LogicalCircuit circuit;
  ComputerDescriptor descriptor;
  int n_compilations = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

struct CompileBatch {
  std::vector<PhysicalCircuit> circuits;
  CompileRequest request;
};

/// Seeded uniform random injective map of `n_logical` logical qubits onto
/// `n_physical` physical ones (partial Fisher-Yates).
std::vector<int> random_layout(int n_logical, int n_physical, std::uint64_t seed);

/// Routes `circuit` from a caller-chosen initial layout.
PhysicalCircuit route(const LogicalCircuit& circuit, const ComputerDescriptor& descriptor,
                      std::vector<int> layout, std::string id = "trans_0");

/// random_layout(seed) followed by route().
PhysicalCircuit compile_once(const LogicalCircuit& circuit,
                             const ComputerDescriptor& descriptor, std::uint64_t seed,
                             std::string id = "trans_0");

/// n_compilations compile_once calls with seeds seed + i and ids trans_i.
CompileBatch compile_batch(const CompileRequest& request);

/// True iff the physical circuit's exact noiseless distribution, read in
/// logical bit order through the replayed routing, matches the logical
/// circuit's within 1e-9 per outcome. Malformed circuits yield false.
bool verify_equivalence(const LogicalCircuit& logical, const PhysicalCircuit& physical);

}  // namespace qnp
