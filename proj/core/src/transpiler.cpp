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

#include "qnp/transpiler.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "qnp/error.hpp"
#include "qnp/rng.hpp"
#include "qnp/simulator.hpp"

namespace qnp {

namespace {
constexpr int kUnreachable = std::numeric_limits<int>::max();
}

CouplingGraph::CouplingGraph(const ComputerDescriptor& descriptor)
    : n_(descriptor.n_qubits) {
  descriptor.validate();
  const auto n = static_cast<std::size_t>(n_);
  neighbors_.resize(n);
  for (const Edge& e : descriptor.coupling_map) {
    neighbors_[static_cast<std::size_t>(e.first)].push_back(e.second);
    neighbors_[static_cast<std::size_t>(e.second)].push_back(e.first);
  }
  for (auto& list : neighbors_) std::sort(list.begin(), list.end());

  distance_.assign(n * n, kUnreachable);
  for (std::size_t src = 0; src < n; ++src) {
    int* row = &distance_[src * n];
    row[src] = 0;
    std::deque<int> queue{static_cast<int>(src)};
    while (!queue.empty()) {
      const int q = queue.front();
      queue.pop_front();
      for (int next : neighbors_[static_cast<std::size_t>(q)]) {
        if (row[next] == kUnreachable) {
          row[next] = row[q] + 1;
          queue.push_back(next);
        }
      }
    }
  }
}

bool CouplingGraph::adjacent(int a, int b) const { return distance(a, b) == 1; }

int CouplingGraph::distance(int a, int b) const {
  if (a < 0 || b < 0 || a >= n_ || b >= n_) {
    throw InvalidArgument("qubit outside coupling graph");
  }
  return distance_[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) +
                   static_cast<std::size_t>(b)];
}

int CouplingGraph::next_hop(int from, int to) const {
  const int d = distance(from, to);
  for (int next : neighbors(from)) {
    if (distance(next, to) == d - 1) return next;
  }
  throw InvalidArgument("no path between qubits " + std::to_string(from) + " and " +
                        std::to_string(to));
}

const std::vector<int>& CouplingGraph::neighbors(int q) const {
  if (q < 0 || q >= n_) throw InvalidArgument("qubit outside coupling graph");
  return neighbors_[static_cast<std::size_t>(q)];
}

void CompileRequest::validate() const {
  circuit.validate();
  descriptor.validate();
  if (circuit.n_qubits > descriptor.n_qubits) {
    throw InvalidArgument("circuit '" + circuit.name + "' needs " +
                          std::to_string(circuit.n_qubits) + " qubits; '" + descriptor.id +
                          "' has " + std::to_string(descriptor.n_qubits));
  }
  if (n_compilations < 1 || n_compilations > kMaxCompilations) {
    throw InvalidArgument("n_compilations must be in 1.." + std::to_string(kMaxCompilations));
  }
}

std::vector<int> random_layout(int n_logical, int n_physical, std::uint64_t seed) {
  if (n_logical > n_physical) throw InvalidArgument("layout wider than device");
  std::vector<int> pool(static_cast<std::size_t>(n_physical));
  std::iota(pool.begin(), pool.end(), 0);
  Rng rng(seed);
  for (int i = 0; i < n_logical; ++i) {
    const auto j = static_cast<std::size_t>(i) +
                   static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n_physical - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
  }
  pool.resize(static_cast<std::size_t>(n_logical));
  return pool;
}

PhysicalCircuit route(const LogicalCircuit& circuit, const ComputerDescriptor& descriptor,
                      std::vector<int> layout, std::string id) {
  circuit.validate();
  if (circuit.n_qubits > descriptor.n_qubits) {
    throw InvalidArgument("circuit '" + circuit.name + "' is wider than '" + descriptor.id + "'");
  }
  const CouplingGraph graph(descriptor);
  if (static_cast<int>(layout.size()) != circuit.n_qubits) {
    throw InvalidArgument("layout size does not match circuit width");
  }
  std::vector<int> occupant(static_cast<std::size_t>(descriptor.n_qubits), -1);
  for (std::size_t l = 0; l < layout.size(); ++l) {
    const int p = layout[l];
    if (p < 0 || p >= descriptor.n_qubits || occupant[static_cast<std::size_t>(p)] != -1) {
      throw InvalidArgument("layout is not an injective map into the device");
    }
    occupant[static_cast<std::size_t>(p)] = static_cast<int>(l);
  }

  PhysicalCircuit out;
  out.id = std::move(id);
  out.computer_id = descriptor.id;
  out.source_name = circuit.name;
  out.n_qubits = descriptor.n_qubits;
  out.layout = layout;

  std::vector<int>& position = layout;  // current logical -> physical
  for (const Gate& g : circuit.instructions) {
    Gate mapped = g;
    if (g.is_two_qubit()) {
      const int target = position[static_cast<std::size_t>(g.qubits[1])];
      int current = position[static_cast<std::size_t>(g.qubits[0])];
      while (!graph.adjacent(current, target)) {
        const int hop = graph.next_hop(current, target);
        out.inserted_swaps.push_back(out.instructions.size());
        out.instructions.push_back(Gate::swap(current, hop));
        const int moved = occupant[static_cast<std::size_t>(hop)];
        std::swap(occupant[static_cast<std::size_t>(current)],
                  occupant[static_cast<std::size_t>(hop)]);
        position[static_cast<std::size_t>(g.qubits[0])] = hop;
        if (moved >= 0) position[static_cast<std::size_t>(moved)] = current;
        current = hop;
      }
    }
    for (int& q : mapped.qubits) q = position[static_cast<std::size_t>(q)];
    out.instructions.push_back(std::move(mapped));
  }

  UsageCounts usage = usage_counts(out);
  out.qubit_usage = std::move(usage.qubit_usage);
  out.gate_usage = std::move(usage.gate_usage);
  out.depth = depth(out);
  return out;
}

PhysicalCircuit compile_once(const LogicalCircuit& circuit, const ComputerDescriptor& descriptor,
                             std::uint64_t seed, std::string id) {
  if (circuit.n_qubits > descriptor.n_qubits) {
    throw InvalidArgument("circuit '" + circuit.name + "' needs " +
                          std::to_string(circuit.n_qubits) + " qubits; '" + descriptor.id +
                          "' has " + std::to_string(descriptor.n_qubits));
  }
  return route(circuit, descriptor, random_layout(circuit.n_qubits, descriptor.n_qubits, seed),
               std::move(id));
}

CompileBatch compile_batch(const CompileRequest& request) {
  request.validate();
  CompileBatch batch;
  batch.request = request;
  batch.circuits.reserve(static_cast<std::size_t>(request.n_compilations));
  for (int i = 0; i < request.n_compilations; ++i) {
    batch.circuits.push_back(compile_once(request.circuit, request.descriptor,
                                          request.seed + static_cast<std::uint64_t>(i),
                                          "trans_" + std::to_string(i)));
  }
  return batch;
}

bool verify_equivalence(const LogicalCircuit& logical, const PhysicalCircuit& physical) {
  try {
    const OutcomeDistribution expected = run_ideal(logical);
    const OutcomeDistribution actual = run_ideal(physical);
    if (expected.n_bits != actual.n_bits) return false;

    auto a = expected.entries.begin();
    auto b = actual.entries.begin();
    while (a != expected.entries.end() || b != actual.entries.end()) {
      double pa = 0.0;
      double pb = 0.0;
      if (b == actual.entries.end() || (a != expected.entries.end() && a->first < b->first)) {
        pa = (a++)->second;
      } else if (a == expected.entries.end() || b->first < a->first) {
        pb = (b++)->second;
      } else {
        pa = (a++)->second;
        pb = (b++)->second;
      }
      if (std::abs(pa - pb) > 1e-9) return false;
    }
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace qnp
