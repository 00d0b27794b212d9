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

#include "qnp/algorithms.hpp"

#include <cmath>
#include <numbers>

#include "qnp/error.hpp"

namespace qnp {

namespace {

LogicalCircuit two_qubit_test(std::string name) {
  return {std::move(name), 2,
          {Gate::h(0), Gate::cx(0, 1), Gate::measure(0), Gate::measure(1)}};
}

LogicalCircuit ghz(int n) {
  LogicalCircuit c{"ghz", n, {Gate::h(0)}};
  for (int i = 1; i < n; ++i) c.instructions.push_back(Gate::cx(0, i));
  for (int i = 0; i < n; ++i) c.instructions.push_back(Gate::measure(i));
  return c;
}

LogicalCircuit bernstein_vazirani(int n) {
  const int ancilla = n - 1;
  LogicalCircuit c{"bv", n, {Gate::x(ancilla)}};
  for (int i = 0; i < n; ++i) c.instructions.push_back(Gate::h(i));
  for (int i = 0; i < ancilla; ++i) c.instructions.push_back(Gate::cx(i, ancilla));
  for (int i = 0; i < ancilla; ++i) c.instructions.push_back(Gate::h(i));
  for (int i = 0; i < ancilla; ++i) c.instructions.push_back(Gate::measure(i));
  return c;
}

LogicalCircuit qft(int n) {
  LogicalCircuit c{"qft", n, {}};
  for (int j = n - 1; j >= 0; --j) {
    c.instructions.push_back(Gate::h(j));
    for (int k = j - 1; k >= 0; --k) {
      c.instructions.push_back(
          Gate::cp(k, j, std::numbers::pi / std::pow(2.0, j - k)));
    }
  }
  for (int i = 0; i < n / 2; ++i) c.instructions.push_back(Gate::swap(i, n - 1 - i));
  for (int i = 0; i < n; ++i) c.instructions.push_back(Gate::measure(i));
  return c;
}

}  // namespace

std::vector<std::string> algorithm_names() {
  return {"two_qubit_test", "bell", "ghz", "bv", "qft"};
}

LogicalCircuit build_algorithm(std::string_view name, std::optional<int> n) {
  if (name == "two_qubit_test" || name == "bell") {
    if (n && *n != 2) {
      throw InvalidArgument(std::string(name) + " is a fixed 2-qubit circuit");
    }
    return two_qubit_test(std::string(name));
  }

  const int width = n.value_or(3);
  const bool sized = name == "ghz" || name == "bv" || name == "qft";
  if (!sized) throw InvalidArgument("unknown algorithm '" + std::string(name) + "'");
  if (width < kMinAlgorithmQubits || width > kMaxAlgorithmQubits) {
    throw InvalidArgument(std::string(name) + " width must be in 2..7, got " +
                          std::to_string(width));
  }
  if (name == "ghz") return ghz(width);
  if (name == "bv") return bernstein_vazirani(width);
  return qft(width);
}

}  // namespace qnp
