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

#include <gtest/gtest.h>

#include <cmath>

#include "qnp/algorithms.hpp"
#include "qnp/error.hpp"
#include "qnp/simulator.hpp"
#include "qnp/statevector.hpp"
#include "qnp/transpiler.hpp"
#include "support.hpp"

namespace qnp {
namespace {

double count(const OutcomeDistribution& d, const std::string& k) {
  const auto it = d.entries.find(k);
  return it == d.entries.end() ? 0.0 : it->second;
}

TEST(Statevector, NormPreservedUnderRandomGates) {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(6));
    Statevector sv(n);
    const auto c = testing::random_circuit(rng, n, 40);
    for (const Gate& g : c.instructions) {
      if (g.is_measure()) continue;
      sv.apply(g);
      ASSERT_NEAR(sv.norm_squared(), 1.0, 1e-9);
    }
    sv.apply_pauli(0, Pauli::Y);
    EXPECT_NEAR(sv.norm_squared(), 1.0, 1e-9);
  }
}

TEST(Statevector, CapAndMeasureRejected) {
  EXPECT_THROW(Statevector(Statevector::kMaxQubits + 1), InvalidArgument);
  Statevector sv(1);
  EXPECT_THROW(sv.apply(Gate::measure(0)), InvalidArgument);
  sv.apply(Gate::h(0));
  EXPECT_NEAR(sv.probability_one(0), 0.5, 1e-12);
  sv.collapse(0, 1);
  EXPECT_NEAR(sv.probability_one(0), 1.0, 1e-12);
}

TEST(RunIdeal, BellIsExactlyHalfHalf) {
  const auto d = run_ideal(build_algorithm("two_qubit_test"));
  EXPECT_EQ(d.kind, DistributionKind::exact_probability);
  ASSERT_EQ(d.entries.size(), 2u);
  EXPECT_EQ(d.entries.at("00"), 0.5);
  EXPECT_EQ(d.entries.at("11"), 0.5);
}

TEST(RunIdeal, MeasureOnlyIsAllZeros) {
  const auto d = run_ideal(LogicalCircuit{"m", 3, {Gate::measure(0), Gate::measure(1), Gate::measure(2)}});
  EXPECT_EQ(d.entries, (std::map<std::string, double>{{"000", 1.0}}));
}

TEST(RunIdeal, BitOrderIsQubitZeroFirst) {
  const auto d = run_ideal(LogicalCircuit{"x", 3, {Gate::x(0), Gate::measure(0), Gate::measure(1), Gate::measure(2)}});
  EXPECT_EQ(d.entries.begin()->first, "100");
  // Only measured qubits appear, in ascending order.
  const auto e = run_ideal(LogicalCircuit{"x", 3, {Gate::x(2), Gate::measure(2), Gate::measure(0)}});
  EXPECT_EQ(e.n_bits, 2);
  EXPECT_EQ(e.entries.begin()->first, "01");
}

TEST(RunIdeal, MatchesDenseOracleOnRandomCircuits) {
  Rng rng(10);
  for (int trial = 0; trial < 150; ++trial) {
    const auto c = testing::random_circuit(rng, 1 + static_cast<int>(rng.below(5)), static_cast<int>(rng.below(25)));
    const auto want = testing::dense_distribution(c);
    const auto got = run_ideal(c);
    double total = 0.0;
    for (const auto& [k, p] : got.entries) total += p;
    EXPECT_NEAR(total, 1.0, 1e-9);
    for (const auto& [k, p] : want) {
      if (p > 1e-12) { EXPECT_NEAR(count(got, k), p, 1e-9) << k; }
    }
  }
}

TEST(RunIdeal, Errors) {
  EXPECT_THROW(run_ideal(LogicalCircuit{"n", 2, {Gate::h(0)}}), InvalidArgument);
  LogicalCircuit wide{"w", 13, {}};
  for (int q = 0; q < 13; ++q) wide.instructions.push_back(Gate::h(q));
  wide.instructions.push_back(Gate::measure(0));
  EXPECT_THROW(run_ideal(wide), InvalidArgument);
}

PhysicalCircuit bell_on(const ComputerDescriptor& d, int a, int b) {
  return route(build_algorithm("two_qubit_test"), d, {a, b});
}

TEST(RunNoisy, NoiselessSamplesIdeal) {
  const auto d = testing::path_device(5);
  const auto pc = bell_on(d, 3, 4);
  const auto out = run_noisy(pc, NoiseModel::noiseless(5, d.coupling_map), 10000, 1);
  EXPECT_EQ(out.kind, DistributionKind::shot_counts);
  EXPECT_EQ(*out.total_shots, 10000u);
  EXPECT_EQ(count(out, "00") + count(out, "11"), 10000.0);
  EXPECT_NEAR(count(out, "00"), 5000.0, 150.0);
}

TEST(RunNoisy, ReadoutFlipMatchesBinomial) {
  const auto d = make_computer("one", 1, {});
  auto snap = testing::flat_snapshot(d, 0.1, 0.0, 0.0);
  PhysicalCircuit pc = route(LogicalCircuit{"m", 1, {Gate::measure(0)}}, d, {0});
  const auto out = run_noisy(pc, snap, 100000, 5);
  const double sigma = std::sqrt(100000 * 0.1 * 0.9);
  EXPECT_NEAR(count(out, "1"), 10000.0, 3 * sigma);
}

TEST(RunNoisy, GateDepolarizingRate) {
  // X then measure, sq error p: a non-identity Pauli flips the bit with
  // probability 2/3 (X or Y), so P(0) = 2p/3.
  const auto d = make_computer("one", 1, {});
  auto snap = testing::flat_snapshot(d, 0.0, 0.3, 0.0);
  const auto pc = route(LogicalCircuit{"x", 1, {Gate::x(0), Gate::measure(0)}}, d, {0});
  const auto out = run_noisy(pc, snap, 60000, 9);
  const double p = 0.2;
  EXPECT_NEAR(count(out, "0"), 60000 * p, 4 * std::sqrt(60000 * p * (1 - p)));
}

TEST(RunNoisy, TwoQubitDepolarizingRate) {
  // CX on |00>: of the 15 non-identity Paulis, 12 disturb the 00 outcome.
  const auto d = testing::path_device(2);
  auto snap = testing::flat_snapshot(d, 0.0, 0.0, 0.25);
  const auto pc = route(LogicalCircuit{"cx", 2, {Gate::cx(0, 1), Gate::measure(0), Gate::measure(1)}}, d, {0, 1});
  const auto out = run_noisy(pc, snap, 60000, 3);
  const double p = 0.25 * 12.0 / 15.0;
  EXPECT_NEAR(60000 - count(out, "00"), 60000 * p, 4 * std::sqrt(60000 * p * (1 - p)));
}

TEST(RunNoisy, DeterministicPerSeed) {
  const auto d = testing::path_device(5);
  const auto snap = testing::flat_snapshot(d, 0.05, 0.01, 0.05);
  const auto pc = compile_once(build_algorithm("ghz", 4), d, 3);
  EXPECT_EQ(run_noisy(pc, snap, 2000, 42), run_noisy(pc, snap, 2000, 42));
  EXPECT_NE(run_noisy(pc, snap, 2000, 42), run_noisy(pc, snap, 2000, 43));
}

TEST(RunNoisy, Errors) {
  const auto d = testing::path_device(3);
  const auto pc = bell_on(d, 0, 1);
  auto other = testing::flat_snapshot(testing::path_device(3, "other"));
  EXPECT_THROW(run_noisy(pc, other, 10, 0), InvalidArgument);
  EXPECT_THROW(run_noisy(pc, testing::flat_snapshot(d), 0, 0), InvalidArgument);
  NoiseModel bad = NoiseModel::noiseless(3, d.coupling_map);
  bad.readout[0] = 1.5;
  EXPECT_THROW(run_noisy(pc, bad, 10, 0), InvalidArgument);
}

TEST(NoiseModel, FromSnapshot) {
  const auto d = testing::path_device(3);
  auto snap = testing::flat_snapshot(d, 0.03, 0.002, 0.04);
  testing::set_cx(snap, {1, 2}, 0.2);
  const auto m = NoiseModel::from_snapshot(snap);
  EXPECT_EQ(m.readout, (std::vector<double>{0.03, 0.03, 0.03}));
  EXPECT_EQ(m.single_qubit[2], 0.002);
  EXPECT_EQ(m.two_qubit.at({1, 2}), 0.2);
  EXPECT_EQ(m.two_qubit.at({0, 1}), 0.04);
}

TEST(NoiseMonotonicity, LowErrorEdgeWinsNineteenOfTwenty) {
  const auto d = testing::path_device(5);
  auto snap = testing::flat_snapshot(d, 0.02, 1e-3, 0.05);
  testing::set_cx(snap, {3, 4}, 0.01);
  testing::set_cx(snap, {0, 1}, 0.20);
  const auto logical = build_algorithm("two_qubit_test");
  const auto ideal = run_ideal(logical);
  const auto good = bell_on(d, 3, 4);
  const auto bad = bell_on(d, 0, 1);
  int wins = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const double fg = 1.0 - [&] {
      const auto o = run_noisy(good, snap, 20000, seed).probabilities();
      double h = 0;
      for (const auto& [k, p] : ideal.entries) h += std::sqrt(p * (o.count(k) ? o.at(k) : 0.0));
      return h;
    }();
    const double fb = 1.0 - [&] {
      const auto o = run_noisy(bad, snap, 20000, seed + 100).probabilities();
      double h = 0;
      for (const auto& [k, p] : ideal.entries) h += std::sqrt(p * (o.count(k) ? o.at(k) : 0.0));
      return h;
    }();
    wins += fg < fb ? 1 : 0;  // smaller 1 - BC means higher fidelity
  }
  EXPECT_GE(wins, 19);
}

}  // namespace
}  // namespace qnp
