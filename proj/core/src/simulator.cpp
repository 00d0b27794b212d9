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

#include "qnp/simulator.hpp"

#include <algorithm>
#include <numeric>

#include "qnp/error.hpp"
#include "qnp/rng.hpp"
#include "qnp/statevector.hpp"

namespace qnp {

namespace {

constexpr double kDropBelow = 1e-12;

struct Op {
  Gate gate;                 // over local indices
  std::vector<int> physical; // original operands
  int cbit = -1;             // MEASURE only
  double error = 0.0;        // depolarizing probability
};

// A circuit lowered onto a compact register of the qubits it touches.
struct Program {
  int n_local = 0;
  int n_bits = 0;
  std::vector<Op> ops;
  std::vector<int> measured_physical;  // per cbit
};

Program lower(const std::vector<Gate>& instructions, const std::vector<int>& layout,
              const std::vector<std::size_t>& inserted_swaps) {
  std::vector<int> touched = layout;
  for (const Gate& g : instructions) {
    touched.insert(touched.end(), g.qubits.begin(), g.qubits.end());
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  if (touched.empty()) throw InvalidArgument("circuit touches no qubits");
  if (touched.front() < 0) throw InvalidArgument("negative qubit index");
  if (static_cast<int>(touched.size()) > Statevector::kMaxQubits) {
    throw InvalidArgument("circuit touches " + std::to_string(touched.size()) +
                          " qubits; simulator width cap is " +
                          std::to_string(Statevector::kMaxQubits));
  }
  auto local_of = [&](int phys) {
    return static_cast<int>(std::lower_bound(touched.begin(), touched.end(), phys) -
                            touched.begin());
  };

  Program program;
  program.n_local = static_cast<int>(touched.size());

  // occupant[local] = logical qubit currently held there, following routing
  // SWAPs only (a logical SWAP exchanges states, not identities).
  std::vector<int> occupant(touched.size(), -1);
  for (std::size_t l = 0; l < layout.size(); ++l) {
    const int local = local_of(layout[l]);
    if (occupant[static_cast<std::size_t>(local)] != -1) {
      throw InvalidArgument("layout is not injective");
    }
    occupant[static_cast<std::size_t>(local)] = static_cast<int>(l);
  }

  std::vector<int> logical_measured_at(layout.size(), -1);  // op index
  std::size_t next_swap = 0;
  for (std::size_t i = 0; i < instructions.size(); ++i) {
    Op op;
    op.gate = instructions[i];
    op.gate.validate();
    op.physical = op.gate.qubits;
    for (int& q : op.gate.qubits) q = local_of(q);

    const bool routing = next_swap < inserted_swaps.size() && inserted_swaps[next_swap] == i;
    if (routing) {
      ++next_swap;
      std::swap(occupant[static_cast<std::size_t>(op.gate.qubits[0])],
                occupant[static_cast<std::size_t>(op.gate.qubits[1])]);
    }
    if (op.gate.is_measure()) {
      const int logical = occupant[static_cast<std::size_t>(op.gate.qubits[0])];
      if (logical < 0) {
        throw InvalidArgument("MEASURE on physical qubit " +
                              std::to_string(op.physical[0]) +
                              " which holds no logical qubit");
      }
      if (logical_measured_at[static_cast<std::size_t>(logical)] != -1) {
        throw InvalidArgument("logical qubit " + std::to_string(logical) +
                              " measured twice");
      }
      logical_measured_at[static_cast<std::size_t>(logical)] =
          static_cast<int>(program.ops.size());
    }
    program.ops.push_back(std::move(op));
  }

  // cbits in ascending logical order
  for (std::size_t l = 0; l < logical_measured_at.size(); ++l) {
    const int at = logical_measured_at[l];
    if (at < 0) continue;
    Op& op = program.ops[static_cast<std::size_t>(at)];
    op.cbit = program.n_bits++;
    program.measured_physical.push_back(op.physical[0]);
  }
  if (program.n_bits == 0) throw InvalidArgument("circuit measures no qubits");
  return program;
}

Program lower(const LogicalCircuit& circuit) {
  circuit.validate();
  std::vector<int> identity(static_cast<std::size_t>(circuit.n_qubits));
  std::iota(identity.begin(), identity.end(), 0);
  return lower(circuit.instructions, identity, {});
}

Program lower(const PhysicalCircuit& circuit) {
  return lower(circuit.instructions, circuit.layout, circuit.inserted_swaps);
}

std::string to_bits(std::size_t outcome, int n_bits) {
  std::string bits(static_cast<std::size_t>(n_bits), '0');
  for (int c = 0; c < n_bits; ++c) {
    if ((outcome >> c) & 1U) bits[static_cast<std::size_t>(c)] = '1';
  }
  return bits;
}

// Exact distribution over cbit-encoded outcomes (bit c = cbit c).
// Measurements are deferred to the end; a measured value only ever moves
// through SWAPs afterwards, which are tracked.
std::vector<double> exact_outcomes(const Program& program) {
  Statevector sv(program.n_local);
  std::vector<int> holder(static_cast<std::size_t>(program.n_local), -1);  // local -> cbit
  std::vector<int> where(static_cast<std::size_t>(program.n_bits), -1);    // cbit -> local

  for (const Op& op : program.ops) {
    if (op.gate.is_measure()) {
      const int q = op.gate.qubits[0];
      holder[static_cast<std::size_t>(q)] = op.cbit;
      where[static_cast<std::size_t>(op.cbit)] = q;
      continue;
    }
    if (op.gate.kind == GateKind::SWAP) {
      const auto a = static_cast<std::size_t>(op.gate.qubits[0]);
      const auto b = static_cast<std::size_t>(op.gate.qubits[1]);
      std::swap(holder[a], holder[b]);
      if (holder[a] >= 0) where[static_cast<std::size_t>(holder[a])] = static_cast<int>(a);
      if (holder[b] >= 0) where[static_cast<std::size_t>(holder[b])] = static_cast<int>(b);
    } else {
      for (int q : op.gate.qubits) {
        if (holder[static_cast<std::size_t>(q)] >= 0) {
          throw InvalidArgument(std::string(to_string(op.gate.kind)) +
                                " acts on an already measured qubit");
        }
      }
    }
    sv.apply(op.gate);
  }

  const std::vector<double> probs = sv.probabilities();
  std::vector<double> outcomes(std::size_t{1} << program.n_bits, 0.0);
  for (std::size_t idx = 0; idx < probs.size(); ++idx) {
    if (probs[idx] == 0.0) continue;
    std::size_t outcome = 0;
    for (int c = 0; c < program.n_bits; ++c) {
      if ((idx >> where[static_cast<std::size_t>(c)]) & 1U) outcome |= std::size_t{1} << c;
    }
    outcomes[outcome] += probs[idx];
  }
  // Renormalize away rounding drift so that, e.g., a Bell pair gives
  // exactly 0.5 rather than 0.5000000000000001.
  const double total = std::accumulate(outcomes.begin(), outcomes.end(), 0.0);
  for (double& p : outcomes) p /= total;
  return outcomes;
}

OutcomeDistribution exact_distribution(const Program& program) {
  const std::vector<double> outcomes = exact_outcomes(program);
  OutcomeDistribution dist;
  dist.n_bits = program.n_bits;
  dist.kind = DistributionKind::exact_probability;
  for (std::size_t o = 0; o < outcomes.size(); ++o) {
    if (outcomes[o] >= kDropBelow) dist.entries.emplace(to_bits(o, program.n_bits), outcomes[o]);
  }
  return dist;
}

double readout_of(const NoiseModel& noise, int phys) {
  if (phys < 0 || static_cast<std::size_t>(phys) >= noise.readout.size()) {
    throw InvalidArgument("noise model has no readout error for qubit " + std::to_string(phys));
  }
  return noise.readout[static_cast<std::size_t>(phys)];
}

void attach_errors(Program& program, const NoiseModel& noise) {
  for (Op& op : program.ops) {
    if (op.gate.is_measure()) continue;
    if (op.gate.is_two_qubit()) {
      auto it = noise.two_qubit.find(normalized({op.physical[0], op.physical[1]}));
      if (it == noise.two_qubit.end()) {
        throw InvalidArgument("no gate error for edge " + edge_key({op.physical[0], op.physical[1]}));
      }
      op.error = it->second;
    } else {
      const auto q = static_cast<std::size_t>(op.physical[0]);
      if (q >= noise.single_qubit.size()) {
        throw InvalidArgument("no gate error for qubit " + std::to_string(q));
      }
      op.error = noise.single_qubit[q];
    }
  }
}

void apply_pauli_code(Statevector& sv, const Op& op, unsigned code) {
  if (op.gate.is_two_qubit()) {
    sv.apply_pauli(op.gate.qubits[0], static_cast<Pauli>(code & 3U));
    sv.apply_pauli(op.gate.qubits[1], static_cast<Pauli>(code >> 2));
  } else {
    sv.apply_pauli(op.gate.qubits[0], static_cast<Pauli>(code));
  }
}

}  // namespace

NoiseModel NoiseModel::from_snapshot(const CalibrationSnapshot& snapshot) {
  NoiseModel m;
  for (const QubitCalibration& q : snapshot.qubits) {
    m.readout.push_back(q.readout_error);
    m.single_qubit.push_back(q.sq_gate_error);
  }
  for (const GateCalibration& g : snapshot.gates) {
    m.two_qubit[normalized(g.edge)] = g.cx_error;
  }
  m.validate();
  return m;
}

NoiseModel NoiseModel::noiseless(int n_qubits, const std::vector<Edge>& edges) {
  NoiseModel m;
  m.readout.assign(static_cast<std::size_t>(n_qubits), 0.0);
  m.single_qubit.assign(static_cast<std::size_t>(n_qubits), 0.0);
  for (const Edge& e : edges) m.two_qubit[normalized(e)] = 0.0;
  return m;
}

void NoiseModel::validate() const {
  auto check = [](double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw InvalidArgument("noise probability " + std::to_string(p) + " outside [0,1]");
    }
  };
  for (double p : readout) check(p);
  for (double p : single_qubit) check(p);
  for (const auto& [e, p] : two_qubit) check(p);
}

OutcomeDistribution run_ideal(const LogicalCircuit& circuit) {
  return exact_distribution(lower(circuit));
}

OutcomeDistribution run_ideal(const PhysicalCircuit& circuit) {
  return exact_distribution(lower(circuit));
}

OutcomeDistribution run_noisy(const PhysicalCircuit& circuit,
                              const CalibrationSnapshot& snapshot,
                              std::uint64_t shots, std::uint64_t seed) {
  if (snapshot.computer_id != circuit.computer_id) {
    throw InvalidArgument("snapshot of '" + snapshot.computer_id +
                          "' does not match circuit on '" + circuit.computer_id + "'");
  }
  return run_noisy(circuit, NoiseModel::from_snapshot(snapshot), shots, seed);
}

OutcomeDistribution run_noisy(const PhysicalCircuit& circuit, const NoiseModel& noise,
                              std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) throw InvalidArgument("shots must be >= 1");
  noise.validate();
  Program program = lower(circuit);
  attach_errors(program, noise);

  std::vector<double> readout;
  for (int phys : program.measured_physical) readout.push_back(readout_of(noise, phys));

  // Trajectories with no gate error follow the ideal evolution, so they
  // sample straight from the exact distribution.
  const std::vector<double> ideal = exact_outcomes(program);
  std::vector<double> cdf(ideal.size());
  std::partial_sum(ideal.begin(), ideal.end(), cdf.begin());

  std::vector<std::uint64_t> counts(ideal.size(), 0);
  std::vector<unsigned> codes(program.ops.size(), 0);
  Statevector sv(program.n_local);

  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    Rng rng(derive_seed(seed, shot));

    bool any_error = false;
    for (std::size_t i = 0; i < program.ops.size(); ++i) {
      const Op& op = program.ops[i];
      codes[i] = 0;
      if (op.error <= 0.0) continue;
      if (rng.uniform() < op.error) {
        codes[i] = 1U + static_cast<unsigned>(rng.below(op.gate.is_two_qubit() ? 15 : 3));
        any_error = true;
      }
    }

    std::size_t outcome = 0;
    if (!any_error) {
      const double u = rng.uniform() * cdf.back();
      outcome = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
      outcome = std::min(outcome, cdf.size() - 1);
    } else {
      sv.reset();
      for (std::size_t i = 0; i < program.ops.size(); ++i) {
        const Op& op = program.ops[i];
        if (op.gate.is_measure()) {
          const int q = op.gate.qubits[0];
          const int bit = rng.uniform() < sv.probability_one(q) ? 1 : 0;
          sv.collapse(q, bit);
          if (bit) outcome |= std::size_t{1} << op.cbit;
          continue;
        }
        sv.apply(op.gate);
        if (codes[i] != 0) apply_pauli_code(sv, op, codes[i]);
      }
    }

    for (int c = 0; c < program.n_bits; ++c) {
      const double r = readout[static_cast<std::size_t>(c)];
      if (r > 0.0 && rng.uniform() < r) outcome ^= std::size_t{1} << c;
    }
    ++counts[outcome];
  }

  OutcomeDistribution dist;
  dist.n_bits = program.n_bits;
  dist.kind = DistributionKind::shot_counts;
  dist.total_shots = shots;
  for (std::size_t o = 0; o < counts.size(); ++o) {
    if (counts[o] > 0) dist.entries.emplace(to_bits(o, program.n_bits), static_cast<double>(counts[o]));
  }
  return dist;
}

}  // namespace qnp
