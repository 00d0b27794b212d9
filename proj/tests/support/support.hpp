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

// Shared fixtures, generators and independent oracles for the test suites.
// Oracles here deliberately avoid the library's own algorithms: the dense
// simulator multiplies full 2^n x 2^n matrices, the score oracle recounts
// usage from raw instructions.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include <unistd.h>

#include "qnp/calibration.hpp"
#include "qnp/circuit.hpp"
#include "qnp/rng.hpp"

namespace qnp::testing {

/// Unique scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::uint64_t counter = 0;
    Rng rng(fnv1a64(std::to_string(::getpid())) ^ ++counter ^
            static_cast<std::uint64_t>(std::chrono::steady_clock::now().time_since_epoch().count()));
    path_ = std::filesystem::temp_directory_path() /
            ("qnp-test-" + std::to_string(rng() % 1000000000ULL));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& sub) const { return path_ / sub; }

 private:
  std::filesystem::path path_;
};

inline ComputerDescriptor path_device(int n, std::string id = "path") {
  return line_computer(std::move(id), n);
}

inline ComputerDescriptor t_device(std::string id = "tee") {
  return make_computer(std::move(id), 5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}});
}

/// Snapshot with the same error everywhere; individual values can be
/// patched afterwards.
inline CalibrationSnapshot flat_snapshot(const ComputerDescriptor& d, double readout = 0.02,
                                         double sq = 1e-3, double cx = 0.01,
                                         Date date = parse_date("2024-03-01")) {
  CalibrationSnapshot s;
  s.computer_id = d.id;
  s.date = date;
  for (int q = 0; q < d.n_qubits; ++q) s.qubits.push_back({q, 100.0, 80.0, readout, sq});
  for (const Edge& e : d.coupling_map) s.gates.push_back({e, cx});
  s.queue_length = 5;
  return s;
}

inline void set_cx(CalibrationSnapshot& s, Edge e, double value) {
  for (auto& g : s.gates) {
    if (normalized(g.edge) == normalized(e)) g.cx_error = value;
  }
}

/// Random connected topology on n qubits: random spanning tree plus a few
/// extra edges.
inline ComputerDescriptor random_topology(Rng& rng, int n, std::string id = "rand") {
  std::set<Edge> edges;
  for (int q = 1; q < n; ++q) {
    const int parent = static_cast<int>(rng.below(static_cast<std::uint64_t>(q)));
    edges.insert(normalized({parent, q}));
  }
  const int extra = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
  for (int i = 0; i < extra; ++i) {
    const int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    if (a != b) edges.insert(normalized({a, b}));
  }
  return make_computer(std::move(id), n, {edges.begin(), edges.end()});
}

/// Random valid logical circuit over every gate kind; measures a non-empty
/// subset of qubits at the end.
inline LogicalCircuit random_circuit(Rng& rng, int n, int n_gates) {
  LogicalCircuit c;
  c.name = "random";
  c.n_qubits = n;
  static constexpr GateKind one[] = {GateKind::H, GateKind::X, GateKind::Z, GateKind::S,
                                     GateKind::T};
  for (int i = 0; i < n_gates; ++i) {
    const int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    if (n == 1 || rng.bernoulli(0.5)) {
      c.instructions.push_back(Gate::single(one[rng.below(5)], a));
      continue;
    }
    int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    if (b >= a) ++b;
    switch (rng.below(4)) {
      case 0: c.instructions.push_back(Gate::cx(a, b)); break;
      case 1: c.instructions.push_back(Gate::cz(a, b)); break;
      case 2: c.instructions.push_back(Gate::cp(a, b, rng.uniform(0.0, 2 * std::numbers::pi))); break;
      default: c.instructions.push_back(Gate::swap(a, b)); break;
    }
  }
  bool any = false;
  for (int q = 0; q < n; ++q) {
    if (rng.bernoulli(0.7) || (q == n - 1 && !any)) {
      c.instructions.push_back(Gate::measure(q));
      any = true;
    }
  }
  return c;
}

// ------------------------------------------------------------ dense oracle

using cplx = std::complex<double>;
using Matrix = std::vector<std::vector<cplx>>;

inline Matrix local_matrix(const Gate& g) {
  const double r = 1.0 / std::sqrt(2.0);
  const cplx i1(0.0, 1.0);
  switch (g.kind) {
    case GateKind::H: return {{r, r}, {r, -r}};
    case GateKind::X: return {{0, 1}, {1, 0}};
    case GateKind::Z: return {{1, 0}, {0, -1}};
    case GateKind::S: return {{1, 0}, {0, i1}};
    case GateKind::T: return {{1, 0}, {0, std::exp(i1 * (std::numbers::pi / 4))}};
    default: break;
  }
  // Two-qubit local basis index = bit(first operand) + 2 * bit(second).
  Matrix m(4, std::vector<cplx>(4, 0.0));
  for (int in = 0; in < 4; ++in) {
    const int a = in & 1;
    const int b = (in >> 1) & 1;
    switch (g.kind) {
      case GateKind::CX: m[static_cast<std::size_t>(a | ((b ^ a) << 1))][static_cast<std::size_t>(in)] = 1.0; break;
      case GateKind::CZ: m[static_cast<std::size_t>(in)][static_cast<std::size_t>(in)] = (a && b) ? -1.0 : 1.0; break;
      case GateKind::CP:
        m[static_cast<std::size_t>(in)][static_cast<std::size_t>(in)] =
            (a && b) ? std::exp(i1 * *g.param) : cplx(1.0);
        break;
      case GateKind::SWAP: m[static_cast<std::size_t>(b | (a << 1))][static_cast<std::size_t>(in)] = 1.0; break;
      default: break;
    }
  }
  return m;
}

/// Full 2^n x 2^n matrix of a gate acting on an n-qubit register.
inline Matrix embed(const Gate& g, int n) {
  const std::size_t dim = std::size_t{1} << n;
  const Matrix local = local_matrix(g);
  Matrix full(dim, std::vector<cplx>(dim, 0.0));
  auto local_index = [&](std::size_t x) {
    std::size_t k = 0;
    for (std::size_t j = 0; j < g.qubits.size(); ++j) k |= ((x >> g.qubits[j]) & 1U) << j;
    return k;
  };
  std::size_t mask = 0;
  for (int q : g.qubits) mask |= std::size_t{1} << q;
  for (std::size_t row = 0; row < dim; ++row) {
    for (std::size_t col = 0; col < dim; ++col) {
      if ((row & ~mask) != (col & ~mask)) continue;
      full[row][col] = local[local_index(row)][local_index(col)];
    }
  }
  return full;
}

/// Exact outcome probabilities of a logical circuit by dense matrix-vector
/// products, keyed by measured qubits in ascending order.
inline std::map<std::string, double> dense_distribution(const LogicalCircuit& c) {
  const std::size_t dim = std::size_t{1} << c.n_qubits;
  std::vector<cplx> state(dim, 0.0);
  state[0] = 1.0;
  std::set<int> measured;
  for (const Gate& g : c.instructions) {
    if (g.kind == GateKind::MEASURE) {
      measured.insert(g.qubits[0]);
      continue;
    }
    const Matrix m = embed(g, c.n_qubits);
    std::vector<cplx> next(dim, 0.0);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t k = 0; k < dim; ++k) next[r] += m[r][k] * state[k];
    }
    state = std::move(next);
  }
  std::map<std::string, double> out;
  for (std::size_t x = 0; x < dim; ++x) {
    const double p = std::norm(state[x]);
    if (p < 1e-14) continue;
    std::string key;
    for (int q : measured) key += ((x >> q) & 1U) ? '1' : '0';
    out[key] += p;
  }
  return out;
}

// ------------------------------------------------------------ score oracle

/// Reciprocal usage-weighted mean error, recomputed from raw instructions.
struct ScoreOracle {
  static double weighted(const std::vector<std::pair<int, double>>& terms) {
    double num = 0.0;
    double den = 0.0;
    for (const auto& [c, e] : terms) {
      num += c * e;
      den += c;
    }
    return den / num;
  }

  static double qubit_score_readout(const PhysicalCircuit& pc, const CalibrationSnapshot& s) {
    std::map<int, int> count;
    for (const Gate& g : pc.instructions) {
      for (int q : g.qubits) ++count[q];
    }
    std::vector<std::pair<int, double>> terms;
    for (const auto& [q, c] : count) terms.emplace_back(c, s.qubits[static_cast<std::size_t>(q)].readout_error);
    return weighted(terms);
  }

  static double gate_score(const PhysicalCircuit& pc, const CalibrationSnapshot& s) {
    std::vector<std::pair<int, double>> terms;
    for (const Gate& g : pc.instructions) {
      if (g.qubits.size() == 2) {
        double e = -1.0;
        for (const auto& gc : s.gates) {
          if (normalized(gc.edge) == normalized({g.qubits[0], g.qubits[1]})) e = gc.cx_error;
        }
        terms.emplace_back(1, e);
      } else if (g.kind != GateKind::MEASURE) {
        terms.emplace_back(1, s.qubits[static_cast<std::size_t>(g.qubits[0])].sq_gate_error);
      }
    }
    return weighted(terms);
  }
};

/// Trapezoid rule over a sampled curve.
template <typename Xs, typename Ys>
double trapezoid(const Xs& xs, const Ys& ys) {
  double sum = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) sum += 0.5 * (ys[i] + ys[i - 1]) * (xs[i] - xs[i - 1]);
  return sum;
}

}  // namespace qnp::testing
