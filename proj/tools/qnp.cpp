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

// qnp: headless front end to the execution planner.
//
//   qnp seed --computers devices.json --seed 42 --days 30
//   qnp compile --algo two_qubit_test --computer manila_like -n 60 --sort score
//   qnp run --batch <id> --circuits trans_0,trans_7 --shots 1000 --seed 3
//   qnp serve --port 8080
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include <CLI11.hpp>

#include <pthread.h>
#include <signal.h>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "default_computers.hpp"
#include "qnp/algorithms.hpp"
#include "qnp/error.hpp"
#include "qnp/io.hpp"
#include "qnp/service/http_server.hpp"
#include "qnp/service/pipeline.hpp"
#include "qnp/service/service.hpp"
#include "qnp/service/store.hpp"
#include "qnp/transpiler.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

/// Problems with how the tool was invoked rather than with the data.
class UsageError : public qnp::Error {
 public:
  using Error::Error;
};

struct Globals {
  std::string store = "data";
  std::string format = "table";
  int verbosity = 0;
};

void log(const Globals& g, int level, const std::string& message) {
  if (g.verbosity >= level) std::cerr << "qnp: " << message << '\n';
}

std::unique_ptr<qnp::Store> open_store(const Globals& g, bool writable) {
  try {
    return std::make_unique<qnp::Store>(g.store, writable);
  } catch (const qnp::Error& e) {
    throw UsageError(e.what());
  }
}

void emit_json(const json& doc) { std::cout << doc.dump(2) << '\n'; }

// ---------------------------------------------------------------- seed

struct SeedArgs {
  std::string computers_file;
  std::uint64_t seed = 42;
  int days = 30;
  double suspension_prob = 0.1;
  std::string start;
};

int cmd_seed(const Globals& g, const SeedArgs& a) {
  json spec;
  if (a.computers_file.empty()) {
    spec = json::parse(qnp::cli::kDefaultComputers);
  } else {
    try {
      spec = json::parse(qnp::read_text_file(a.computers_file));
    } catch (const std::exception& e) {
      throw UsageError("cannot read computers file: " + std::string(e.what()));
    }
  }
  if (spec.is_array()) spec = json{{"computers", spec}};
  spec["seed"] = a.seed;
  spec["days"] = a.days;
  spec["suspension_prob"] = a.suspension_prob;
  if (!a.start.empty()) spec["start"] = a.start;

  auto params = spec.get<qnp::SeedParams>();
  auto store = open_store(g, true);
  const auto ids = qnp::execute_seed(*store, params);
  log(g, 1, "seeded " + std::to_string(ids.size()) + " computers into " + g.store);

  json out = json::array();
  for (const auto& id : ids) out.push_back(qnp::computer_summary(store->get_computer(id)));
  if (g.format == "json") {
    emit_json(out);
  } else {
    for (const auto& c : out) {
      std::printf("%-16s %2d qubits  %3zu snapshots  latest %s\n",
                  c["descriptor"]["id"].get<std::string>().c_str(),
                  c["descriptor"]["n_qubits"].get<int>(), c["n_snapshots"].get<std::size_t>(),
                  c["latest_snapshot_date"].get<std::string>().c_str());
    }
  }
  return kExitOk;
}

// ----------------------------------------------------------- computers

int cmd_computers(const Globals& g) {
  auto store = open_store(g, false);
  json out = json::array();
  for (const auto& [id, record] : store->computers()) out.push_back(qnp::computer_summary(record));
  if (g.format == "json") {
    emit_json(out);
    return kExitOk;
  }
  std::printf("%-16s %-24s %6s %8s %s\n", "id", "name", "qubits", "queue", "latest");
  for (const auto& c : out) {
    const auto& d = c["descriptor"];
    std::printf("%-16s %-24s %6d %8s %s\n", d["id"].get<std::string>().c_str(),
                d["display_name"].get<std::string>().c_str(), d["n_qubits"].get<int>(),
                c["queue_length"].is_null() ? "-" : c["queue_length"].dump().c_str(),
                c["latest_snapshot_date"].is_null()
                    ? "-"
                    : c["latest_snapshot_date"].get<std::string>().c_str());
  }
  return kExitOk;
}

// --------------------------------------------------------- calibration

struct CalibrationArgs {
  std::string computer;
  int range_days = 7;
  int interval_days = 1;
  std::string attribute = "readout_error";
};

int cmd_calibration(const Globals& g, const CalibrationArgs& a) {
  if (a.interval_days > a.range_days) throw UsageError("--interval must not exceed --range");
  auto store = open_store(g, false);
  const json view =
      qnp::calibration_view(store->get_computer(a.computer), a.range_days, a.interval_days,
                            qnp::noise_attribute_from_string(a.attribute));
  if (g.format == "json") {
    emit_json(view);
    return kExitOk;
  }
  std::printf("%-10s %-10s %8s %12s %12s\n", "boundary", "snapshot", "queue", "reference",
              "gate_ref");
  for (const auto& s : view["slices"]) {
    if (!s["present"].get<bool>()) {
      std::printf("%-10s %-10s\n", s["boundary"].get<std::string>().c_str(), "-");
      continue;
    }
    const double gate_ref = s["gate_reference"].is_null() ? 0.0 : s["gate_reference"].get<double>();
    std::printf("%-10s %-10s %8lld %12.6g %12.6g\n", s["boundary"].get<std::string>().c_str(),
                s["snapshot_date"].get<std::string>().c_str(),
                s["queue_length"].get<long long>(), s["reference"].get<double>(), gate_ref);
  }
  return kExitOk;
}

// ------------------------------------------------------------- compile

struct CompileArgs {
  std::string algorithm;
  std::optional<int> qubits;
  std::string computer;
  int n_compilations = 60;
  std::uint64_t seed = 0;
  std::string sort;
  std::string axis = "gate";
  std::string qubit_attribute = "readout_error";
  std::optional<double> min_score;
  std::optional<double> max_score;
};

std::string signature_text(const json& circuit) {
  const auto physical = circuit.get<qnp::PhysicalCircuit>();
  std::string out;
  for (const qnp::Edge& e : qnp::logical_edge_signature(physical)) {
    if (!out.empty()) out += ' ';
    out += qnp::edge_key(e);
  }
  return out;
}

int cmd_compile(const Globals& g, const CompileArgs& a) {
  if (a.min_score && a.max_score && *a.min_score > *a.max_score) {
    throw UsageError("--min-score exceeds --max-score");
  }
  auto store = open_store(g, true);
  qnp::CompileParams params;
  params.algorithm = a.algorithm;
  params.n = a.qubits;
  params.computer_id = a.computer;
  params.n_compilations = a.n_compilations;
  params.seed = a.seed;
  params.qubit_attribute = qnp::qubit_score_attribute_from_string(a.qubit_attribute);
  qnp::validate_compile(*store, params);
  const qnp::BatchDocument batch = qnp::execute_compile(*store, params);
  log(g, 1, "compiled " + std::to_string(batch.circuits.size()) + " circuits into " + batch.id);

  qnp::BatchQuery query;
  if (!a.sort.empty()) query.sort = qnp::sort_key_from_string(a.sort);
  query.axis = qnp::score_axis_from_string(a.axis);
  query.min_score = a.min_score;
  query.max_score = a.max_score;
  const json view = qnp::batch_view(batch, query);
  if (g.format == "json") {
    emit_json(view);
    return kExitOk;
  }
  std::printf("batch %s  (%s on %s, snapshot %s)\n", batch.id.c_str(), a.algorithm.c_str(),
              a.computer.c_str(), batch.snapshot_date.c_str());
  std::printf("reference  qubit %.4f  gate %.4f\n", batch.summary.qubit_reference,
              batch.summary.gate_reference);
  std::printf("%-10s %6s %12s %12s  %s\n", "circuit", "depth", "qubit_score", "gate_score",
              "edges");
  for (const auto& c : view["circuits"]) {
    std::printf("%-10s %6d %12.4f %12.4f  %s\n", c["id"].get<std::string>().c_str(),
                c["depth"].get<int>(), c["qubit_score"].get<double>(),
                c["gate_score"].get<double>(), signature_text(c["circuit"]).c_str());
  }
  return kExitOk;
}

// ----------------------------------------------------------------- run

struct RunArgs {
  std::string batch;
  std::vector<std::string> circuits;
  std::uint64_t shots = qnp::kDefaultShots;
  std::uint64_t seed = 0;
  bool noiseless = false;
  std::string output;
};

int cmd_run(const Globals& g, const RunArgs& a) {
  auto store = open_store(g, true);
  qnp::RunParams params;
  params.batch_id = a.batch;
  params.circuit_ids = a.circuits;
  params.shots = a.shots;
  params.seed = a.seed;
  params.noiseless = a.noiseless;
  const qnp::RunDocument doc = qnp::execute_run(*store, params);
  log(g, 1, "stored results " + doc.id);
  const json out = doc;
  if (!a.output.empty()) qnp::write_json_atomic(a.output, out["results"]);
  if (g.format == "json") {
    emit_json(out);
    return kExitOk;
  }
  std::printf("results %s  (snapshot %s, %llu shots)\n", doc.id.c_str(), doc.snapshot_date.c_str(),
              static_cast<unsigned long long>(a.shots));
  std::printf("%-10s %10s %10s\n", "circuit", "fidelity", "hellinger");
  for (const auto& r : doc.results) {
    std::printf("%-10s %10.4f %10.4f\n", r.circuit_id.c_str(), r.fidelity, r.hellinger);
  }
  return kExitOk;
}

// --------------------------------------------------------------- serve

struct ServeArgs {
  std::string host = "0.0.0.0";
  int port = 8080;
  std::size_t workers = 0;
};

int cmd_serve(const Globals& g, const ServeArgs& a) {
  // Block the termination signals before any thread starts so that only the
  // dedicated waiter below ever receives them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  qnp::ServiceConfig config = qnp::ServiceConfig::from_env();
  config.store_root = g.store;
  if (a.workers > 0) config.workers = a.workers;

  std::unique_ptr<qnp::Service> service;
  try {
    service = std::make_unique<qnp::Service>(config);
  } catch (const qnp::Error& e) {
    throw UsageError(e.what());
  }
  qnp::HttpServer server(*service);
  if (!server.bind(a.host, a.port)) {
    throw UsageError("cannot listen on " + a.host + ":" + std::to_string(a.port));
  }
  log(g, 0, "serving " + g.store + " on http://" + a.host + ":" + std::to_string(a.port));

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  server.listen_after_bind();
  // listen may also return on its own; wake the waiter in that case.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();

  service->shutdown();
  log(g, 0, "stopped");
  return kExitOk;
}

int port_from_env() {
  if (const char* v = std::getenv("QNP_PORT"); v && *v) {
    try {
      return std::stoi(v);
    } catch (const std::exception&) {
      throw UsageError(std::string("QNP_PORT is not a port number: ") + v);
    }
  }
  return 8080;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qnp: noise-aware quantum circuit execution planner"};
  app.require_subcommand(1);
  Globals g;
  if (const char* v = std::getenv("QNP_STORE"); v && *v) g.store = v;
  app.add_option("--store", g.store, "Store root directory (env QNP_STORE)");
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"json", "table"}));
  app.add_flag("-v,--verbose", g.verbosity, "Log progress to stderr (repeat for more)");

  SeedArgs seed_args;
  auto* seed = app.add_subcommand("seed", "Generate synthetic calibration history");
  seed->add_option("--computers", seed_args.computers_file,
                   "JSON file with a list of device descriptors (default: bundled devices)");
  seed->add_option("--seed", seed_args.seed, "Master seed");
  seed->add_option("--days", seed_args.days, "Days of history")->check(CLI::Range(1, 3650));
  seed->add_option("--suspension-prob", seed_args.suspension_prob,
                   "Probability that a day has no calibration")
      ->check(CLI::Range(0.0, 1.0));
  seed->add_option("--start", seed_args.start, "Date of day 0 (YYYY-MM-DD)");

  auto* computers = app.add_subcommand("computers", "List computers in the store");

  CalibrationArgs cal_args;
  auto* calibration = app.add_subcommand("calibration", "Timesliced calibration view");
  calibration->add_option("--computer", cal_args.computer)->required();
  calibration->add_option("--range", cal_args.range_days, "Days back from the latest snapshot")
      ->check(CLI::PositiveNumber);
  calibration->add_option("--interval", cal_args.interval_days, "Days per slice")
      ->check(CLI::PositiveNumber);
  calibration->add_option("--attribute", cal_args.attribute)
      ->check(CLI::IsMember({"t1", "t2", "readout_error", "sq_gate_error"}));

  CompileArgs compile_args;
  auto* compile = app.add_subcommand("compile", "Compile, score and persist a batch");
  compile->add_option("--algo", compile_args.algorithm)
      ->required()
      ->check(CLI::IsMember(qnp::algorithm_names()));
  compile->add_option("--qubits", compile_args.qubits, "Circuit width")
      ->check(CLI::Range(qnp::kMinAlgorithmQubits, qnp::kMaxAlgorithmQubits));
  compile->add_option("--computer", compile_args.computer)->required();
  compile->add_option("-n,--compilations", compile_args.n_compilations)
      ->check(CLI::Range(1, qnp::kMaxCompilations));
  compile->add_option("--seed", compile_args.seed);
  compile->add_option("--sort", compile_args.sort)->check(CLI::IsMember({"score", "depth"}));
  compile->add_option("--axis", compile_args.axis)->check(CLI::IsMember({"gate", "qubit"}));
  compile->add_option("--qubit-attribute", compile_args.qubit_attribute)
      ->check(CLI::IsMember({"readout_error", "derived_from_t1", "derived_from_t2"}));
  compile->add_option("--min-score", compile_args.min_score);
  compile->add_option("--max-score", compile_args.max_score);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Execute circuits of a batch on the noisy simulator");
  run->add_option("--batch", run_args.batch)->required();
  run->add_option("--circuits", run_args.circuits, "Circuit ids (comma separated, 1..10)")
      ->required()
      ->delimiter(',');
  run->add_option("--shots", run_args.shots)->check(CLI::Range(1, 100000000));
  run->add_option("--seed", run_args.seed);
  run->add_flag("--noiseless", run_args.noiseless, "Use an all-zero noise model");
  run->add_option("--output", run_args.output, "Also write the FidelityResult list here");

  ServeArgs serve_args;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--host", serve_args.host);
  serve->add_option("--port", serve_args.port, "Port (env QNP_PORT)")->check(CLI::Range(0, 65535));
  serve->add_option("--workers", serve_args.workers, "Worker threads (default: CPU count)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (seed->parsed()) return cmd_seed(g, seed_args);
    if (computers->parsed()) return cmd_computers(g);
    if (calibration->parsed()) return cmd_calibration(g, cal_args);
    if (compile->parsed()) return cmd_compile(g, compile_args);
    if (run->parsed()) return cmd_run(g, run_args);
    if (serve->parsed()) {
      if (serve->count("--port") == 0) serve_args.port = port_from_env();
      return cmd_serve(g, serve_args);
    }
  } catch (const UsageError& e) {
    std::cerr << "qnp: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "qnp: error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
