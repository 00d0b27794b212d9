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

#include "qnp/service/http_server.hpp"

#include <httplib.h>

#include <charconv>
#include <functional>
#include <optional>

#include "qnp/service/api_error.hpp"

namespace qnp {

using nlohmann::json;

namespace {

void send(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, const ApiError& e) { send(res, e.status(), e.envelope()); }

std::optional<std::string> param(const httplib::Request& req, const char* key) {
  if (!req.has_param(key)) return std::nullopt;
  return req.get_param_value(key);
}

int int_param(const httplib::Request& req, const char* key, int fallback) {
  const auto v = param(req, key);
  if (!v) return fallback;
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || ptr != v->data() + v->size()) {
    throw ApiError::invalid("invalid_query", std::string(key) + " must be an integer");
  }
  return out;
}

std::optional<double> double_param(const httplib::Request& req, const char* key) {
  const auto v = param(req, key);
  if (!v) return std::nullopt;
  try {
    std::size_t used = 0;
    const double d = std::stod(*v, &used);
    if (used != v->size()) throw std::invalid_argument(key);
    return d;
  } catch (const std::exception&) {
    throw ApiError::invalid("invalid_query", std::string(key) + " must be a number");
  }
}

json parse_body(const httplib::Request& req) {
  try {
    return json::parse(req.body);
  } catch (const json::exception& e) {
    throw ApiError::invalid("invalid_json", std::string("request body is not JSON: ") + e.what());
  }
}

using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

Handler guarded(Handler inner) {
  return [inner = std::move(inner)](const httplib::Request& req, httplib::Response& res) {
    try {
      inner(req, res);
    } catch (const ApiError& e) {
      send_error(res, e);
    } catch (const std::exception& e) {
      send_error(res, to_api_error(e));
    }
  };
}

json job_accepted(const Job& job) {
  return json{{"job_id", job.id}, {"state", to_string(job.state)}};
}

}  // namespace

struct HttpServer::Impl {
  Service& service;
  httplib::Server server;

  explicit Impl(Service& s) : service(s) { routes(); }

  void routes() {
    // The library default also sets SO_REUSEPORT, which would let a second
    // server share an occupied port instead of failing to bind.
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
    });
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
      res.status = 204;
    });

    server.Get("/api/spec", guarded([](const httplib::Request&, httplib::Response& res) {
      send(res, 200, api_description());
    }));
    server.Get("/api/computers", guarded([this](const httplib::Request&, httplib::Response& res) {
      send(res, 200, service.list_computers());
    }));
    server.Get(R"(/api/computers/([^/]+)/calibration)",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 const std::string id = req.matches[1];
                 const int range = int_param(req, "range_days", 7);
                 const int interval = int_param(req, "interval_days", 1);
                 const NoiseAttribute attribute = noise_attribute_from_string(
                     param(req, "attribute").value_or("readout_error"));
                 send(res, 200, service.calibration(id, range, interval, attribute));
               }));
    server.Post("/api/compile", guarded([this](const httplib::Request& req, httplib::Response& res) {
      send(res, 202, job_accepted(service.submit_compile(parse_body(req))));
    }));
    server.Get(R"(/api/batches/([^/]+))",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 BatchQuery query;
                 if (auto s = param(req, "sort")) query.sort = sort_key_from_string(*s);
                 if (auto a = param(req, "axis")) query.axis = score_axis_from_string(*a);
                 query.min_score = double_param(req, "min_score");
                 query.max_score = double_param(req, "max_score");
                 send(res, 200, service.get_batch(req.matches[1], query));
               }));
    server.Post("/api/run", guarded([this](const httplib::Request& req, httplib::Response& res) {
      send(res, 202, job_accepted(service.submit_run(parse_body(req))));
    }));
    server.Get(R"(/api/jobs/([^/]+))",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 send(res, 200, service.get_job(req.matches[1]));
               }));
    server.Get(R"(/api/results/([^/]+))",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 send(res, 200, service.get_results(req.matches[1]));
               }));
    server.Post("/api/admin/seed",
                guarded([this](const httplib::Request& req, httplib::Response& res) {
                  send(res, 200, service.seed(parse_body(req)));
                }));

    server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
      if (res.status == 404 && res.body.empty()) {
        send_error(res, ApiError::not_found("no_route", "no route for " + req.method + " " + req.path));
      }
    });
  }
};

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>(service)) {}
HttpServer::~HttpServer() { stop(); }

bool HttpServer::bind(const std::string& host, int port) {
  return impl_->server.bind_to_port(host, port);
}

int HttpServer::bind_to_any_port(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool HttpServer::listen_after_bind() { return impl_->server.listen_after_bind(); }
void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }
void HttpServer::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

const json& api_description() {
  static const json doc = json::parse(R"JSON({
  "openapi": "3.0.3",
  "info": {"title": "qnp execution planner", "version": "0.1.0"},
  "components": {
    "schemas": {
      "Error": {"type": "object", "required": ["code", "message"],
        "properties": {"code": {"type": "string"}, "message": {"type": "string"}, "details": {}}},
      "JobAccepted": {"type": "object", "required": ["job_id", "state"],
        "properties": {"job_id": {"type": "string"}, "state": {"type": "string"}}},
      "Job": {"type": "object",
        "required": ["id", "kind", "state", "created_at", "finished_at", "payload", "result_ref", "error"],
        "properties": {
          "id": {"type": "string"}, "kind": {"enum": ["compile", "run"]},
          "state": {"enum": ["queued", "running", "done", "failed"]},
          "created_at": {"type": "string"}, "finished_at": {"type": ["string", "null"]},
          "payload": {"type": "object"}, "result_ref": {"type": ["string", "null"]},
          "error": {"type": ["object", "null"]}}},
      "ComputerSummary": {"type": "object",
        "required": ["descriptor", "queue_length", "latest_snapshot_date"],
        "properties": {"descriptor": {"type": "object"},
          "queue_length": {"type": ["integer", "null"]},
          "latest_snapshot_date": {"type": ["string", "null"]},
          "n_snapshots": {"type": "integer"}}},
      "OutcomeDistribution": {"type": "object", "required": ["n_bits", "kind", "entries"],
        "properties": {"n_bits": {"type": "integer"},
          "kind": {"enum": ["exact_probability", "shot_counts"]},
          "entries": {"type": "object"}, "total_shots": {"type": ["integer", "null"]}}},
      "FidelityResult": {"type": "object",
        "required": ["circuit_id", "fidelity", "hellinger", "ideal", "observed"],
        "properties": {"circuit_id": {"type": "string"}, "fidelity": {"type": "number"},
          "hellinger": {"type": "number"},
          "ideal": {"$ref": "#/components/schemas/OutcomeDistribution"},
          "observed": {"$ref": "#/components/schemas/OutcomeDistribution"}}}
    }
  },
  "paths": {
    "/api/computers": {"get": {"summary": "List computers with their latest queue length and snapshot date",
      "responses": {"200": {"description": "array of ComputerSummary"}}}},
    "/api/computers/{id}/calibration": {"get": {
      "summary": "Timesliced calibration with reference values, signed deltas, gate-error KDE and queue series",
      "parameters": [{"name": "range_days", "in": "query", "schema": {"type": "integer", "default": 7}},
                     {"name": "interval_days", "in": "query", "schema": {"type": "integer", "default": 1}},
                     {"name": "attribute", "in": "query",
                      "schema": {"enum": ["t1", "t2", "readout_error", "sq_gate_error"]}}],
      "responses": {"200": {"description": "calibration view"}, "404": {"description": "unknown computer"},
                    "422": {"description": "bad range"}}}},
    "/api/compile": {"post": {
      "summary": "Queue a compile job {algorithm, n?, computer_id, n_compilations, seed?, qubit_attribute?}",
      "responses": {"202": {"description": "JobAccepted"}, "404": {"description": "unknown computer"},
                    "422": {"description": "invalid algorithm, width or count"}}}},
    "/api/batches/{id}": {"get": {
      "summary": "Scored circuits of a batch, sorted and filtered",
      "parameters": [{"name": "sort", "in": "query", "schema": {"enum": ["score", "depth"]}},
                     {"name": "axis", "in": "query", "schema": {"enum": ["gate", "qubit"]}},
                     {"name": "min_score", "in": "query", "schema": {"type": "number"}},
                     {"name": "max_score", "in": "query", "schema": {"type": "number"}}],
      "responses": {"200": {"description": "batch view"}, "404": {"description": "unknown batch"},
                    "422": {"description": "bad bounds"}}}},
    "/api/run": {"post": {
      "summary": "Queue a run job {batch_id, circuit_ids (1..10), shots, seed?, noiseless?}",
      "responses": {"202": {"description": "JobAccepted"}, "404": {"description": "unknown batch or circuit"},
                    "422": {"description": "invalid request"}}}},
    "/api/jobs/{id}": {"get": {"summary": "Job state",
      "responses": {"200": {"description": "Job"}, "404": {"description": "unknown job"}}}},
    "/api/results/{job_id}": {"get": {
      "summary": "Fidelity results of a finished run job (batch view for a compile job)",
      "responses": {"200": {"description": "array of FidelityResult (a run job) or the batch view (a compile job)",
        "content": {"application/json": {"schema": {"oneOf": [
          {"type": "array", "items": {"$ref": "#/components/schemas/FidelityResult"}},
          {"type": "object"}]}}}},
                    "404": {"description": "unknown job"}, "409": {"description": "job not finished or failed"}}}},
    "/api/admin/seed": {"post": {
      "summary": "Generate synthetic calibration series {computers: [descriptor], seed, days, suspension_prob?, start?}",
      "responses": {"200": {"description": "array of ComputerSummary"}, "422": {"description": "invalid descriptor"}}}},
    "/api/spec": {"get": {"summary": "This document", "responses": {"200": {"description": "OpenAPI document"}}}}
  }
})JSON");
  return doc;
}

}  // namespace qnp
