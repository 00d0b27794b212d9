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

#include <fstream>
#include <sstream>

#include "qnp/error.hpp"
#include "qnp/fidelity.hpp"
#include "qnp/service/pipeline.hpp"
#include "qnp/simulator.hpp"
#include "support.hpp"

namespace qnp {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::map<std::string, std::string> snapshot_tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    files[fs::relative(entry.path(), root).string()] = buf.str();
  }
  return files;
}

SeedParams seed_params(std::uint64_t seed = 7) {
  SeedParams p;
  p.computers = {testing::path_device(5, "line5"), testing::t_device("tee")};
  p.seed = seed;
  p.days = 30;
  p.suspension_prob = 0.1;
  return p;
}

CompileParams compile_params(int n = 60) {
  CompileParams p;
  p.algorithm = "two_qubit_test";
  p.computer_id = "line5";
  p.n_compilations = n;
  p.seed = 3;
  return p;
}

class PipelineTest : public ::testing::Test {
 protected:
  void SetUp() override { execute_seed(store, seed_params()); }
  testing::TempDir dir;
  Store store{dir / "store"};
};

TEST(Seed, IdempotentBytes) {
  testing::TempDir a;
  testing::TempDir b;
  Store sa(a.path());
  Store sb(b.path());
  EXPECT_EQ(execute_seed(sa, seed_params()), (std::vector<std::string>{"line5", "tee"}));
  execute_seed(sb, seed_params());
  execute_seed(sb, seed_params());
  const auto ta = snapshot_tree(a.path() / "computers");
  EXPECT_FALSE(ta.empty());
  EXPECT_EQ(ta, snapshot_tree(b.path() / "computers"));
}

TEST(Seed, Validation) {
  testing::TempDir dir;
  Store store(dir.path());
  auto p = seed_params();
  p.computers.push_back(ComputerDescriptor{"split", "", 4, {{0, 1}, {2, 3}}});
  EXPECT_THROW(execute_seed(store, p), InvalidArgument);
  EXPECT_TRUE(store.computers().empty());
  p = seed_params();
  p.days = 0;
  EXPECT_THROW(validate_seed(p), InvalidArgument);
  p = seed_params();
  p.suspension_prob = 1.5;
  EXPECT_THROW(validate_seed(p), InvalidArgument);
  p = seed_params();
  p.computers.push_back(p.computers.front());
  EXPECT_THROW(validate_seed(p), InvalidArgument);
  EXPECT_THROW(validate_seed(SeedParams{}), InvalidArgument);
}

TEST(Seed, JsonAcceptsDescriptorsKey) {
  const json body = {{"descriptors", {descriptor_to_json(testing::path_device(3, "p3"))}}, {"days", 4}};
  const auto p = body.get<SeedParams>();
  EXPECT_EQ(p.computers.size(), 1u);
  EXPECT_EQ(p.days, 4);
  EXPECT_EQ(p.seed, 42u);
}

TEST_F(PipelineTest, CompileSixtyAndPersist) {
  const auto doc = execute_compile(store, compile_params());
  EXPECT_EQ(doc.circuits.size(), 60u);
  EXPECT_EQ(doc.summary.reports.size(), 60u);
  EXPECT_EQ(doc.circuits[7].id, "trans_7");
  EXPECT_EQ(doc.snapshot_date, format_date(store.get_computer("line5").series.latest().date));
  EXPECT_TRUE(store.contains(Store::Collection::batches, doc.id));
  const auto back = store.get(Store::Collection::batches, doc.id).get<BatchDocument>();
  EXPECT_EQ(back.circuits, doc.circuits);
}

TEST_F(PipelineTest, IdenticalRequestIdenticalPayload) {
  const auto a = execute_compile(store, compile_params());
  const auto first = json(store.get(Store::Collection::batches, a.id)).dump();
  const auto b = execute_compile(store, compile_params());
  EXPECT_EQ(a.id, b.id);
  EXPECT_EQ(json(store.get(Store::Collection::batches, b.id)).dump(), first);
  auto other = compile_params();
  other.seed = 4;
  EXPECT_NE(execute_compile(store, other).id, a.id);
}

TEST_F(PipelineTest, CompileValidation) {
  auto p = compile_params();
  p.computer_id = "nope";
  EXPECT_THROW(validate_compile(store, p), NotFound);
  p = compile_params(0);
  EXPECT_THROW(validate_compile(store, p), InvalidArgument);
  p = compile_params(501);
  EXPECT_THROW(validate_compile(store, p), InvalidArgument);
  p = compile_params();
  p.algorithm = "grover";
  EXPECT_THROW(validate_compile(store, p), InvalidArgument);
  p = compile_params();
  p.algorithm = "bv";
  p.n = 7;  // seven qubits do not fit a five-qubit line
  EXPECT_THROW(validate_compile(store, p), InvalidArgument);
}

TEST_F(PipelineTest, CalibrationViewSlices) {
  const auto record = store.get_computer("line5");
  const json daily = calibration_view(record, 7, 1, NoiseAttribute::readout_error);
  ASSERT_EQ(daily.at("slices").size(), 7u);
  EXPECT_EQ(daily.at("polarity"), "lower_is_better");
  const json weekly = calibration_view(record, 30, 7, NoiseAttribute::t1);
  EXPECT_EQ(weekly.at("slices").size(), 5u);
  EXPECT_EQ(weekly.at("polarity"), "higher_is_better");
  for (const json& s : daily.at("slices")) {
    if (!s.at("present")) continue;
    double sum = 0;
    for (const json& q : s.at("qubits")) {
      sum += q.at("delta").get<double>();
      EXPECT_EQ(q.at("better").get<bool>(), q.at("delta").get<double>() < 0);
    }
    EXPECT_NEAR(sum, 0.0, 1e-12);
    EXPECT_EQ(s.at("gates").size(), 4u);
    EXPECT_GT(s.at("kde").at("bandwidth").get<double>(), 0.0);
  }
  EXPECT_LE(daily.at("queue").size(), 7u);
  EXPECT_GE(daily.at("queue").size(), 1u);
  EXPECT_THROW(calibration_view(record, 3, 7, NoiseAttribute::t1), InvalidArgument);
  EXPECT_THROW(calibration_view(record, 7, 0, NoiseAttribute::t1), InvalidArgument);
}

TEST_F(PipelineTest, BatchViewOrdering) {
  const auto doc = execute_compile(store, compile_params());
  const json plain = batch_view(doc, {});
  ASSERT_EQ(plain.at("circuits").size(), 60u);
  for (std::size_t i = 0; i < 60; ++i) {
    EXPECT_EQ(plain.at("circuits")[i].at("id"), "trans_" + std::to_string(i));
  }
  EXPECT_TRUE(plain.at("sort").is_null());

  const json by_score = batch_view(doc, {SortKey::score, ScoreAxis::gate, {}, {}});
  const auto& c = by_score.at("circuits");
  for (std::size_t i = 1; i < c.size(); ++i) {
    EXPECT_GE(c[i - 1].at("gate_score").get<double>(), c[i].at("gate_score").get<double>());
  }
  const double ref = by_score.at("gate_reference");
  const json above = batch_view(doc, {SortKey::score, ScoreAxis::gate, ref, {}});
  for (const json& x : above.at("circuits")) EXPECT_GE(x.at("gate_score").get<double>(), ref);
  EXPECT_LT(above.at("circuits").size(), 60u);
  EXPECT_EQ(above.at("n_total"), 60);

  double usage = 0;
  for (const auto& [k, v] : plain.at("average_gate_usage").items()) usage += v.get<double>();
  double expected = 0;  // one CX per circuit plus its routing swaps
  for (const auto& c : doc.circuits) expected += (1.0 + static_cast<double>(c.inserted_swaps.size())) / 60;
  EXPECT_NEAR(usage, expected, 1e-12);
}

TEST_F(PipelineTest, RunDeterministicAndConsistent) {
  const auto batch = execute_compile(store, compile_params());
  RunParams r;
  r.batch_id = batch.id;
  r.circuit_ids = {"trans_0", "trans_1", "trans_2", "trans_3", "trans_4"};
  r.shots = 1000;
  r.seed = 11;
  const auto a = execute_run(store, r);
  const auto b = execute_run(store, r);
  EXPECT_EQ(a.id, b.id);
  EXPECT_EQ(json(a).dump(), json(b).dump());
  ASSERT_EQ(a.results.size(), 5u);
  for (const auto& res : a.results) {
    EXPECT_EQ(res.observed.total_shots, 1000u);
    EXPECT_NEAR(fidelity(res.ideal, res.observed), res.fidelity, 1e-12);
    EXPECT_EQ(res.ideal, run_ideal(batch.logical));
  }
  EXPECT_EQ(store.get(Store::Collection::results, a.id).get<RunDocument>().results, a.results);
}

TEST_F(PipelineTest, NoiselessRunIsNearPerfect) {
  const auto batch = execute_compile(store, compile_params(3));
  RunParams r{batch.id, {"trans_0"}, 10000, 1, true};
  EXPECT_GT(execute_run(store, r).results[0].fidelity, 0.99);
}

TEST_F(PipelineTest, RunValidation) {
  const auto batch = execute_compile(store, compile_params(12));
  RunParams r{batch.id, {}, 100, 1, false};
  EXPECT_THROW(validate_run(store, r), InvalidArgument);
  for (int i = 0; i < 11; ++i) r.circuit_ids.push_back("trans_" + std::to_string(i));
  EXPECT_THROW(validate_run(store, r), InvalidArgument);
  r.circuit_ids = {"trans_1", "trans_1"};
  EXPECT_THROW(validate_run(store, r), InvalidArgument);
  r.circuit_ids = {"trans_99"};
  EXPECT_THROW(validate_run(store, r), NotFound);
  r.circuit_ids = {"trans_1"};
  r.batch_id = "batch_missing";
  EXPECT_THROW(validate_run(store, r), NotFound);
  EXPECT_THROW((json{{"batch_id", "b"}, {"circuit_ids", {"x"}}, {"shots", 0}}.get<RunParams>()), InvalidArgument);
  EXPECT_THROW((json{{"batch_id", "b"}, {"circuit_ids", {"x"}}, {"shots", 1.5}}.get<RunParams>()), InvalidArgument);
}

TEST_F(PipelineTest, RunCancellation) {
  const auto batch = execute_compile(store, compile_params(3));
  RunParams r{batch.id, {"trans_0", "trans_1"}, 100, 1, false};
  EXPECT_THROW(execute_run(store, r, [] { return true; }), Cancelled);
  EXPECT_TRUE(store.ids(Store::Collection::results).empty());
}

TEST_F(PipelineTest, ComputerSummary) {
  const json s = computer_summary(store.get_computer("tee"));
  EXPECT_EQ(s.at("descriptor").at("id"), "tee");
  EXPECT_TRUE(s.at("queue_length").is_number_integer());
  EXPECT_GE(s.at("n_snapshots").get<int>(), 1);
  const json empty = computer_summary(ComputerRecord{testing::path_device(2, "e"), {"e", {}}});
  EXPECT_TRUE(empty.at("latest_snapshot_date").is_null());
}

}  // namespace
}  // namespace qnp
