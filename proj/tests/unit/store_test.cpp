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

#include <thread>

#include "qnp/calibration.hpp"
#include "qnp/error.hpp"
#include "qnp/service/store.hpp"
#include "support.hpp"

namespace qnp {
namespace {

namespace fs = std::filesystem;

ComputerRecord sample(std::string id = "path") {
  const auto d = testing::path_device(4, std::move(id));
  return {d, generate_synthetic(d, 3, 5, 0.0)};
}

TEST(Store, CreatesLayout) {
  testing::TempDir dir;
  Store store(dir / "s");
  for (const char* sub : {"computers", "batches", "jobs", "results"}) {
    EXPECT_TRUE(fs::is_directory(dir / "s" / sub)) << sub;
  }
  EXPECT_FALSE(fs::exists(dir / "s" / ".write-probe"));
}

TEST(Store, UnwritableRootThrows) {
  EXPECT_THROW(Store("/proc/qnp-store"), Error);
}

TEST(Store, ComputerRoundTrip) {
  testing::TempDir dir;
  Store store(dir.path());
  EXPECT_TRUE(store.computers().empty());
  const auto rec = sample();
  store.put_computer(rec);
  const auto back = store.get_computer("path");
  EXPECT_EQ(back.series, rec.series);
  EXPECT_EQ(back.descriptor.coupling_map, rec.descriptor.coupling_map);
  EXPECT_EQ(store.computers().size(), 1u);
  EXPECT_THROW(store.get_computer("nope"), NotFound);
}

TEST(Store, DocumentRoundTrip) {
  testing::TempDir dir;
  Store store(dir.path());
  const nlohmann::json doc = {{"a", 1}, {"b", {1.5, 2.5}}};
  store.put(Store::Collection::results, "run_1", doc);
  EXPECT_TRUE(store.contains(Store::Collection::results, "run_1"));
  EXPECT_FALSE(store.contains(Store::Collection::batches, "run_1"));
  EXPECT_EQ(store.get(Store::Collection::results, "run_1"), doc);
  EXPECT_THROW(store.get(Store::Collection::results, "run_2"), NotFound);
  store.put(Store::Collection::results, "run_0", doc);
  EXPECT_EQ(store.ids(Store::Collection::results), (std::vector<std::string>{"run_0", "run_1"}));
  // Reopening sees the same data.
  Store again(dir.path());
  EXPECT_EQ(again.get(Store::Collection::results, "run_1"), doc);
}

TEST(Store, JobRoundTrip) {
  testing::TempDir dir;
  Store store(dir.path());
  Job j;
  j.id = "01J0000000000000000000000A";
  j.created_at = utc_now_iso();
  j.payload = {{"algorithm", "bell"}};
  store.put_job(j);
  EXPECT_EQ(store.get_job(j.id), j);
  EXPECT_EQ(store.jobs().size(), 1u);
  EXPECT_THROW(store.get_job("missing"), NotFound);
}

TEST(Store, RejectsUnsafeIds) {
  EXPECT_TRUE(Store::is_valid_id("trans_12"));
  EXPECT_TRUE(Store::is_valid_id("batch_0a.b-c"));
  for (const char* bad : {"", ".", "..", "a/b", "../x", "a b", "a\\b"}) {
    EXPECT_FALSE(Store::is_valid_id(bad)) << bad;
  }
  EXPECT_FALSE(Store::is_valid_id(std::string(201, 'a')));
  testing::TempDir dir;
  Store store(dir.path());
  EXPECT_THROW(store.put(Store::Collection::jobs, "../evil", {}), InvalidArgument);
  EXPECT_THROW(store.get(Store::Collection::jobs, "../evil"), NotFound);
  EXPECT_THROW(store.put_computer(sample("bad/id")), InvalidArgument);
}

TEST(Store, ConcurrentWritesLeaveValidDocuments) {
  testing::TempDir dir;
  Store store(dir.path());
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&store, t] {
      for (int i = 0; i < 50; ++i) {
        store.put(Store::Collection::results, "shared", {{"writer", t}, {"i", i}});
        store.put(Store::Collection::results, "own_" + std::to_string(t), {{"i", i}});
      }
    });
  }
  for (auto& th : threads) th.join();
  const auto doc = store.get(Store::Collection::results, "shared");
  EXPECT_EQ(doc.at("i"), 49);
  for (int t = 0; t < 4; ++t) {
    EXPECT_EQ(store.get(Store::Collection::results, "own_" + std::to_string(t)).at("i"), 49);
  }
  EXPECT_EQ(store.ids(Store::Collection::results).size(), 5u);
}

}  // namespace
}  // namespace qnp
