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

#include "qnp/error.hpp"
#include "qnp/service/job.hpp"

namespace qnp {
namespace {

Job fresh() {
  Job j;
  j.id = "01J000000000000000000000AA";
  j.kind = JobKind::run;
  j.created_at = "2024-03-01T00:00:00Z";
  j.payload = {{"batch_id", "b"}};
  return j;
}

TEST(Job, HappyPath) {
  Job j = fresh();
  j.transition(JobState::running);
  j.succeed("run_1");
  EXPECT_EQ(j.state, JobState::done);
  EXPECT_EQ(j.result_ref, "run_1");
  EXPECT_TRUE(j.finished_at.has_value());
  EXPECT_FALSE(j.error.has_value());
}

TEST(Job, FailFromQueuedOrRunning) {
  Job a = fresh();
  a.fail("shutdown", "service stopped");
  EXPECT_EQ(a.state, JobState::failed);
  EXPECT_EQ(a.error, (JobError{"shutdown", "service stopped"}));

  Job b = fresh();
  b.transition(JobState::running);
  b.fail("invalid_argument", "x");
  EXPECT_EQ(b.state, JobState::failed);
}

TEST(Job, IllegalTransitions) {
  Job j = fresh();
  EXPECT_THROW(j.transition(JobState::done), InvalidArgument);
  EXPECT_THROW(j.transition(JobState::queued), InvalidArgument);
  j.transition(JobState::running);
  EXPECT_THROW(j.transition(JobState::running), InvalidArgument);
  j.succeed("r");
  EXPECT_THROW(j.transition(JobState::failed), InvalidArgument);
  EXPECT_THROW(j.fail("x", "y"), InvalidArgument);
  EXPECT_TRUE(is_terminal(j.state));
  EXPECT_FALSE(is_terminal(JobState::running));
}

TEST(Job, JsonRoundTrip) {
  Job j = fresh();
  EXPECT_EQ(nlohmann::json(j).get<Job>(), j);
  const nlohmann::json q = j;
  EXPECT_EQ(q.at("state"), "queued");
  EXPECT_EQ(q.at("kind"), "run");
  j.transition(JobState::running);
  j.fail("shutdown", "stopped");
  EXPECT_EQ(nlohmann::json(j).get<Job>(), j);
  EXPECT_THROW(job_state_from_string("paused"), InvalidArgument);
  EXPECT_EQ(job_kind_from_string("compile"), JobKind::compile);
}

TEST(Job, UtcTimestampShape) {
  const std::string t = utc_now_iso();
  ASSERT_GE(t.size(), 20u);
  EXPECT_EQ(t[4], '-');
  EXPECT_EQ(t[10], 'T');
  EXPECT_EQ(t.back(), 'Z');
}

}  // namespace
}  // namespace qnp
