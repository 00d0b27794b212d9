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

#include <httplib.h>
#include <nlohmann/json.hpp>
#include <arpa/inet.h>
#include <netinet/in.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <thread>

#include "support.hpp"

#ifndef QNP_CLI_PATH
#error "QNP_CLI_PATH must name the qnp executable"
#endif

namespace qnp {
namespace {

using nlohmann::json;
using namespace std::chrono_literals;

struct Output {
  int code = -1;
  std::string out;
};

/// Runs the CLI through the shell; stderr is discarded.
Output qnp_cli(const std::string& args) {
  const std::string cmd = std::string("'") + QNP_CLI_PATH + "' " + args + " 2>/dev/null";
  Output o;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return o;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) o.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

std::string store_flag(const testing::TempDir& dir) { return "--store '" + (dir / "store").string() + "'"; }

std::string pipeline(const testing::TempDir& dir) {
  const std::string s = store_flag(dir) + " --format json ";
  std::string all = qnp_cli(s + "seed --seed 3 --days 10").out;
  const Output compiled = qnp_cli(s + "compile --algo ghz --qubits 3 --computer quito_like -n 20 --seed 4 --sort depth");
  all += compiled.out;
  const std::string batch = json::parse(compiled.out).at("id");
  all += qnp_cli(s + "run --batch " + batch + " --circuits trans_0,trans_5 --shots 500 --seed 1").out;
  return all;
}

TEST(Cli, SeedAndListJson) {
  testing::TempDir dir;
  const Output seeded = qnp_cli(store_flag(dir) + " --format json seed --days 5");
  ASSERT_EQ(seeded.code, 0);
  EXPECT_EQ(json::parse(seeded.out).size(), 3u);
  const Output listed = qnp_cli(store_flag(dir) + " --format json computers");
  ASSERT_EQ(listed.code, 0);
  const json list = json::parse(listed.out);
  ASSERT_EQ(list.size(), 3u);
  EXPECT_EQ(list[0].at("descriptor").at("id"), "lagos_like");
  const Output table = qnp_cli(store_flag(dir) + " computers");
  EXPECT_EQ(table.code, 0);
  EXPECT_NE(table.out.find("manila_like"), std::string::npos);
}

TEST(Cli, CustomComputersFile) {
  testing::TempDir dir;
  const auto file = dir / "devices.json";
  std::ofstream(file) << json::array({descriptor_to_json(testing::path_device(3, "tiny"))}).dump();
  ASSERT_EQ(qnp_cli(store_flag(dir) + " seed --computers '" + file.string() + "' --days 3").code, 0);
  const Output cal = qnp_cli(store_flag(dir) + " --format json calibration --computer tiny --range 3");
  ASSERT_EQ(cal.code, 0);
  EXPECT_EQ(json::parse(cal.out).at("slices").size(), 3u);
  std::ofstream(dir / "bad.json") << "[{\"id\": \"x\"";
  EXPECT_EQ(qnp_cli(store_flag(dir) + " seed --computers '" + (dir / "bad.json").string() + "'").code, 2);
}

TEST(Cli, FullPipelineIsDeterministic) {
  testing::TempDir a;
  testing::TempDir b;
  const std::string first = pipeline(a);
  EXPECT_NE(first.find("\"results\""), std::string::npos);
  EXPECT_EQ(first, pipeline(b));
}

TEST(Cli, RunWritesOutputFile) {
  testing::TempDir dir;
  const std::string s = store_flag(dir) + " --format json ";
  ASSERT_EQ(qnp_cli(s + "seed --days 3").code, 0);
  const std::string batch = json::parse(qnp_cli(s + "compile --algo bell --computer manila_like -n 4").out).at("id");
  const auto out = dir / "results.json";
  const Output run = qnp_cli(s + "run --batch " + batch + " --circuits trans_1 --noiseless --shots 2000 --output '" + out.string() + "'");
  ASSERT_EQ(run.code, 0);
  std::ifstream in(out);
  const json results = json::parse(in);
  ASSERT_EQ(results.size(), 1u);
  EXPECT_GT(results[0].at("fidelity").get<double>(), 0.99);
}

TEST(Cli, ExitCodes) {
  testing::TempDir dir;
  const std::string s = store_flag(dir) + " ";
  EXPECT_EQ(qnp_cli("").code, 2);
  EXPECT_EQ(qnp_cli("frobnicate").code, 2);
  EXPECT_EQ(qnp_cli(s + "--format xml computers").code, 2);
  ASSERT_EQ(qnp_cli(s + "seed --days 2").code, 0);
  EXPECT_EQ(qnp_cli(s + "compile --algo nope --computer manila_like").code, 2);
  EXPECT_EQ(qnp_cli(s + "compile --algo bell --computer manila_like --axis bogus").code, 2);
  EXPECT_EQ(qnp_cli(s + "compile --algo bell --computer manila_like -n 0").code, 2);
  EXPECT_EQ(qnp_cli(s + "compile --algo bell --computer ghost").code, 1);
  EXPECT_EQ(qnp_cli(s + "compile --algo bv --qubits 7 --computer manila_like").code, 1);
  EXPECT_EQ(qnp_cli(s + "calibration --computer manila_like --range 3 --interval 5").code, 2);
  EXPECT_EQ(qnp_cli(s + "run --batch batch_none --circuits trans_0").code, 1);
  EXPECT_EQ(qnp_cli("--store /proc/qnp-nope seed").code, 2);
  EXPECT_EQ(qnp_cli("--help").code, 0);
}

pid_t spawn_serve(const testing::TempDir& dir, int port) {
  const pid_t pid = ::fork();
  if (pid == 0) {
    const std::string store = (dir / "store").string();
    const std::string p = std::to_string(port);
    ::execl(QNP_CLI_PATH, QNP_CLI_PATH, "--store", store.c_str(), "serve", "--host", "127.0.0.1",
            "--port", p.c_str(), "--workers", "1", static_cast<char*>(nullptr));
    ::_exit(127);
  }
  return pid;
}

int wait_exit(pid_t pid) {
  int status = 0;
  for (int i = 0; i < 1000; ++i) {
    if (::waitpid(pid, &status, WNOHANG) == pid) return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::this_thread::sleep_for(10ms);
  }
  ::kill(pid, SIGKILL);
  ::waitpid(pid, &status, 0);
  return -2;
}

int free_port() {
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  socklen_t len = sizeof addr;
  int port = -1;
  if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) == 0 &&
      ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len) == 0) {
    port = ntohs(addr.sin_port);
  }
  ::close(fd);
  return port;
}

TEST(Cli, ServeStopsCleanlyOnSigint) {
  testing::TempDir dir;
  ASSERT_EQ(qnp_cli(store_flag(dir) + " seed --days 2").code, 0);
  const int port = free_port();
  const pid_t pid = spawn_serve(dir, port);
  httplib::Client client("127.0.0.1", port);
  client.set_read_timeout(5, 0);
  bool up = false;
  for (int i = 0; i < 500 && !up; ++i) {
    auto r = client.Get("/api/computers");
    up = r && r->status == 200;
    if (!up) std::this_thread::sleep_for(10ms);
  }
  ASSERT_TRUE(up);
  ::kill(pid, SIGINT);
  EXPECT_EQ(wait_exit(pid), 0);
}

TEST(Cli, ServeOnOccupiedPortFails) {
  testing::TempDir dir;
  httplib::Server holder;
  const int port = holder.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  EXPECT_EQ(wait_exit(spawn_serve(dir, port)), 2);
}

}  // namespace
}  // namespace qnp
