// Copyright 2026 The Headway Authors
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

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(HEADWAY_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("headway_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, SampleWritesFilteredValues) {
  const auto r = run("sample --dist proposed --params a=0.936,b=0.54 -n 1000 --seed 4");
  ASSERT_EQ(r.status, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "headway_s");
  int rows = 0;
  while (std::getline(in, line)) {
    EXPECT_GE(std::stod(line), 0.5);
    ++rows;
  }
  EXPECT_EQ(rows, 1000);
  EXPECT_EQ(run("sample --dist proposed --params a=0.936,b=0.54 -n 1000 --seed 4").out, r.out);
}

TEST_F(CliTest, FitThenGof) {
  ASSERT_EQ(run("fixture --scenario highD --dist proposed -n 2000 --seed 7 --out " + path("d.csv"))
                .status,
            0);
  const auto fit = run("fit --input " + path("d.csv") +
                       " --dist proposed --seed 3 --out " +
                       path("fit.json") + " --trace " + path("trace.csv"));
  ASSERT_EQ(fit.status, 0);
  const auto j = nlohmann::json::parse(slurp(path("fit.json")));
  for (const char* key : {"family", "params", "alpha_min", "diagnostics", "data_summary", "config",
                          "warnings"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["family"], "proposed");
  EXPECT_NEAR(j["params"]["a"].get<double>(), 0.936, 0.15);
  EXPECT_EQ(slurp(path("trace.csv")).rfind("chain,iteration,is_warmup,a,b\n", 0), 0u);

  const auto gof = run("gof --input " + path("d.csv") + " --fit " + path("fit.json"));
  ASSERT_EQ(gof.status, 0);
  EXPECT_NE(gof.out.find("ks_d"), std::string::npos);
}

TEST_F(CliTest, CompareAndMatrix) {
  run("fixture --scenario exiD --dist proposed -n 1500 --seed 1 --out " + path("a.csv"));
  const auto cmp = run("compare --input " + path("a.csv") +
                       " --dists proposed,gamma --iters 1200 --warmup 600 --seed 2 --out " +
                       path("r.json"));
  ASSERT_EQ(cmp.status, 0);
  const auto j = nlohmann::json::parse(slurp(path("r.json")));
  EXPECT_EQ(j["results"].size(), 2u);

  const auto m = run("ks-matrix --scenario highD,Lyft -n 2000 --seed 5");
  ASSERT_EQ(m.status, 0);
  EXPECT_EQ(std::count(m.out.begin(), m.out.end(), '\n'), 3);
}

TEST_F(CliTest, PlotFormats) {
  run("fixture --scenario highD --dist proposed -n 1000 --seed 1 --out " + path("a.csv"));
  ASSERT_EQ(run("plot --input " + path("a.csv") + " --out " + path("p.svg")).status, 0);
  EXPECT_EQ(slurp(path("p.svg")).rfind("<svg", 0), 0u);
  ASSERT_EQ(run("plot --input " + path("a.csv") + " --out " + path("p.csv")).status, 0);
  EXPECT_EQ(slurp(path("p.csv")).rfind("midpoint,observed", 0), 0u);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run("").status, 1);
  EXPECT_EQ(run("fit --bogus").status, 1);
  EXPECT_EQ(run("fit --input x.csv --dist nonsense --seed 1").status, 1);
  EXPECT_EQ(run("fit --input " + path("missing.csv") + " --dist proposed --seed 1").status, 2);
  std::ofstream(path("bad.csv")) << "headway_s\nfoo\n";
  EXPECT_EQ(run("fit --input " + path("bad.csv") + " --dist proposed --seed 1").status, 2);
}

}  // namespace
