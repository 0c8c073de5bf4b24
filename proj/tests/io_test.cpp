// Copyright 2026 The blotto-fp Authors.
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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>

#include "blotto/io.hpp"
#include "blotto/payoff.hpp"

namespace blotto {
namespace {

namespace fs = std::filesystem;

const std::string kDataDir = BLOTTO_DATA_DIR;
const std::string kCli = BLOTTO_CLI_PATH;

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("blotto_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
  }

  fs::path dir_;
};

GameError load_error(const std::string& path) {
  try {
    load_config(path);
  } catch (const GameError& e) {
    return e;
  }
  ADD_FAILURE() << "expected GameError";
  return GameError(GameErrc::kParse, "", "none");
}

TEST(LoadConfig, BundledBlotto3) {
  const Game g = load_config(kDataDir + "/blotto3.json");
  const GameConfig want = blotto3_config();
  EXPECT_EQ(g.to_config().battlefield_values, want.battlefield_values);
  EXPECT_EQ(g.to_config().outcomes, want.outcomes);
  EXPECT_EQ(g.budget1(), 10.0);
  EXPECT_EQ(g.budget2(), 7.0);
  EXPECT_EQ(g.delta(), 1e-4);
  double total = 0.0;
  for (double p : g.outcome_probs()) {
    EXPECT_EQ(p, 1.0 / 3.0);
    total += p;
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST_F(TempDir, MissingFieldIsNamed) {
  write("g.json", R"({"battlefield_values":[1],"outcomes":[[0]],"outcome_probs":[1],
                     "budget_p1":1,"budget_p2":1})");
  const GameError e = load_error(path("g.json"));
  EXPECT_EQ(e.code(), GameErrc::kMissingField);
  EXPECT_EQ(e.field(), "delta");
}

TEST_F(TempDir, BadPermutationAndParseErrors) {
  write("perm.json", R"({"battlefield_values":[1,1,1],"outcomes":[[0,0,1]],"outcome_probs":[1],
                        "budget_p1":1,"budget_p2":1,"delta":0.1})");
  EXPECT_EQ(load_error(path("perm.json")).code(), GameErrc::kBadPermutation);

  write("bad.json", "{not json");
  EXPECT_EQ(load_error(path("bad.json")).code(), GameErrc::kParse);

  write("type.json", R"({"battlefield_values":"x","outcomes":[[0]],"outcome_probs":[1],
                        "budget_p1":1,"budget_p2":1,"delta":0.1})");
  const GameError e = load_error(path("type.json"));
  EXPECT_EQ(e.code(), GameErrc::kParse);
  EXPECT_EQ(e.field(), "battlefield_values");

  EXPECT_THROW(load_config(path("absent.json")), IoError);
}

TEST_F(TempDir, TraceWriterRoundTrip) {
  std::vector<TraceRecord> rows{{10, 0.25, 0.1, 0.2, 0.2, -0.1}, {20, 0.5, 1.0 / 3.0, 0.0, 1.0 / 3.0, -0.125}};
  {
    TraceWriter w(path("t.csv"));
    for (const auto& r : rows) w(r);
  }
  const auto back = read_trace(path("t.csv"));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].iteration, 20u);
  EXPECT_EQ(back[1].eps1, 1.0 / 3.0);
  EXPECT_EQ(back[0].v_star1, -0.1);
  std::ifstream in(path("t.csv"));
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "iteration,elapsed_seconds,eps1,eps2,eps,v1");
}

TEST_F(TempDir, StrategyDumpRoundTrip) {
  const Game g = blotto3();
  RunOptions opt;
  opt.iterations = 2;
  const EngineState s = run(g, opt);
  dump_strategies(g, s.history, path("s.json"));
  const StrategyDump d = load_strategies(path("s.json"));
  ASSERT_EQ(d.history.size(), 3u);
  EXPECT_EQ(d.history.player1, s.history.player1);
  EXPECT_EQ(d.history.player2, s.history.player2);
  const Game g2 = Game::validate(d.game);
  for (std::size_t t = 0; t < 3; ++t) {
    EXPECT_TRUE(is_valid(g2, d.history.player1[t]));
    EXPECT_TRUE(is_valid(g2, d.history.player2[t]));
  }
  EXPECT_NEAR(mixture_value_naive(g2, d.history, 2), s.v_star1, 1e-9);
}

int run_cli(const std::string& args) {
  const int status = std::system((kCli + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_F(TempDir, CliSolveWritesTraceAndStrategies) {
  const std::string cfg = kDataDir + "/blotto3.json";
  ASSERT_EQ(run_cli("solve --config " + cfg + " --iters 100 --out " + path("t.csv") +
                    " --strategies-out " + path("s.json")),
            0);
  const auto rows = read_trace(path("t.csv"));
  ASSERT_EQ(rows.size(), 10u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].iteration, 10 * (i + 1));
    EXPECT_EQ(rows[i].eps, std::max(rows[i].eps1, rows[i].eps2));
    if (i > 0) {
      EXPECT_GE(rows[i].elapsed_seconds, rows[i - 1].elapsed_seconds);
    }
  }
  const StrategyDump d = load_strategies(path("s.json"));
  EXPECT_EQ(d.history.size(), 101u);
  EXPECT_NEAR(mixture_value_naive(Game::validate(d.game), d.history, 100), rows.back().v_star1,
              1e-9);

  // Same flags, same eps columns.
  ASSERT_EQ(run_cli("solve --config " + cfg + " --iters 100 --out " + path("t2.csv")), 0);
  const auto again = read_trace(path("t2.csv"));
  ASSERT_EQ(again.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(again[i].eps1, rows[i].eps1);
    EXPECT_EQ(again[i].eps2, rows[i].eps2);
  }
}

TEST_F(TempDir, CliExitCodes) {
  const std::string cfg = kDataDir + "/blotto3.json";
  EXPECT_EQ(run_cli("solve --config " + cfg + " --iters 0 --out " + path("t.csv")), 1);
  EXPECT_EQ(run_cli("solve --config " + cfg + " --mode bogus --out " + path("t.csv")), 1);
  EXPECT_EQ(run_cli("solve --out " + path("t.csv")), 1);
  write("bad.json", R"({"battlefield_values":[1],"outcomes":[[0]],"outcome_probs":[1]})");
  EXPECT_EQ(run_cli("solve --config " + path("bad.json") + " --out " + path("t.csv")), 2);
  EXPECT_EQ(run_cli("solve --config " + path("nope.json") + " --out " + path("t.csv")), 2);
  EXPECT_EQ(run_cli("solve --config " + cfg + " --iters 3 --out " + path("missing/dir/t.csv")), 3);
  EXPECT_EQ(run_cli("solve --config " + cfg + " --iters 20 --report-every 5 --mode utility "
                    "--sample-k 3 --init random --seed 4 --out " + path("t.csv")),
            0);
  EXPECT_EQ(read_trace(path("t.csv")).size(), 4u);
}

}  // namespace
}  // namespace blotto
