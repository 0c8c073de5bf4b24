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

// blotto_fp solve --config data/blotto3.json --iters 5000 --out trace.csv
//
// Exit codes: 0 success, 1 usage, 2 config, 3 runtime.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "blotto/blotto.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct SolveFlags {
  std::string config;
  std::size_t iters = 5000;
  std::size_t report_every = 10;
  std::string out;
  std::string strategies_out;
  blotto::ResponseMode mode = blotto::ResponseMode::kWins;
  std::optional<std::size_t> sample_k;
  std::uint64_t seed = 0;
  blotto::InitMode init = blotto::InitMode::kUniform;
  blotto::LeftoverPolicy leftover = blotto::LeftoverPolicy::kRotate;
  bool parallel = false;
};

int solve(const SolveFlags& flags) {
  std::optional<blotto::Game> loaded;
  try {
    loaded = blotto::load_config(flags.config);
  } catch (const blotto::GameError& e) {
    std::cerr << "config error";
    if (!e.field().empty()) std::cerr << " (" << e.field() << ")";
    std::cerr << ": " << e.what() << "\n";
    return kExitConfig;
  } catch (const blotto::IoError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  const blotto::Game& game = *loaded;

  blotto::RunOptions options;
  options.iterations = flags.iters;
  options.report_every = flags.report_every;
  options.init = flags.init;
  options.seed = flags.seed;
  options.sample_k = flags.sample_k;
  options.mode = flags.mode;
  options.leftover = flags.leftover;
  options.parallel = flags.parallel;

  blotto::TraceWriter writer(flags.out);
  const auto start = std::chrono::steady_clock::now();
  const blotto::EngineState state =
      blotto::run(game, options, [&writer](const blotto::TraceRecord& r) { writer(r); });
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

  if (!flags.strategies_out.empty()) {
    blotto::dump_strategies(game, state.history, flags.strategies_out);
  }
  std::printf("iterations %zu\n", state.t);
  std::printf("eps        %.6f  (player 1 %.6f, player 2 %.6f)\n", state.eps, state.eps1,
              state.eps2);
  std::printf("v1         %.6f\n", state.v_star1);
  std::printf("elapsed    %.2f s\n", elapsed.count());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Redundant fictitious play for continuous Blotto"};
  app.require_subcommand(1);

  SolveFlags flags;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Run fictitious play and write a trace");
  solve_cmd->add_option("--config", flags.config, "Game config (JSON)")
      ->required();
  solve_cmd->add_option("--iters", flags.iters, "Number of iterations")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--report-every", flags.report_every, "Trace cadence in iterations")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--out", flags.out, "Trace CSV path")->required();
  solve_cmd->add_option("--strategies-out", flags.strategies_out,
                        "Write every stored strategy to this JSON file");
  const std::map<std::string, blotto::ResponseMode> modes{
      {"wins", blotto::ResponseMode::kWins}, {"utility", blotto::ResponseMode::kUtility}};
  solve_cmd->add_option("--mode", flags.mode, "Best-response objective: wins | utility")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  solve_cmd->add_option("--sample-k", flags.sample_k,
                        "Respond to K sampled opponent strategies per iteration")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--seed", flags.seed, "Seed for random init and sampling");
  const std::map<std::string, blotto::InitMode> inits{
      {"uniform", blotto::InitMode::kUniform}, {"random", blotto::InitMode::kSeededRandom}};
  solve_cmd->add_option("--init", flags.init, "Initial strategies: uniform | random")
      ->transform(CLI::CheckedTransformer(inits, CLI::ignore_case));
  const std::map<std::string, blotto::LeftoverPolicy> leftovers{
      {"rotate", blotto::LeftoverPolicy::kRotate}, {"first", blotto::LeftoverPolicy::kFirstSlot}};
  solve_cmd->add_option("--leftover", flags.leftover,
                        "Where unused budget goes: rotate | first")
      ->transform(CLI::CheckedTransformer(leftovers, CLI::ignore_case));
  solve_cmd->add_flag("--parallel", flags.parallel,
                      "Solve the per-player problems concurrently");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    return solve(flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
